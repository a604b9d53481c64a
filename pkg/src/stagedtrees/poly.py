"""Sparse polynomials over named indeterminates, geared to square-free monomials.

Everything downstream leans on the canonical order fixed here: indeterminates
compare byte-wise by name, monomials by (degree, factor names), and the
printer emits terms in that order with factors sorted inside each term.  The
text grammar is tiny: terms separated by ``+``, a term is an optional positive
integer coefficient followed by ``*``-separated identifiers, and the literal
``1`` is the empty product.  The strict parser refuses repeated factors; the
general entry point additionally understands ``x^2``.
"""

from __future__ import annotations

import re
import threading
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Indeterminate",
    "Monomial",
    "Polynomial",
    "ParseError",
    "NonSquareFreeTermError",
    "NonSquareFreeResultError",
    "parse_polynomial",
    "parse_polynomial_general",
    "multiply_label",
]

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Coefficient = Union[int, float]


class ParseError(ValueError):
    """Raised on malformed polynomial or nested-expression text."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.text = text
        self.pos = pos


class NonSquareFreeTermError(ValueError):
    """An indeterminate is repeated inside one term where that is not allowed."""


class NonSquareFreeResultError(ValueError):
    """Strict label multiplication would square an indeterminate."""


class Indeterminate:
    """An interned symbol; equality and ordering are byte-wise on the name.

    Instances are shared through a session-wide table, so construction with
    the same name always returns the same object and hashing is cheap.  The
    table is guarded by a lock and safe for concurrent interning.
    """

    __slots__ = ("name", "_hash")

    _table: dict[str, "Indeterminate"] = {}
    _table_lock = threading.Lock()

    def __new__(cls, name: Union[str, "Indeterminate"]) -> "Indeterminate":
        if isinstance(name, Indeterminate):
            return name
        found = cls._table.get(name)
        if found is not None:
            return found
        if not isinstance(name, str) or not _IDENT_RE.match(name):
            raise ValueError(
                f"invalid indeterminate name {name!r}: expected a letter "
                "followed by letters, digits or underscores"
            )
        with cls._table_lock:
            found = cls._table.get(name)
            if found is None:
                found = super().__new__(cls)
                found.name = name
                found._hash = hash(name)
                cls._table[name] = found
        return found

    def __repr__(self) -> str:
        return self.name

    def __str__(self) -> str:
        return self.name

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Indeterminate) and self.name == other.name

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Indeterminate") -> bool:
        return self.name < other.name

    def __le__(self, other: "Indeterminate") -> bool:
        return self.name <= other.name

    def __gt__(self, other: "Indeterminate") -> bool:
        return self.name > other.name

    def __ge__(self, other: "Indeterminate") -> bool:
        return self.name >= other.name


VarLike = Union[str, Indeterminate]


class Monomial:
    """A power-product, stored as name-sorted (indeterminate, exponent) pairs.

    The degree-zero monomial is ``Monomial.ONE``.  Ordering is graded
    lexicographic: first by total degree, then by the sorted factor names
    (with multiplicity).  Divisibility, gcd and single-variable division are
    exponent-wise.
    """

    __slots__ = ("_powers", "degree", "_hash")

    ONE: "Monomial"

    def __init__(self, powers: Iterable[tuple[VarLike, int]] = ()):
        merged: dict[Indeterminate, int] = {}
        for var, exp in powers:
            if exp < 1:
                raise ValueError(f"exponent must be positive, got {exp}")
            v = Indeterminate(var)
            merged[v] = merged.get(v, 0) + exp
        self._powers = tuple(sorted(merged.items()))
        self.degree = sum(merged.values())
        self._hash = hash(self._powers)

    @classmethod
    def of(cls, *factors: VarLike) -> "Monomial":
        """Square-free monomial from distinct factors; repeats are an error."""
        seen: set[Indeterminate] = set()
        for f in factors:
            v = Indeterminate(f)
            if v in seen:
                raise NonSquareFreeTermError(f"repeated indeterminate {v.name!r}")
            seen.add(v)
        return cls((Indeterminate(f), 1) for f in factors)

    @property
    def powers(self) -> tuple[tuple[Indeterminate, int], ...]:
        return self._powers

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self._powers)

    def variables(self) -> tuple[Indeterminate, ...]:
        return tuple(v for v, _ in self._powers)

    def exponent(self, var: VarLike) -> int:
        v = Indeterminate(var)
        for w, e in self._powers:
            if w is v or w == v:
                return e
        return 0

    def __contains__(self, var: VarLike) -> bool:
        return self.exponent(var) > 0

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(v) >= e for v, e in self._powers)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(
            (v, min(e, other.exponent(v)))
            for v, e in self._powers
            if other.exponent(v) > 0
        )

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self._powers + other._powers)

    def times(self, var: VarLike) -> "Monomial":
        return Monomial(self._powers + ((Indeterminate(var), 1),))

    def divide(self, var: VarLike) -> "Monomial":
        """Remove one power of ``var``; errors when ``var`` does not divide."""
        v = Indeterminate(var)
        if v not in self:
            raise ValueError(f"{v.name} does not divide {self}")
        return Monomial(
            (w, e - 1 if w == v else e) for w, e in self._powers if not (w == v and e == 1)
        )

    def sort_key(self) -> tuple[int, tuple[str, ...]]:
        names: list[str] = []
        for v, e in self._powers:
            names.extend([v.name] * e)
        return (self.degree, tuple(names))

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __le__(self, other: "Monomial") -> bool:
        return self.sort_key() <= other.sort_key()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._powers == other._powers

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._powers:
            return "1"
        return "*".join(
            v.name if e == 1 else f"{v.name}^{e}" for v, e in self._powers
        )

    def __repr__(self) -> str:
        return str(self)


Monomial.ONE = Monomial()


class Polynomial:
    """Finite map from monomials to non-zero coefficients.

    Interpolating polynomials carry positive integer coefficients; network
    polynomials may carry arbitrary reals, so any non-zero number is accepted
    and zeros are dropped on construction.  Values are immutable and safe to
    share between threads.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(
        self,
        terms: Union[Mapping[Monomial, Coefficient], Iterable[tuple[Monomial, Coefficient]]] = (),
    ):
        acc: dict[Monomial, Coefficient] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            if not isinstance(mono, Monomial):
                raise TypeError(f"expected Monomial, got {type(mono).__name__}")
            acc[mono] = acc.get(mono, 0) + coeff
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = hash(frozenset(self._terms.items()))

    @classmethod
    def from_support(cls, monomials: Iterable[Monomial]) -> "Polynomial":
        """The sum of the given monomials, all coefficients one."""
        return cls((m, 1) for m in monomials)

    def items(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(mono, 0)

    def support(self) -> frozenset[Monomial]:
        return frozenset(self._terms)

    def variables(self) -> frozenset[Indeterminate]:
        out: set[Indeterminate] = set()
        for m in self._terms:
            out.update(m.variables())
        return frozenset(out)

    def degree(self) -> int:
        """Maximal monomial degree; the zero polynomial reports 0."""
        return max((m.degree for m in self._terms), default=0)

    def all_coefficients_one(self) -> bool:
        return all(c == 1 for c in self._terms.values())

    def is_squarefree(self) -> bool:
        return all(m.is_squarefree for m in self._terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Polynomial(acc)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, mono: Monomial) -> bool:
        return mono in self._terms

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms):
            c = self._terms[m]
            if m.degree == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(str(m))
            else:
                parts.append(f"{c}*{m}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def multiply_label(var: VarLike, f: Polynomial, *, strict: bool = True) -> Polynomial:
    """Distribute one indeterminate over every term of ``f``.

    In strict mode the factor must not already divide any monomial of ``f``
    (the square-free setting); otherwise a :class:`NonSquareFreeResultError`
    is raised.  The general mode raises the exponent instead.  Either way the
    result has exactly as many terms as ``f`` and every monomial degree grows
    by one.
    """
    v = Indeterminate(var)
    out: dict[Monomial, Coefficient] = {}
    for m, c in f.items():
        if strict and v in m:
            raise NonSquareFreeResultError(
                f"{v.name} already divides {m}; the product is not square-free"
            )
        out[m.times(v)] = c
    return Polynomial(out)


# --- parsing ---------------------------------------------------------------

_WS = " \t\r\n"


def _scan_number(text: str, pos: int) -> tuple[int, int]:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    return int(text[pos:end]), end


def _scan_ident(text: str, pos: int) -> tuple[str, int]:
    end = pos + 1
    while end < len(text) and (text[end].isalnum() or text[end] == "_"):
        end += 1
    return text[pos:end], end


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in _WS:
        pos += 1
    return pos


def _parse_term(text: str, pos: int, *, general: bool) -> tuple[Monomial, int, int]:
    coeff = 1
    powers: list[tuple[Indeterminate, int]] = []
    seen: set[Indeterminate] = set()
    first = True
    while True:
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise ParseError("unexpected end of input, expected a factor", text, pos)
        ch = text[pos]
        if ch.isdigit():
            value, pos = _scan_number(text, pos)
            if first:
                if value < 1:
                    raise ParseError("coefficient must be a positive integer", text, pos)
                coeff = value
            elif value != 1:
                raise ParseError("a coefficient may only lead a term", text, pos)
        elif ch.isalpha():
            name, pos = _scan_ident(text, pos)
            var = Indeterminate(name)
            exp = 1
            nxt = _skip_ws(text, pos)
            if nxt < len(text) and text[nxt] == "^":
                epos = _skip_ws(text, nxt + 1)
                if epos >= len(text) or not text[epos].isdigit():
                    raise ParseError("expected an integer exponent after '^'", text, epos)
                exp, pos = _scan_number(text, epos)
                if exp < 1:
                    raise ParseError("exponent must be positive", text, epos)
            if not general:
                if exp > 1:
                    raise NonSquareFreeTermError(
                        f"{name}^{exp} is not square-free; use the general parser"
                    )
                if var in seen:
                    raise NonSquareFreeTermError(
                        f"indeterminate {name!r} repeated within one term"
                    )
            seen.add(var)
            powers.append((var, exp))
        else:
            raise ParseError(f"unexpected character {ch!r}", text, pos)
        first = False
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == "*":
            pos += 1
            continue
        break
    return Monomial(powers), coeff, pos


def _parse(text: str, *, general: bool) -> Polynomial:
    pos = _skip_ws(text, 0)
    if pos >= len(text):
        raise ParseError("empty polynomial", text, pos)
    acc: dict[Monomial, Coefficient] = {}
    while True:
        mono, coeff, pos = _parse_term(text, pos, general=general)
        acc[mono] = acc.get(mono, 0) + coeff
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            break
        if text[pos] != "+":
            raise ParseError(f"expected '+' or end of input, got {text[pos]!r}", text, pos)
        pos += 1
    return Polynomial(acc)


def parse_polynomial(text: str) -> Polynomial:
    """Parse in strict square-free mode (repeated factors are rejected)."""
    return _parse(text, general=False)


def parse_polynomial_general(text: str) -> Polynomial:
    """Parse allowing exponents (``x^2``) and repeated factors (``x*x``)."""
    return _parse(text, general=True)

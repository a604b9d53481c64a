"""Square-free monomial ideals and their minimal prime decomposition.

A minimal prime of a monomial ideal is generated by a set of indeterminates,
and for square-free generators these sets are exactly the minimal transversals
(minimal hitting sets) of the hypergraph whose edges are the generators'
variable supports.  Non-square-free generators are accepted by reading only
their variable support, since minimal primes depend only on radicals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple, Union

from .poly import Indeterminate, Monomial

__all__ = [
    "EmptyBasisError",
    "UnitIdealError",
    "IdealBasis",
    "PrimeComponent",
    "interreduce",
    "minimal_primes",
    "minimal_primes_exhaustive",
]

PrimeComponent = FrozenSet[Indeterminate]


class EmptyBasisError(ValueError):
    """The zero ideal has no minimal primes."""


class UnitIdealError(ValueError):
    """The unit ideal (1 among the generators) is excluded here."""


@dataclass(frozen=True)
class IdealBasis:
    """An interreduced generating set: no generator divides another."""

    generators: frozenset[Monomial]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)


def interreduce(gens: Iterable[Monomial]) -> IdealBasis:
    """Drop every generator that is a proper multiple of another.

    Idempotent; a set containing the monomial 1 collapses to exactly {1}.
    """
    pool = set(gens)
    kept = frozenset(
        g for g in pool if not any(h != g and h.divides(g) for h in pool)
    )
    return IdealBasis(kept)


def _component_key(component: PrimeComponent) -> tuple[int, tuple[str, ...]]:
    return (len(component), tuple(sorted(v.name for v in component)))


def _antichain(sets: Iterable[frozenset]) -> list[frozenset]:
    """Keep only inclusion-minimal sets."""
    kept: list[frozenset] = []
    for s in sorted(set(sets), key=lambda t: (len(t), tuple(sorted(v.name for v in t)))):
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def _edges(basis: Union[IdealBasis, Iterable[Monomial]]) -> list[frozenset[Indeterminate]]:
    if not isinstance(basis, IdealBasis):
        basis = interreduce(basis)
    gens = basis.generators
    if not gens:
        raise EmptyBasisError("the zero ideal has no minimal primes")
    if any(g.degree == 0 for g in gens):
        raise UnitIdealError("the unit ideal has no minimal primes")
    return sorted(
        {frozenset(g.variables()) for g in gens},
        key=lambda e: (len(e), tuple(sorted(v.name for v in e))),
    )


def minimal_primes(basis: Union[IdealBasis, Iterable[Monomial]]) -> Tuple[PrimeComponent, ...]:
    """All minimal primes, as variable sets, sorted by (size, names).

    Incremental transversal construction: the minimal transversals are
    maintained while hyperedges are added one at a time, re-minimizing after
    each step.  Edges are processed in ascending size order.  The result is a
    complete antichain of minimal covers.
    """
    edges = _edges(basis)
    transversals: list[frozenset[Indeterminate]] = [frozenset()]
    for edge in edges:
        extended: list[frozenset[Indeterminate]] = []
        for t in transversals:
            if t & edge:
                extended.append(t)
            else:
                extended.extend(t | {v} for v in edge)
        transversals = _antichain(extended)
    return tuple(sorted(transversals, key=_component_key))


def minimal_primes_exhaustive(
    basis: Union[IdealBasis, Iterable[Monomial]],
    *,
    max_variables: int = 20,
) -> Tuple[PrimeComponent, ...]:
    """Reference backend: test all variable subsets for minimal covering.

    Exponential in the number of variables; used as an independent check of
    :func:`minimal_primes` (the two must agree).
    """
    edges = _edges(basis)
    variables = sorted({v for e in edges for v in e})
    d = len(variables)
    if d > max_variables:
        raise ValueError(f"{d} variables exceed the exhaustive limit of {max_variables}")
    index = {v: i for i, v in enumerate(variables)}
    edge_masks = [sum(1 << index[v] for v in e) for e in edges]

    def covers(mask: int) -> bool:
        return all(mask & em for em in edge_masks)

    found = []
    for mask in range(1, 1 << d):
        if not covers(mask):
            continue
        bits = [b for b in range(d) if mask >> b & 1]
        if all(not covers(mask ^ (1 << b)) for b in bits):
            found.append(frozenset(variables[b] for b in bits))
    return tuple(sorted(found, key=_component_key))

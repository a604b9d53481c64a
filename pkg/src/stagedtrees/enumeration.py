"""Enumerate every staged tree whose interpolating polynomial is a given sum.

Input is a set of square-free monomials with (implicitly) unit coefficients.
The search for root-floret label sets is restricted to the minimal primes of
the ideal generated by the support: the root floret of any staged tree with
this polynomial is such a minimal prime, so nothing is lost.  For each
candidate the support must split into one block per label (every monomial
divisible by exactly one candidate label); the blocks, divided by their
label, are enumerated recursively, and the per-branch results are combined.
Stage compatibility across branches is checked incrementally while combining,
so an incompatible pair of florets prunes a partial combination immediately.

Recursion is memoized on the support set, which collapses the heavy sharing
between branches (independence-model inputs repeat the same sub-support many
times over).  Results are deduplicated by canonical form and reported in
canonical order.

:func:`labeled_event_trees` is the exhaustive companion used for debugging:
it enumerates *all* labeled event trees with the given polynomial, staged or
not, by trying every covering label set and every admissible assignment of
monomials to root edges.  Exponential, but exact.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Union

from .ideal import interreduce, minimal_primes
from .poly import Indeterminate, Monomial, Polynomial
from .tree import LEAF, EventTree, Node

__all__ = [
    "NonSquareFreeInputError",
    "CoefficientNotOneError",
    "EquivalenceClass",
    "support_set",
    "staged_trees",
    "labeled_event_trees",
    "nested_representations",
]


class NonSquareFreeInputError(ValueError):
    """Enumeration handles square-free supports only."""


class CoefficientNotOneError(ValueError):
    """A polynomial with a coefficient other than one has no staged tree here."""


SupportLike = Union[Polynomial, Iterable[Monomial]]

_SUPPORT_ONE = frozenset({Monomial.ONE})


def support_set(source: SupportLike) -> frozenset[Monomial]:
    """Validate and normalize input into a square-free support set."""
    if isinstance(source, Polynomial):
        monomials = source.support()
        bad_coeff = next(
            (m for m, c in sorted(source.items(), key=lambda it: it[0]) if c != 1),
            None,
        )
    else:
        monomials = frozenset(source)
        bad_coeff = None
        for m in monomials:
            if not isinstance(m, Monomial):
                raise TypeError(f"expected Monomial, got {type(m).__name__}")
    for m in sorted(monomials):
        if not m.is_squarefree:
            raise NonSquareFreeInputError(f"monomial {m} is not square-free")
    if bad_coeff is not None:
        raise CoefficientNotOneError(
            f"coefficient of {bad_coeff} is not one; no staged tree exists"
        )
    return monomials


@dataclass(frozen=True)
class EquivalenceClass:
    """All trees sharing one interpolating polynomial, in canonical order."""

    support: frozenset[Monomial]
    trees: tuple[EventTree, ...]

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[EventTree]:
        return iter(self.trees)

    def __contains__(self, tree: EventTree) -> bool:
        return any(t == tree for t in self.trees)

    def nestings(self) -> tuple[str, ...]:
        return tuple(t.canonical_form() for t in self.trees)


# --- shared machinery --------------------------------------------------------


def _split(
    support: frozenset[Monomial], labels: Iterable[Indeterminate]
) -> Optional[dict[Indeterminate, list[Monomial]]]:
    """Assign each monomial to its unique divisor among ``labels``.

    Returns None unless the blocks partition the support, i.e. every monomial
    has exactly one divisor among the candidate labels.
    """
    labels = list(labels)
    parts: dict[Indeterminate, list[Monomial]] = {x: [] for x in labels}
    for t in sorted(support):
        owner = None
        for x in labels:
            if x in t:
                if owner is not None:
                    return None
                owner = x
        if owner is None:
            return None
        parts[owner].append(t)
    return parts


def _compatible(
    owner: dict[Indeterminate, frozenset],
    label_sets: frozenset[frozenset[Indeterminate]],
) -> Optional[dict[Indeterminate, frozenset]]:
    """Merge floret label sets into the running stage assignment.

    A family of florets is stage-compatible exactly when each variable
    belongs to a single distinct label set, so the assignment maps every
    variable to its owning set.  Returns the extended assignment, or None on
    an overlapping-but-unequal pair.  Copy-on-write keeps backtracking cheap.
    """
    out = owner
    copied = False
    for s in label_sets:
        for v in s:
            cur = out.get(v)
            if cur is None:
                if not copied:
                    out = dict(out)
                    copied = True
                out[v] = s
            elif cur != s:
                return None
    return out


def _assemble(
    root_labels: frozenset[Indeterminate],
    branches: list[tuple[Indeterminate, tuple[Node, ...]]],
    *,
    staged_only: bool,
) -> list[Node]:
    """All root florets over every combination of branch subtrees.

    With ``staged_only`` the combination is pruned as soon as a subtree's
    floret label set conflicts with the root floret or an earlier branch; the
    check is monotone, so a rejected prefix can never become valid again.
    """
    out: list[Node] = []
    seed = {v: root_labels for v in root_labels}
    chosen: list[Node] = []

    def extend(i: int, owner: dict[Indeterminate, frozenset]) -> None:
        if i == len(branches):
            out.append(
                Node(tuple((branches[j][0], chosen[j]) for j in range(len(branches))))
            )
            return
        for sub in branches[i][1]:
            if staged_only:
                merged = _compatible(owner, sub.floret_sets)
                if merged is None:
                    continue
            else:
                merged = owner
            chosen.append(sub)
            extend(i + 1, merged)
            chosen.pop()

    extend(0, seed)
    return out


def _dedup(nodes: Iterable[Node]) -> tuple[Node, ...]:
    seen: set[str] = set()
    out: list[Node] = []
    for n in nodes:
        c = n.canon()
        if c not in seen:
            seen.add(c)
            out.append(n)
    return tuple(out)


class _LockedMemo:
    """Insert-or-get table safe for concurrent branches (recompute is benign)."""

    def __init__(self) -> None:
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            return self._data.get(key)

    def __setitem__(self, key, value) -> None:
        with self._lock:
            self._data.setdefault(key, value)


# --- staged enumeration -------------------------------------------------------


def _staged(support: frozenset[Monomial], memo) -> tuple[Node, ...]:
    found = memo.get(support)
    if found is not None:
        return found
    result = _dedup(_staged_branches(support, memo))
    memo[support] = result
    return result


def _candidate_root_sets(support: frozenset[Monomial]) -> list[frozenset[Indeterminate]]:
    # Singleton covers are excluded: a root floret needs at least two edges.
    return [f for f in minimal_primes(interreduce(support)) if len(f) >= 2]


def _staged_branches(support: frozenset[Monomial], memo) -> list[Node]:
    if not support:
        return []
    if support == _SUPPORT_ONE:
        return [LEAF]
    if Monomial.ONE in support:
        # The empty atom coexisting with other atoms fits no event tree.
        return []
    if len(support) == 1:
        return []
    if all(m.degree == 1 for m in support):
        edges = tuple((m.variables()[0], LEAF) for m in sorted(support))
        return [Node(edges)]
    found: list[Node] = []
    for candidate in _candidate_root_sets(support):
        parts = _split(support, candidate)
        if parts is None:
            continue
        branches: Optional[list[tuple[Indeterminate, tuple[Node, ...]]]] = []
        for x in sorted(candidate):
            # A block holding a single atom other than the bare label dies in
            # the recursion (its quotient is one non-unit monomial).
            quotient = frozenset(t.divide(x) for t in parts[x])
            subtrees = _staged(quotient, memo)
            if not subtrees:
                branches = None
                break
            branches.append((x, subtrees))
        if branches is None:
            continue
        found.extend(_assemble(frozenset(candidate), branches, staged_only=True))
    return found


def staged_trees(source: SupportLike, *, jobs: int = 1) -> EquivalenceClass:
    """The complete polynomial equivalence class of staged trees.

    ``jobs`` > 1 explores the candidate root sets concurrently; the output is
    identical and deterministic regardless of scheduling.  An empty class is
    a legitimate answer, not an error.
    """
    support = support_set(source)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1:
        nodes = _staged(support, {})
    else:
        nodes = _staged_parallel(support, jobs)
    trees = tuple(
        sorted((EventTree(n) for n in nodes), key=EventTree.canonical_form)
    )
    return EquivalenceClass(support=support, trees=trees)


def _staged_parallel(support: frozenset[Monomial], jobs: int) -> tuple[Node, ...]:
    if (
        not support
        or support == _SUPPORT_ONE
        or Monomial.ONE in support
        or len(support) == 1
        or all(m.degree == 1 for m in support)
    ):
        return _staged(support, {})
    memo = _LockedMemo()

    def branch(candidate: frozenset[Indeterminate]) -> list[Node]:
        parts = _split(support, candidate)
        if parts is None:
            return []
        branches: list[tuple[Indeterminate, tuple[Node, ...]]] = []
        for x in sorted(candidate):
            subtrees = _staged(frozenset(t.divide(x) for t in parts[x]), memo)
            if not subtrees:
                return []
            branches.append((x, subtrees))
        return _assemble(frozenset(candidate), branches, staged_only=True)

    candidates = _candidate_root_sets(support)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        per_candidate = list(pool.map(branch, candidates))
    found: list[Node] = []
    for nodes in per_candidate:
        found.extend(nodes)
    return _dedup(found)


# --- exhaustive labeled-event-tree enumeration ---------------------------------


def _event(support: frozenset[Monomial], memo) -> tuple[Node, ...]:
    found = memo.get(support)
    if found is not None:
        return found
    result = _dedup(_event_branches(support, memo))
    memo[support] = result
    return result


def _event_branches(support: frozenset[Monomial], memo) -> list[Node]:
    if not support:
        return []
    if support == _SUPPORT_ONE:
        return [LEAF]
    if Monomial.ONE in support:
        return []
    if len(support) == 1:
        return []
    if all(m.degree == 1 for m in support):
        edges = tuple((m.variables()[0], LEAF) for m in sorted(support))
        return [Node(edges)]
    variables = sorted({v for m in support for v in m.variables()})
    terms = sorted(support)
    found: list[Node] = []
    for size in range(2, len(variables) + 1):
        for candidate in combinations(variables, size):
            # Divisors of each monomial among the candidate labels; a label
            # set that misses some monomial cannot be a root floret.
            choice_lists = [[x for x in candidate if x in t] for t in terms]
            if any(not choices for choices in choice_lists):
                continue
            for assignment in product(*choice_lists):
                parts: dict[Indeterminate, list[Monomial]] = {x: [] for x in candidate}
                for t, x in zip(terms, assignment):
                    parts[x].append(t)
                # Every root edge must carry at least one atom; trees whose
                # effective root floret is smaller appear under that subset.
                if any(not block for block in parts.values()):
                    continue
                branches: Optional[list[tuple[Indeterminate, tuple[Node, ...]]]] = []
                for x in candidate:
                    subtrees = _event(
                        frozenset(t.divide(x) for t in parts[x]), memo
                    )
                    if not subtrees:
                        branches = None
                        break
                    branches.append((x, subtrees))
                if branches is None:
                    continue
                found.extend(
                    _assemble(frozenset(candidate), branches, staged_only=False)
                )
    return found


def labeled_event_trees(source: SupportLike) -> EquivalenceClass:
    """Every labeled event tree (staged or not) with the given polynomial.

    Exhaustive over covering label sets and monomial-to-edge assignments;
    intended for small inputs and debugging.  Its staged members coincide
    with :func:`staged_trees`.
    """
    support = support_set(source)
    nodes = _event(support, {})
    trees = tuple(
        sorted((EventTree(n) for n in nodes), key=EventTree.canonical_form)
    )
    return EquivalenceClass(support=support, trees=trees)


def nested_representations(source: SupportLike) -> tuple[str, ...]:
    """Canonical nested expressions of the staged equivalence class."""
    return staged_trees(source).nestings()

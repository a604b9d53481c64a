"""Self-contained reference implementations used to cross-check the package.

Nothing here imports the package's algorithms: monomials are plain frozensets
of variable names, trees are nested tuples, and searches are exhaustive.  The
only shared convention is the textual rendering of a tree as its canonical
nested expression, which is how results are compared.
"""

from __future__ import annotations

import itertools
from typing import FrozenSet, Iterable

Mono = FrozenSet[str]  # a square-free monomial as its set of variable names
Tree = tuple  # () is a leaf; otherwise label-sorted ((label, subtree), ...) pairs


# --- minimal covers by full subset enumeration --------------------------------


def minimal_covers(edge_supports: Iterable[Mono]) -> set[frozenset[str]]:
    """All minimal hitting sets, by scanning every subset of the variables."""
    edges = [frozenset(e) for e in edge_supports]
    variables = sorted({v for e in edges for v in e})
    d = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    masks = [sum(1 << index[v] for v in e) for e in edges]

    def covers(mask: int) -> bool:
        return all(mask & m for m in masks)

    out = set()
    for mask in range(1, 1 << d):
        if covers(mask) and all(
            not covers(mask ^ (1 << b)) for b in range(d) if mask >> b & 1
        ):
            out.add(frozenset(variables[b] for b in range(d) if mask >> b & 1))
    return out


# --- staged-tree search without the minimal-prime shortcut ---------------------


def _florets(tree: Tree) -> set[frozenset[str]]:
    if not tree:
        return set()
    out = {frozenset(label for label, _ in tree)}
    for _, child in tree:
        out |= _florets(child)
    return out


def tree_is_staged(tree: Tree) -> bool:
    owner: dict[str, frozenset] = {}
    for label_set in _florets(tree):
        for v in label_set:
            if owner.setdefault(v, label_set) != label_set:
                return False
    return True


def render(tree: Tree) -> str:
    """Canonical nested expression; same textual convention as the package."""
    if not tree:
        return "1"
    return " + ".join(
        label if not child else f"{label}*({render(child)})" for label, child in tree
    )


def all_staged_trees(support: frozenset, memo: dict | None = None) -> frozenset:
    """Every staged tree with the given square-free support, trying *all*
    candidate root label sets instead of only the minimal covers.

    Mirrors the production search otherwise: a candidate is viable only when
    every monomial is divisible by exactly one of its labels, branches recurse
    on the label-divided blocks, and assembled trees that are not staged are
    dropped.
    """
    if memo is None:
        memo = {}
    found = memo.get(support)
    if found is not None:
        return found
    result = _search(support, memo)
    memo[support] = result
    return result


def _search(support: frozenset, memo: dict) -> frozenset:
    if support == frozenset({frozenset()}):
        return frozenset({()})
    if frozenset() in support or len(support) <= 1:
        return frozenset()
    if all(len(m) == 1 for m in support):
        floret = tuple(sorted((next(iter(m)), ()) for m in support))
        return frozenset({floret})
    variables = sorted({v for m in support for v in m})
    found = set()
    for size in range(2, len(variables) + 1):
        for candidate in itertools.combinations(variables, size):
            blocks: dict[str, list] = {x: [] for x in candidate}
            ok = True
            for m in support:
                divisors = [x for x in candidate if x in m]
                if len(divisors) != 1:
                    ok = False
                    break
                blocks[divisors[0]].append(m)
            if not ok:
                continue
            branch_sets = []
            for x in candidate:
                subtrees = all_staged_trees(
                    frozenset(m - {x} for m in blocks[x]), memo
                )
                if not subtrees:
                    branch_sets = None
                    break
                branch_sets.append((x, subtrees))
            if branch_sets is None:
                continue
            labels = [x for x, _ in branch_sets]
            for combo in itertools.product(*(s for _, s in branch_sets)):
                tree = tuple(sorted(zip(labels, combo)))
                if tree_is_staged(tree):
                    found.add(tree)
    return frozenset(found)

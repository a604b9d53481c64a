"""Seeded random generators of staged trees for the property suites.

Trees are grown shape-first, then stages are assigned top-down: an internal
vertex may join any existing stage of the same arity none of whose members
lies on its own root path.  Stages receive disjoint fresh label sets, so the
result is always staged and its atoms are always square-free (a stage never
repeats along one path, hence no label does).
"""

from __future__ import annotations

import random
from typing import Optional

from stagedtrees.poly import Indeterminate
from stagedtrees.tree import LEAF, EventTree, Node

Shape = tuple  # () is a leaf; otherwise a tuple of child shapes


def random_shape(
    rng: random.Random,
    max_leaves: int,
    max_children: int = 3,
    leaf_prob: float = 0.35,
) -> Shape:
    budget = rng.randint(1, max_leaves)

    def grow(budget: int, root: bool) -> Shape:
        if budget < 2 or (not root and rng.random() < leaf_prob):
            return ()
        k = rng.randint(2, min(max_children, budget))
        if k == budget:
            parts = [1] * k
        else:
            cuts = sorted(rng.sample(range(1, budget), k - 1))
            parts = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        return tuple(grow(p, False) for p in parts)

    return grow(budget, True)


def staged_tree_from_shape(
    rng: random.Random,
    shape: Shape,
    join_prob: float = 0.6,
    prefix: str = "s",
) -> EventTree:
    # BFS so that, when a vertex is processed, only its ancestors can already
    # sit in a stage; joining is allowed unless an ancestor is a member.
    stages: list[dict] = []
    labels_at: dict[tuple, list[str]] = {}
    queue: list[tuple[Shape, tuple, frozenset]] = [(shape, (), frozenset())]
    while queue:
        node, path, ancestors = queue.pop(0)
        if node:
            k = len(node)
            candidates = [
                s for s in stages if s["arity"] == k and not (s["members"] & ancestors)
            ]
            if candidates and rng.random() < join_prob:
                stage = rng.choice(candidates)
            else:
                idx = len(stages)
                stage = {
                    "arity": k,
                    "labels": [f"{prefix}{idx}_{j}" for j in range(k)],
                    "members": set(),
                }
                stages.append(stage)
            stage["members"].add(path)
            labels_at[path] = stage["labels"]
            for j, child in enumerate(node):
                queue.append((child, path + (j,), ancestors | {path}))

    def build(node: Shape, path: tuple) -> Node:
        if not node:
            return LEAF
        return Node(
            tuple(
                (Indeterminate(lab), build(child, path + (j,)))
                for j, (lab, child) in enumerate(zip(labels_at[path], node))
            )
        )

    return EventTree(build(shape, ()))


def random_staged_tree(
    rng: random.Random,
    max_leaves: int = 10,
    max_children: int = 3,
    join_prob: float = 0.6,
    leaf_prob: float = 0.35,
) -> EventTree:
    shape = random_shape(rng, max_leaves, max_children, leaf_prob)
    return staged_tree_from_shape(rng, shape, join_prob)


def random_saturated_tree(
    rng: random.Random, max_leaves: int = 10, max_children: int = 3
) -> EventTree:
    # join_prob 0: every vertex is its own stage, so all labels are distinct.
    return staged_tree_from_shape(
        rng, random_shape(rng, max_leaves, max_children), join_prob=0.0
    )


def random_tiny_staged_tree(
    rng: random.Random, max_variables: int = 5, attempts: int = 200
) -> Optional[EventTree]:
    """A staged tree using at most ``max_variables`` distinct labels."""
    for _ in range(attempts):
        tree = random_staged_tree(rng, max_leaves=6, max_children=2, join_prob=0.95)
        if len(tree.labels()) <= max_variables:
            return tree
    return None

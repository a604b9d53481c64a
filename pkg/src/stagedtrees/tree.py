"""Labeled event trees: staged structure, polynomials, transforms, I/O.

An event tree is a rooted tree in which every vertex has zero or at least two
children and the edge labels within one floret (a vertex with its outgoing
edges) are pairwise distinct.  Staged structure is never stored: a stage is
simply a maximal group of vertices sharing the same floret label set, so it
is always derived from the labels.

Sibling order is preserved as given but carries no meaning; all equality and
deduplication go through :meth:`EventTree.canonical_form`, which renders the
tree as its canonical nested expression (sub-sums sorted by label).  Two
trees are equal exactly when they differ only by sibling reordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union

from .poly import (
    Coefficient,
    Indeterminate,
    Monomial,
    ParseError,
    Polynomial,
    VarLike,
)

__all__ = [
    "InvalidTreeError",
    "NotStagedError",
    "DomainMismatchError",
    "MissingValueError",
    "InvalidNestingError",
    "DegenerateTreeError",
    "Node",
    "LEAF",
    "Stage",
    "EvaluationResult",
    "EventTree",
    "FreshLabels",
    "from_nested",
]


class InvalidTreeError(ValueError):
    """Structure violates the event-tree rules (arity or label clashes)."""


class NotStagedError(ValueError):
    """Two florets share some but not all labels."""


class DomainMismatchError(ValueError):
    """A leaf weighting does not match the tree's root-to-leaf paths."""


class MissingValueError(ValueError):
    """An edge label has no value in the supplied assignment."""


class InvalidNestingError(ValueError):
    """A nested expression breaks the rules (fewer than two summands, repeats)."""


class DegenerateTreeError(ValueError):
    """The operation needs a tree with at least one edge."""


class Node:
    """One vertex with its outgoing edges.  Immutable and shareable.

    Every node carries the set of floret label sets occurring in its subtree,
    which makes staged-compatibility checks during enumeration incremental.
    The canonical rendering is cached on first use; the benign race of two
    threads computing the same string is harmless.
    """

    __slots__ = ("edges", "floret_labels", "floret_sets", "_canon")

    def __init__(self, edges: tuple[tuple[Indeterminate, "Node"], ...] = ()):
        if len(edges) == 1:
            raise InvalidTreeError("a vertex must have zero or at least two children")
        labels = frozenset(label for label, _ in edges)
        if len(labels) != len(edges):
            raise InvalidTreeError("edge labels within a floret must be distinct")
        self.edges = edges
        self.floret_labels = labels
        if edges:
            sets = {labels}
            for _, child in edges:
                sets.update(child.floret_sets)
            self.floret_sets: frozenset[frozenset[Indeterminate]] = frozenset(sets)
        else:
            self.floret_sets = frozenset()
        self._canon: Optional[str] = None

    @property
    def is_leaf(self) -> bool:
        return not self.edges

    def canon(self) -> str:
        """Canonical nested-expression rendering of this subtree."""
        c = self._canon
        if c is None:
            if not self.edges:
                c = "1"
            else:
                parts = sorted(
                    (label.name, "1" if child.is_leaf else child.canon())
                    for label, child in self.edges
                )
                c = " + ".join(
                    name if sub == "1" else f"{name}*({sub})" for name, sub in parts
                )
            self._canon = c
        return c


LEAF = Node(())

# Qualitative palette for stage colouring in DOT output.
_PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
)


@dataclass(frozen=True)
class Stage:
    """A floret label set together with the paths of its member vertices."""

    labels: frozenset[Indeterminate]
    members: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class EvaluationResult:
    """Atom values per root-to-leaf path plus the per-floret label sums."""

    atoms: dict[str, float]
    floret_sums: dict[str, float]


class FreshLabels:
    """Generator of fresh labels ``<prefix>1, <prefix>2, ...``

    Names colliding with the ``avoid`` set (e.g. the labels already used in a
    tree) are skipped.
    """

    def __init__(self, prefix: str = "s", avoid: Iterable[VarLike] = ()):
        self._prefix = prefix
        self._avoid = {Indeterminate(v).name for v in avoid}
        self._counter = 0

    def __iter__(self) -> "FreshLabels":
        return self

    def __next__(self) -> Indeterminate:
        while True:
            self._counter += 1
            name = f"{self._prefix}{self._counter}"
            if name not in self._avoid:
                self._avoid.add(name)
                return Indeterminate(name)


def _path_id(labels: Iterable[Indeterminate]) -> str:
    return "/".join(v.name for v in labels)


class EventTree:
    """An immutable labeled event tree.

    Construction validates the per-node rules (arity and distinct floret
    labels) through :class:`Node`; structural well-formedness is automatic
    because nodes are built bottom-up.
    """

    __slots__ = ("root",)

    def __init__(self, root: Node):
        self.root = root

    # -- constructors --------------------------------------------------

    @classmethod
    def single_vertex(cls) -> "EventTree":
        return cls(LEAF)

    @classmethod
    def from_json(cls, source: Union[str, dict]) -> "EventTree":
        """Read the ``{"root": {"edges": [{"label", "child"}...]}}`` schema."""
        obj = json.loads(source) if isinstance(source, str) else source
        if not isinstance(obj, dict) or "root" not in obj:
            raise InvalidTreeError('tree JSON must be an object with a "root" key')

        def build(node_obj: object) -> Node:
            if not isinstance(node_obj, dict) or "edges" not in node_obj:
                raise InvalidTreeError('every node needs an "edges" array')
            edges = node_obj["edges"]
            if not isinstance(edges, list):
                raise InvalidTreeError('"edges" must be an array')
            built = []
            for e in edges:
                if not isinstance(e, dict) or "label" not in e or "child" not in e:
                    raise InvalidTreeError('every edge needs "label" and "child"')
                try:
                    label = Indeterminate(e["label"])
                except ValueError as exc:
                    raise InvalidTreeError(str(exc)) from exc
                built.append((label, build(e["child"])))
            return Node(tuple(built))

        return cls(build(obj["root"]))

    # -- basic structure -----------------------------------------------

    def paths(self) -> Iterator[tuple[Indeterminate, ...]]:
        """Root-to-leaf label sequences in depth-first edge order."""

        def walk(node: Node, prefix: tuple[Indeterminate, ...]):
            if node.is_leaf:
                yield prefix
                return
            for label, child in node.edges:
                yield from walk(child, prefix + (label,))

        yield from walk(self.root, ())

    def leaf_count(self) -> int:
        return sum(1 for _ in self.paths())

    def labels(self) -> frozenset[Indeterminate]:
        out: set[Indeterminate] = set()
        for s in self.root.floret_sets:
            out.update(s)
        return frozenset(out)

    def nodes(self) -> Iterator[tuple[tuple[Indeterminate, ...], Node]]:
        """All (path, node) pairs in depth-first preorder."""

        def walk(node: Node, prefix: tuple[Indeterminate, ...]):
            yield prefix, node
            for label, child in node.edges:
                yield from walk(child, prefix + (label,))

        yield from walk(self.root, ())

    # -- staging ---------------------------------------------------------

    def is_staged(self) -> bool:
        """True when every two floret label sets are equal or disjoint."""
        owner: dict[Indeterminate, frozenset[Indeterminate]] = {}
        for label_set in self.root.floret_sets:
            for v in label_set:
                if owner.setdefault(v, label_set) != label_set:
                    return False
        return True

    def stages(self) -> tuple[Stage, ...]:
        """Partition of the non-leaf vertices by floret label set."""
        if not self.is_staged():
            raise NotStagedError("tree is not staged: overlapping unequal florets")
        groups: dict[frozenset[Indeterminate], list[tuple[str, ...]]] = {}
        for path, node in self.nodes():
            if not node.is_leaf:
                groups.setdefault(node.floret_labels, []).append(
                    tuple(v.name for v in path)
                )
        return tuple(
            Stage(labels=labs, members=tuple(sorted(members)))
            for labs, members in sorted(
                groups.items(), key=lambda kv: tuple(sorted(v.name for v in kv[0]))
            )
        )

    def is_saturated(self) -> bool:
        """True when all edge labels across the whole tree are distinct."""
        seen: set[Indeterminate] = set()
        for _, node in self.nodes():
            for label, _ in node.edges:
                if label in seen:
                    return False
                seen.add(label)
        return True

    # -- polynomials -----------------------------------------------------

    def interpolating_polynomial(self) -> Polynomial:
        """Sum of the products of edge labels along every root-to-leaf path.

        Computed by the bottom-up recursion (1 at leaves, label-weighted sum
        of child polynomials elsewhere); shared subtrees are evaluated once.
        """
        memo: dict[int, Polynomial] = {}

        def rec(node: Node) -> Polynomial:
            known = memo.get(id(node))
            if known is not None:
                return known
            if node.is_leaf:
                poly = Polynomial({Monomial.ONE: 1})
            else:
                acc: dict[Monomial, Coefficient] = {}
                for label, child in node.edges:
                    for m, c in rec(child).items():
                        key = m.times(label)
                        acc[key] = acc.get(key, 0) + c
                poly = Polynomial(acc)
            memo[id(node)] = poly
            return poly

        return rec(self.root)

    def network_polynomial(self, weights: Mapping[str, Coefficient]) -> Polynomial:
        """Atomic monomials weighted by a function on root-to-leaf paths.

        ``weights`` is keyed by path id (edge labels joined with ``/``; the
        empty string for an edgeless tree).  Paths sharing a monomial add
        their coefficients.
        """
        ids = [_path_id(p) for p in self.paths()]
        if set(ids) != set(weights):
            missing = sorted(set(ids) - set(weights))
            extra = sorted(set(weights) - set(ids))
            raise DomainMismatchError(
                f"weights must cover exactly the leaves; missing={missing}, extra={extra}"
            )
        acc: dict[Monomial, Coefficient] = {}
        for path, pid in zip(self.paths(), ids):
            mono = Monomial((v, 1) for v in path)
            acc[mono] = acc.get(mono, 0) + weights[pid]
        return Polynomial(acc)

    def match_leaf_weights(self, f: Polynomial) -> dict[str, Coefficient]:
        """Recover the leaf weighting that makes ``f`` this tree's network
        polynomial.

        Requires the tree's atomic monomials to be pairwise distinct (true
        whenever they are square-free) and to coincide with the support of
        ``f``; each path then receives the coefficient of its monomial, so
        ``network_polynomial(match_leaf_weights(f)) == f``.  Useful after
        enumerating the equivalence class of a weighted polynomial's support:
        the weights transfer to every member tree this way.
        """
        atom_of: dict[str, Monomial] = {}
        seen: dict[Monomial, str] = {}
        for path in self.paths():
            pid = _path_id(path)
            mono = Monomial((v, 1) for v in path)
            if mono in seen:
                raise DomainMismatchError(
                    f"paths {seen[mono]!r} and {pid!r} share the monomial {mono}"
                )
            seen[mono] = pid
            atom_of[pid] = mono
        if frozenset(seen) != f.support():
            raise DomainMismatchError(
                "the polynomial's support differs from this tree's atoms"
            )
        return {pid: f.coefficient(mono) for pid, mono in atom_of.items()}

    def evaluate(self, values: Mapping[VarLike, float]) -> EvaluationResult:
        """Multiply edge values along each path; also report floret sums.

        No sum-to-one condition is enforced: the per-floret sums are returned
        so callers can decide whether the assignment is a probability tree.
        """
        table = {Indeterminate(k): float(v) for k, v in values.items()}
        missing = sorted(v.name for v in self.labels() if v not in table)
        if missing:
            raise MissingValueError(f"no value for labels: {', '.join(missing)}")
        atoms: dict[str, float] = {}
        floret_sums: dict[str, float] = {}
        for path, node in self.nodes():
            if node.is_leaf:
                prod = 1.0
                for v in path:
                    prod *= table[v]
                atoms[_path_id(path)] = prod
            else:
                floret_sums[_path_id(path)] = sum(
                    table[label] for label, _ in node.edges
                )
        return EvaluationResult(atoms=atoms, floret_sums=floret_sums)

    # -- transforms --------------------------------------------------------

    def binarize(self, fresh: Optional[FreshLabels] = None) -> "EventTree":
        """Split every floret with more than two edges into a binary cascade.

        The k edges of a wide floret are grouped left-to-right, producing k-1
        binary florets whose 2(k-1) labels are drawn fresh; binary florets
        are kept as they are, so an already-binary tree returns unchanged
        with no fresh labels consumed.  Leaf count and leaf order are
        preserved.
        """
        gen = fresh if fresh is not None else FreshLabels("s", avoid=self.labels())

        def cascade(pairs: list[tuple[Indeterminate, Node]]) -> Node:
            a, b = next(gen), next(gen)
            if len(pairs) == 2:
                return Node(((a, pairs[0][1]), (b, pairs[1][1])))
            return Node(((a, cascade(pairs[:-1])), (b, pairs[-1][1])))

        def rebuild(node: Node) -> Node:
            if node.is_leaf:
                return node
            pairs = [(label, rebuild(child)) for label, child in node.edges]
            if len(pairs) == 2:
                return Node(tuple(pairs))
            return cascade(pairs)

        return EventTree(rebuild(self.root))

    def minimal_representation(self, fresh: Optional[FreshLabels] = None) -> "EventTree":
        """Collapse to a single floret with one fresh label per path."""
        if self.root.is_leaf:
            raise DegenerateTreeError("a single vertex has no minimal representation")
        gen = fresh if fresh is not None else FreshLabels("s", avoid=self.labels())
        edges = tuple((next(gen), LEAF) for _ in self.paths())
        return EventTree(Node(edges))

    # -- canonical form and serialization -----------------------------------

    def canonical_form(self) -> str:
        """Canonical nested expression; equal iff trees match up to sibling order."""
        return self.root.canon()

    def to_json_obj(self) -> dict:
        def render(node: Node) -> dict:
            return {
                "edges": [
                    {"label": label.name, "child": render(child)}
                    for label, child in node.edges
                ]
            }

        return {"root": render(self.root)}

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)

    def to_dot(self, name: str = "tree") -> str:
        """Graphviz rendering with vertices coloured by stage.

        Stage colours are stable: floret label sets are sorted and mapped
        into a fixed palette.  Works for non-staged trees too, where the
        grouping is still by floret label set.
        """
        groups = sorted(
            {node.floret_labels for _, node in self.nodes() if not node.is_leaf},
            key=lambda s: tuple(sorted(v.name for v in s)),
        )
        color = {
            labels: _PALETTE[i % len(_PALETTE)] for i, labels in enumerate(groups)
        }
        # Node objects may be shared between positions, so ids follow the
        # preorder traversal rather than object identity.
        node_lines: list[str] = []
        edge_lines: list[str] = []
        counter = [0]

        def walk(node: Node) -> str:
            nid = f"v{counter[0]}"
            counter[0] += 1
            if node.is_leaf:
                node_lines.append(f"  {nid} [shape=point];")
            else:
                node_lines.append(
                    f'  {nid} [shape=circle, label="", style=filled, '
                    f'fillcolor="{color[node.floret_labels]}"];'
                )
            for label, child in node.edges:
                child_id = walk(child)
                edge_lines.append(f'  {nid} -> {child_id} [label="{label.name}"];')
            return nid

        walk(self.root)
        lines = [f"digraph {name} {{", "  rankdir=LR;"] + node_lines + edge_lines + ["}"]
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EventTree) and self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        return hash(self.canonical_form())

    def __repr__(self) -> str:
        form = self.canonical_form()
        if len(form) > 60:
            form = form[:57] + "..."
        return f"<EventTree {form}>"


# --- nested expressions -----------------------------------------------------


def _parse_nested(text: str, pos: int) -> tuple[Node, int]:
    pos = _skip(text, pos)
    if pos < len(text) and text[pos] == "1":
        return LEAF, pos + 1
    terms: list[tuple[Indeterminate, Node]] = []
    while True:
        pos = _skip(text, pos)
        if pos >= len(text) or not text[pos].isalpha():
            raise ParseError("expected a label", text, pos)
        end = pos + 1
        while end < len(text) and (text[end].isalnum() or text[end] == "_"):
            end += 1
        label = Indeterminate(text[pos:end])
        pos = _skip(text, end)
        child = LEAF
        if pos < len(text) and text[pos] == "*":
            pos = _skip(text, pos + 1)
            if pos >= len(text) or text[pos] != "(":
                raise ParseError("expected '(' after '*'", text, pos)
        if pos < len(text) and text[pos] == "(":
            child, pos = _parse_nested(text, pos + 1)
            pos = _skip(text, pos)
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("expected ')'", text, pos)
            pos += 1
        terms.append((label, child))
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == "+":
            pos += 1
            continue
        break
    if len(terms) < 2:
        raise InvalidNestingError(
            "a nested sum needs at least two summands (or be exactly '1')"
        )
    labels = [label for label, _ in terms]
    if len(set(labels)) != len(labels):
        raise InvalidNestingError("labels within one nested sum must be distinct")
    return Node(tuple(terms)), pos


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t\r\n":
        pos += 1
    return pos


def from_nested(text: str) -> EventTree:
    """Build the event tree of a nested expression.

    The expression is either ``1`` or a sum of at least two ``label`` /
    ``label*(sub)`` summands, each sub-expression nested in turn.  The tree
    has one root edge per summand and the expansion of the expression equals
    the tree's interpolating polynomial.
    """
    node, pos = _parse_nested(text, 0)
    pos = _skip(text, pos)
    if pos != len(text):
        raise ParseError("trailing input after nested expression", text, pos)
    return EventTree(node)

"""Pre-screens and alternative representations for interpolating polynomials.

The screen evaluates four necessary conditions for a square-free polynomial
to be the interpolating polynomial of a labeled event tree; it reports and
never throws, and it never rejects a polynomial that actually has a staged
tree.  The incidence matrix and the simplicial complex are two standard ways
to look at the same support set; connected-component structure of the complex
detects whether the (unique) tree behind the polynomial would be saturated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .ideal import EmptyBasisError, UnitIdealError, interreduce, minimal_primes
from .poly import Indeterminate, Monomial, Polynomial, VarLike

__all__ = [
    "UnknownVariableError",
    "ScreenCondition",
    "ScreenReport",
    "screen",
    "IncidenceMatrix",
    "incidence_matrix",
    "subtree_submatrix",
    "SimplicialComplex",
    "ComplexComponent",
    "SaturationReport",
    "simplicial_complex",
    "saturation_test",
    "facet_sharing_dot",
]


class UnknownVariableError(ValueError):
    """The requested variable is not a row of the matrix."""


# --- necessary-condition screen ------------------------------------------------


@dataclass(frozen=True)
class ScreenCondition:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ScreenReport:
    conditions: tuple[ScreenCondition, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_json_obj(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.conditions
            ],
        }


def _names(vars_: Iterable[Indeterminate]) -> str:
    return "{" + ", ".join(sorted(v.name for v in vars_)) + "}"


def screen(f: Polynomial) -> ScreenReport:
    """Evaluate the four necessary conditions; report only, never raise.

    All four hold for every polynomial that has a staged tree, but they are
    not sufficient: a polynomial can pass all of them and still have an empty
    equivalence class.
    """
    support = f.support()
    n = len(support)
    variables = f.variables()
    d = len(variables)
    deg = f.degree()
    trivial = support == {Monomial.ONE}

    # 1: counting bounds tying variables, terms and degree together.
    if trivial:
        c1 = ScreenCondition("size_bounds", True, "constant polynomial")
    elif n < 2 or d < 2:
        c1 = ScreenCondition(
            "size_bounds", False, f"needs at least 2 terms and 2 variables (n={n}, d={d})"
        )
    elif d > 2 * n - 2:
        c1 = ScreenCondition("size_bounds", False, f"d={d} exceeds 2n-2={2 * n - 2}")
    elif d <= deg:
        c1 = ScreenCondition("size_bounds", False, f"d={d} not greater than degree {deg}")
    else:
        c1 = ScreenCondition(
            "size_bounds", True, f"n={n}, d={d} <= 2n-2={2 * n - 2}, d > deg={deg}"
        )

    # 2: some candidate root label set must satisfy the frequency bound: each
    # of its labels divides at least as many monomials as the largest degree
    # among them (a root edge of a degree-k atom heads a subtree with >= k
    # leaves).  Candidates are the minimal primes, since the root floret of
    # any staged tree is one of them.
    if trivial:
        c2 = ScreenCondition("root_label_frequency", True, "constant polynomial")
    else:
        try:
            primes = minimal_primes(interreduce(support))
        except (EmptyBasisError, UnitIdealError) as exc:
            c2 = ScreenCondition("root_label_frequency", False, str(exc))
        else:
            passing = None
            worst = ""
            for prime in primes:
                violation = None
                for x in sorted(prime):
                    hits = [t for t in support if x in t]
                    top = max(t.degree for t in hits)
                    if len(hits) < top:
                        violation = (
                            f"{x.name} divides {len(hits)} monomials but their "
                            f"degree reaches {top}"
                        )
                        break
                if violation is None:
                    passing = prime
                    break
                worst = f"{_names(prime)}: {violation}"
            if passing is not None:
                c2 = ScreenCondition(
                    "root_label_frequency",
                    True,
                    f"candidate root labels {_names(passing)} satisfy the frequency bound",
                )
            else:
                c2 = ScreenCondition(
                    "root_label_frequency",
                    False,
                    f"no candidate root label set satisfies the bound; e.g. {worst}",
                )

    # 3: every maximal-degree monomial splits off a sibling at a deepest
    # floret, so it has a partner of the same degree with gcd one short.
    if trivial:
        c3 = ScreenCondition("top_degree_partners", True, "constant polynomial")
    else:
        top_monomials = [t for t in support if t.degree == deg]
        offender = None
        for t in sorted(top_monomials):
            if not any(
                u != t and u.degree == deg and t.gcd(u).degree == deg - 1
                for u in top_monomials
            ):
                offender = t
                break
        if offender is None:
            c3 = ScreenCondition(
                "top_degree_partners",
                True,
                f"all {len(top_monomials)} maximal-degree monomials have partners",
            )
        else:
            c3 = ScreenCondition(
                "top_degree_partners",
                False,
                f"{offender} has no equal-degree partner with gcd of degree {deg - 1}",
            )

    # 4: the support must be an antichain under divisibility.
    offender_pair = None
    for t in sorted(support):
        for u in sorted(support):
            if t != u and t.divides(u):
                offender_pair = (t, u)
                break
        if offender_pair:
            break
    if offender_pair is None:
        c4 = ScreenCondition("antichain_support", True, "no monomial divides another")
    else:
        c4 = ScreenCondition(
            "antichain_support",
            False,
            f"{offender_pair[0]} divides {offender_pair[1]}",
        )

    return ScreenReport(conditions=(c1, c2, c3, c4))


# --- incidence matrix -----------------------------------------------------------


@dataclass(frozen=True)
class IncidenceMatrix:
    """Variables-by-monomials exponent matrix in canonical order.

    Column sums are the monomial degrees; row sums count the monomials
    divisible by the row's variable.
    """

    variables: tuple[Indeterminate, ...]
    monomials: tuple[Monomial, ...]
    entries: tuple[tuple[int, ...], ...]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    def col_sums(self) -> tuple[int, ...]:
        return tuple(
            sum(row[j] for row in self.entries) for j in range(len(self.monomials))
        )

    def row(self, var: VarLike) -> tuple[int, ...]:
        v = Indeterminate(var)
        try:
            return self.entries[self.variables.index(v)]
        except ValueError:
            raise UnknownVariableError(f"{v.name} is not a row of this matrix") from None

    def to_csv(self) -> str:
        header = "," + ",".join(str(m) for m in self.monomials)
        lines = [header]
        for v, row in zip(self.variables, self.entries):
            lines.append(v.name + "," + ",".join(str(e) for e in row))
        return "\n".join(lines) + "\n"


def incidence_matrix(f: Polynomial) -> IncidenceMatrix:
    """Exponent matrix of the support; general monomials record their exponents."""
    variables = tuple(sorted(f.variables()))
    monomials = tuple(sorted(f.support()))
    entries = tuple(
        tuple(m.exponent(v) for m in monomials) for v in variables
    )
    return IncidenceMatrix(variables=variables, monomials=monomials, entries=entries)


def subtree_submatrix(matrix: IncidenceMatrix, var: VarLike) -> IncidenceMatrix:
    """Incidence matrix of the subtree hanging below an edge labeled ``var``.

    Keep the columns whose monomials are divisible by the variable, then drop
    the rows that are all-zero on those columns (variables absent from the
    branch) and the rows that divide every kept column (the edge variable
    itself and everything on the path above it).  Column monomials are
    rewritten over the surviving rows, so the result is literally the
    incidence matrix of the subtree's polynomial.
    """
    v = Indeterminate(var)
    if v not in matrix.variables:
        raise UnknownVariableError(f"{v.name} is not a row of this matrix")
    v_row = matrix.entries[matrix.variables.index(v)]
    keep_cols = [j for j, e in enumerate(v_row) if e >= 1]
    kept_vars = []
    kept_rows = []
    for w, row in zip(matrix.variables, matrix.entries):
        restricted = tuple(row[j] for j in keep_cols)
        if all(e == 0 for e in restricted):
            continue
        if all(e >= 1 for e in restricted):
            continue
        kept_vars.append(w)
        kept_rows.append(restricted)
    new_monomials = tuple(
        Monomial(
            (w, kept_rows[i][jj])
            for i, w in enumerate(kept_vars)
            if kept_rows[i][jj] >= 1
        )
        for jj in range(len(keep_cols))
    )
    return IncidenceMatrix(
        variables=tuple(kept_vars),
        monomials=new_monomials,
        entries=tuple(kept_rows),
    )


# --- simplicial complex ----------------------------------------------------------


@dataclass(frozen=True)
class SimplicialComplex:
    """Stored by facets only; faces are all subsets, never materialized."""

    facets: tuple[frozenset[Indeterminate], ...]


@dataclass(frozen=True)
class ComplexComponent:
    variables: tuple[Indeterminate, ...]
    max_degree_vertex: Optional[Indeterminate]
    valid_root: bool


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    components: tuple[ComplexComponent, ...]

    def to_json_obj(self) -> dict:
        return {
            "saturated": self.saturated,
            "components": [
                {
                    "variables": [v.name for v in c.variables],
                    "max_degree_vertex": c.max_degree_vertex.name
                    if c.max_degree_vertex is not None
                    else None,
                    "valid_root": c.valid_root,
                }
                for c in self.components
            ],
        }


def simplicial_complex(f: Polynomial) -> SimplicialComplex:
    """Facets are the inclusion-maximal monomial supports."""
    supports = {frozenset(m.variables()) for m in f.support()}
    facets = [s for s in supports if not any(s < t for t in supports)]
    facets.sort(key=lambda s: (len(s), tuple(sorted(v.name for v in s))))
    return SimplicialComplex(facets=tuple(facets))


def _facet_components(
    facets: list[frozenset[Indeterminate]],
) -> list[list[frozenset[Indeterminate]]]:
    """Group facets by connectivity (two variables adjacent when they co-occur)."""
    vertices = sorted({v for s in facets for v in s})
    parent: dict[Indeterminate, Indeterminate] = {v: v for v in vertices}

    def find(v: Indeterminate) -> Indeterminate:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in facets:
        anchor = None
        for v in s:
            if anchor is None:
                anchor = find(v)
            else:
                parent[find(v)] = anchor
    groups: dict[Indeterminate, list[frozenset[Indeterminate]]] = {}
    for s in facets:
        groups.setdefault(find(next(iter(s))), []).append(s)
    return list(groups.values())


def _component_root(
    local_facets: list[frozenset[Indeterminate]],
) -> tuple[Optional[Indeterminate], bool]:
    """The strict max-degree vertex of a component, and whether it can be a
    root label (unique in degree and contained in every facet)."""
    degree: dict[Indeterminate, int] = {}
    for s in local_facets:
        for v in s:
            degree[v] = degree.get(v, 0) + 1
    top = max(degree.values())
    top_vertices = [v for v, d in degree.items() if d == top]
    if len(top_vertices) != 1:
        return None, False
    vertex = top_vertices[0]
    return vertex, all(vertex in s for s in local_facets)


def _peels_into_saturated_tree(facets: frozenset[frozenset[Indeterminate]]) -> bool:
    """Whether some saturated tree has exactly these atom supports.

    Peel recursively: the complex must split into at least two components,
    each must have a strict max-degree vertex lying in all of its facets
    (the branch's root label), and the quotient by that vertex must peel in
    turn.  A single empty facet is a leaf.
    """
    if facets <= {frozenset()}:
        return True
    if frozenset() in facets:
        return False
    components = _facet_components(list(facets))
    if len(components) < 2:
        return False
    for local in components:
        vertex, valid = _component_root(local)
        if not valid:
            return False
        if not _peels_into_saturated_tree(frozenset(s - {vertex} for s in local)):
            return False
    return True


def facet_sharing_dot(sc: SimplicialComplex, name: str = "complex") -> str:
    """Graphviz rendering of the facet-sharing graph.

    One vertex per variable; an undirected edge joins every pair of
    variables that co-occur in some facet.
    """
    facets = [s for s in sc.facets if s]
    vertices = sorted({v for s in facets for v in s})
    edges = sorted(
        {
            (a.name, b.name)
            for s in facets
            for a in s
            for b in s
            if a.name < b.name
        }
    )
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v.name};" for v in vertices)
    lines.extend(f"  {a} -- {b};" for a, b in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def saturation_test(sc: SimplicialComplex) -> SaturationReport:
    """Detect whether the complex is the disjoint sum left by a saturated tree.

    Two variables are adjacent when they co-occur in a facet.  A saturated
    tree leaves one connected component per root label, and in each component
    that root label is the strict maximum in degree (number of facets
    containing it) and lies in all of its component's facets.  The reported
    components describe this top level; the ``saturated`` verdict applies the
    same peeling recursively, since a label repeated deep inside one branch
    is invisible to the top-level split.  A complex with no vertices (a
    constant polynomial) counts as saturated, matching the single-vertex
    tree.
    """
    facets = [s for s in sc.facets if s]
    if not facets:
        return SaturationReport(saturated=True, components=())
    components = []
    for local in _facet_components(facets):
        vertex, valid = _component_root(local)
        components.append(
            ComplexComponent(
                variables=tuple(sorted({v for s in local for v in s})),
                max_degree_vertex=vertex,
                valid_root=valid,
            )
        )
    components.sort(key=lambda c: tuple(v.name for v in c.variables))
    saturated = _peels_into_saturated_tree(frozenset(facets))
    return SaturationReport(saturated=saturated, components=tuple(components))

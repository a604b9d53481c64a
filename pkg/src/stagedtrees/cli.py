"""Command-line interface.

Subcommands: interpolate, decompose, class, check, incidence, complex.
Exit codes: 0 success (including empty results), 2 I/O or syntax trouble,
3 domain violations (non-square-free input, coefficients other than one),
4 internal errors.  All output is deterministic: the same input always
produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .analyze import (
    UnknownVariableError,
    facet_sharing_dot,
    incidence_matrix,
    saturation_test,
    screen,
    simplicial_complex,
    subtree_submatrix,
)
from .enumeration import (
    CoefficientNotOneError,
    NonSquareFreeInputError,
    labeled_event_trees,
    staged_trees,
)
from .ideal import (
    EmptyBasisError,
    UnitIdealError,
    interreduce,
    minimal_primes,
    minimal_primes_exhaustive,
)
from .poly import (
    NonSquareFreeResultError,
    NonSquareFreeTermError,
    ParseError,
    parse_polynomial,
    parse_polynomial_general,
)
from .tree import (
    DegenerateTreeError,
    DomainMismatchError,
    EventTree,
    InvalidNestingError,
    InvalidTreeError,
    MissingValueError,
    NotStagedError,
)

_SYNTAX_ERRORS = (
    ParseError,
    InvalidTreeError,
    InvalidNestingError,
    json.JSONDecodeError,
    OSError,
)
_DOMAIN_ERRORS = (
    NonSquareFreeTermError,
    NonSquareFreeResultError,
    NonSquareFreeInputError,
    CoefficientNotOneError,
    DomainMismatchError,
    MissingValueError,
    NotStagedError,
    DegenerateTreeError,
    EmptyBasisError,
    UnitIdealError,
    UnknownVariableError,
)


def _read_input(args: argparse.Namespace) -> str:
    if args.file is not None:
        if args.input is not None:
            raise ParseError("give either an inline input or --file, not both", "", 0)
        return Path(args.file).read_text()
    if args.input is None:
        raise ParseError("missing input: pass it inline or with --file", "", 0)
    return args.input


def _add_input(parser: argparse.ArgumentParser, what: str) -> None:
    parser.add_argument("input", nargs="?", help=f"inline {what}")
    parser.add_argument("--file", "-f", help=f"read the {what} from a file")


def cmd_interpolate(args: argparse.Namespace) -> int:
    tree = EventTree.from_json(_read_input(args))
    if args.network is not None:
        weights = json.loads(Path(args.network).read_text())
        poly = tree.network_polynomial(weights)
    else:
        poly = tree.interpolating_polynomial()
    print(poly)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    poly = parse_polynomial(_read_input(args))
    basis = interreduce(poly.support())
    backend = minimal_primes_exhaustive if args.oracle else minimal_primes
    components = backend(basis)
    out = [sorted(v.name for v in comp) for comp in components]
    print(json.dumps(out, indent=2))
    return 0


def cmd_class(args: argparse.Namespace) -> int:
    poly = parse_polynomial(_read_input(args))
    trees = [(t, True) for t in staged_trees(poly, jobs=args.jobs)]
    if args.include_unstaged:
        trees.extend(
            (t, False) for t in labeled_event_trees(poly) if not t.is_staged()
        )
    if args.count_only:
        print(len(trees))
        return 0
    if args.dot_dir is not None:
        out_dir = Path(args.dot_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, (tree, _) in enumerate(trees):
            (out_dir / f"tree_{i:04d}.dot").write_text(tree.to_dot(f"tree_{i:04d}"))
        print(len(trees))
        return 0
    members = [
        {"nested": t.canonical_form(), "staged": staged, "tree": t.to_json_obj()}
        for t, staged in trees
    ]
    print(json.dumps(members, indent=2))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    poly = parse_polynomial(_read_input(args))
    print(json.dumps(screen(poly).to_json_obj(), indent=2))
    return 0


def cmd_incidence(args: argparse.Namespace) -> int:
    poly = parse_polynomial_general(_read_input(args))
    matrix = incidence_matrix(poly)
    if args.subtree is not None:
        matrix = subtree_submatrix(matrix, args.subtree)
    sys.stdout.write(matrix.to_csv())
    return 0


def cmd_complex(args: argparse.Namespace) -> int:
    poly = parse_polynomial(_read_input(args))
    sc = simplicial_complex(poly)
    if args.dot:
        sys.stdout.write(facet_sharing_dot(sc))
        return 0
    print(json.dumps(saturation_test(sc).to_json_obj(), indent=2))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stagedtrees",
        description=(
            "Staged trees, interpolating polynomials, minimal prime "
            "decompositions and polynomial equivalence classes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpolate", help="interpolating polynomial of a tree")
    _add_input(p, "tree JSON")
    p.add_argument("--network", help="JSON file of leaf weights keyed by path id")
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("decompose", help="minimal primes of the support ideal")
    _add_input(p, "polynomial")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="use the exhaustive subset backend (small inputs only)",
    )
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("class", help="equivalence class of staged trees")
    _add_input(p, "polynomial")
    p.add_argument("--count-only", action="store_true", help="print only the count")
    p.add_argument("--dot-dir", help="write one DOT file per tree into this directory")
    p.add_argument(
        "--include-unstaged",
        action="store_true",
        help="also emit labeled event trees that are not staged",
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel branch exploration")
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("check", help="necessary-condition screen report")
    _add_input(p, "polynomial")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("incidence", help="variables-by-monomials CSV matrix")
    _add_input(p, "polynomial")
    p.add_argument("--subtree", help="restrict to the subtree below this edge label")
    p.set_defaults(func=cmd_incidence)

    p = sub.add_parser("complex", help="simplicial-complex components and saturation")
    _add_input(p, "polynomial")
    p.add_argument("--dot", action="store_true", help="emit the facet-sharing graph as DOT")
    p.set_defaults(func=cmd_complex)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _SYNTAX_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - internal invariant breach
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())

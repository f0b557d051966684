"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 domain error, 3 input is prime,
4 power iteration did not converge.
"""

from __future__ import annotations

import argparse
import math
import sys
from functools import reduce
from pathlib import Path

import numpy as np

from . import generators as gen
from .branches import decompose
from .errors import DomainError, EmptyPatternError, NonConvergenceError, ParseError
from .formats import (
    SvgStyle,
    dumps,
    factorization_report,
    layout_report,
    nkp_report,
    read_edge_list,
    read_matrix_market,
    render_dot,
    render_matrix_market,
    render_svg,
    write_json,
    write_matrix_market,
)
from .layout import LayoutConfig, edge_segments, layout_positions
from .nkp import DEFAULT_MAXIT, DEFAULT_TOL, nkp_multi
from .pattern import BinaryPattern, kron_all

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_PRIME, EXIT_NONCONVERGENCE = 0, 1, 2, 3, 4


def _int_tuple(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(t) for t in text.replace("x", ",").split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _float_tuple(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _load_pattern(path: str) -> BinaryPattern:
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith("%%MatrixMarket"):
        return read_matrix_market(path, as_pattern=True)
    return read_edge_list(path)


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_factorize(args) -> int:
    a = _load_pattern(args.input)
    pairs = [tuple(p) for p in args.pair] if args.pair else None
    dec = decompose(a, pairs=pairs)
    verified = None
    if args.verify:
        verified = all(kron_all(d.factors) == a for d in dec.decompositions)
    report = factorization_report(dec, verified)
    if args.json == "-":
        sys.stdout.write(dumps(report))
    else:
        if args.json:
            write_json(report, args.json)
        _print_summary(dec, verified)
    if verified is False:
        return EXIT_DOMAIN
    return EXIT_PRIME if dec.is_prime else EXIT_OK


def _print_summary(dec, verified):
    a = dec.pattern
    print(f"n = {a.size}, nnz = {a.nnz}, {len(dec.pairs_tested)} pair(s) tested")
    print(f"length-2 factorizations: {[list(f.pair) for f in dec.length2]}")
    if dec.is_prime:
        print("prime")
        return
    tag = "" if dec.primality_guaranteed else "  [primality not guaranteed: restricted pairs]"
    print(f"maximal: {str(dec.is_maximal).lower()}")
    for k, d in enumerate(dec.decompositions, start=1):
        print(f"branch {k} {list(d.branch.chain)} -> sizes {d.sizes}{tag}")
    if verified is not None:
        print(f"verified: {str(verified).lower()}")


def cmd_graph(args) -> int:
    a = _load_pattern(args.input)
    dec = decompose(a)
    _emit(render_dot(dec.graph), args.dot)
    return EXIT_PRIME if dec.is_prime else EXIT_OK


def cmd_layout(args) -> int:
    a = _load_pattern(args.input)
    if math.prod(args.sizes) != a.size:
        raise DomainError(f"sizes {args.sizes} multiply to {math.prod(args.sizes)}, not {a.size}")
    config = LayoutConfig(args.sizes, args.radii, args.shift)
    layout = layout_positions(config)
    segments = edge_segments(a, layout)
    style = SvgStyle(width=args.width, edge_opacity=args.opacity, directed=args.directed)
    if args.svg:
        _emit(render_svg(layout, segments, style), args.svg)
    if args.json or not args.svg:
        _emit(dumps(layout_report(layout, a)), args.json)
    return EXIT_OK


def cmd_nkp(args) -> int:
    b = read_matrix_market(args.input)
    if isinstance(b, BinaryPattern):
        b = b.to_dense(dtype=float)
    result = nkp_multi(b, args.sizes, tol=args.tol, maxit=args.maxit)
    paths = []
    if args.out:
        for k, f in enumerate(result.factors, start=1):
            path = f"{args.out}.factor{k}.mtx"
            write_matrix_market(f, path)
            paths.append(path)
    report = nkp_report(result, float(np.linalg.norm(b)), paths)
    if args.out:
        write_json(report, f"{args.out}.json")
    sys.stdout.write(dumps(report))
    return EXIT_OK


_GEN_HELP = """kinds and positional parameters:
  identity N | ones N | basis N I J | random N [DENSITY]
  kron S1,S2,... [DENSITY]      product of random prime patterns
  banded N [LOWER UPPER]
  hierarchical [S1,S2,...]      tridiagonal x lower-bidiagonal fixture
  example1 | example2 | example5 | diag | lower | graph | arrowhead | gate
  exact S1,S2,...               real product of random dense factors
  twoterm [S1,S2,...]           real W x M + M' x K fixture"""


def cmd_gen(args) -> int:
    kind, p = args.kind, args.params
    rng = np.random.default_rng(args.seed)

    def need(k):
        if len(p) < k:
            raise DomainError(f"gen {kind} needs {k} parameter(s)")

    def num(i, default=None, cast=int):
        if i < len(p):
            try:
                return cast(p[i])
            except ValueError:
                raise DomainError(f"bad parameter {p[i]!r}") from None
        if default is None:
            raise DomainError(f"gen {kind} needs parameter {i + 1}")
        return default

    def sizes(i, default=None):
        if i >= len(p):
            if default is None:
                raise DomainError(f"gen {kind} needs a size list")
            return default
        try:
            return _int_tuple(p[i])
        except argparse.ArgumentTypeError as exc:
            raise DomainError(str(exc)) from None

    fixed = {
        "example1": gen.example1, "example2": gen.example2, "example5": gen.example5,
        "diag": gen.diag3_of_4, "lower": gen.lower3_of_4, "graph": gen.graph_adjacency,
        "arrowhead": gen.arrowhead, "gate": gen.gate_pattern,
    }
    if kind in fixed:
        obj = fixed[kind]()
    elif kind == "identity":
        obj = BinaryPattern.identity(num(0))
    elif kind == "ones":
        obj = BinaryPattern.ones(num(0))
    elif kind == "basis":
        need(3)
        obj = BinaryPattern.basis(num(0), num(1), num(2))
    elif kind == "random":
        obj = gen.random_pattern(num(0), num(1, 0.5, float), rng)
    elif kind == "kron":
        obj, _ = gen.random_kron(sizes(0), num(1, 0.5, float), rng)
    elif kind == "banded":
        obj = gen.banded(num(0), num(1, 1), num(2, 1))
    elif kind == "hierarchical":
        obj = gen.hierarchical_banded(sizes(0, (31, 12, 12, 12)))
    elif kind == "exact":
        obj = reduce(np.kron, [rng.standard_normal((s, s)) for s in sizes(0)])
    elif kind == "twoterm":
        obj = gen.two_term_matrix(sizes(0, (5, 4, 6)), rng)
    else:
        raise DomainError(f"unknown kind {kind!r}\n{_GEN_HELP}")
    _emit(render_matrix_market(obj, f"kronfact gen {kind} {' '.join(p)} seed={args.seed}"), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kronfact",
        description="Kronecker factorization of sparse binary matrices.",
        epilog="exit codes: 0 ok, 1 parse error, 2 domain error, 3 prime input, 4 no convergence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", help="all prime Kronecker decompositions of a pattern")
    p.add_argument("input", help="Matrix Market file or edge list")
    p.add_argument("--pair", nargs=2, type=int, action="append", metavar=("N1", "N2"),
                   help="only test this compatible pair (repeatable)")
    p.add_argument("--json", metavar="OUT", help="write the JSON report ('-' for stdout)")
    p.add_argument("--verify", action="store_true", help="re-check every decomposition by Kronecker product")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("graph", help="decomposition graph as DOT")
    p.add_argument("input")
    p.add_argument("--dot", metavar="OUT")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("layout", help="Kronecker graph layout as SVG and/or JSON")
    p.add_argument("input")
    p.add_argument("--sizes", type=_int_tuple, required=True, help="factor sizes, e.g. 4,3,2")
    p.add_argument("--radii", type=_float_tuple, help="decreasing radii (default 1, 0.35, 0.35^2, ...)")
    p.add_argument("--shift", type=float, default=math.pi / 2, help="phase shift in radians")
    p.add_argument("--opacity", type=float, default=0.5, help="edge stroke opacity")
    p.add_argument("--width", type=int, default=800, help="SVG width in px")
    p.add_argument("--directed", action="store_true", help="draw arrowheads")
    p.add_argument("--svg", metavar="OUT")
    p.add_argument("--json", metavar="OUT")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("nkp", help="nearest Kronecker product approximation of a real matrix")
    p.add_argument("input", help="Matrix Market real matrix")
    p.add_argument("--sizes", type=_int_tuple, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--maxit", type=int, default=DEFAULT_MAXIT)
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.factorK.mtx and PREFIX.json")
    p.set_defaults(func=cmd_nkp)

    p = sub.add_parser("gen", help="write a fixture matrix", epilog=_GEN_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("kind")
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=gen.DEFAULT_SEED)
    p.add_argument("--out", metavar="OUT")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse usage errors are parse errors
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"kronfact: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NonConvergenceError as exc:
        print(f"kronfact: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DomainError, EmptyPatternError) as exc:
        print(f"kronfact: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"kronfact: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Readers and writers: Matrix Market, edge lists, DOT, SVG and JSON reports.

Every writer is byte-deterministic: identical inputs give identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .branches import Decomposition, DecompositionGraph
from .errors import DomainError, ParseError
from .layout import LayoutResult, Segment, multi_index, vertex_radius
from .pattern import BinaryPattern

SCHEMA = "kronfact/1"

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)

_FIELDS = {"pattern", "real", "integer", "double"}
_SYMMETRIES = {"general", "symmetric", "skew-symmetric"}


# Matrix Market


def _parse_header(line: str):
    tokens = line.strip().split()
    if len(tokens) != 5 or tokens[0] != "%%MatrixMarket" or tokens[1].lower() != "matrix":
        raise ParseError(f"not a Matrix Market header: {line.strip()!r}", 1)
    fmt, field, sym = (t.lower() for t in tokens[2:])
    if fmt not in ("coordinate", "array"):
        raise ParseError(f"unsupported format {fmt!r}", 1)
    if field not in _FIELDS:
        raise ParseError(f"unsupported field {field!r}", 1)
    if sym not in _SYMMETRIES:
        raise ParseError(f"unsupported symmetry {sym!r}", 1)
    if fmt == "array" and field == "pattern":
        raise ParseError("array format cannot hold a pattern", 1)
    if field == "pattern" and sym == "skew-symmetric":
        raise ParseError("a pattern cannot be skew-symmetric", 1)
    return fmt, field, sym


def _int_tokens(text: str, lineno: int, count: int):
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {text.strip()!r}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {text.strip()!r}", lineno) from None


def _locate_bad_line(lines, first_lineno, width, kinds):
    for k, line in enumerate(lines):
        parts = line.split()
        if len(parts) != width:
            raise ParseError(f"expected {width} fields, got {line.strip()!r}", first_lineno + k)
        for part, kind in zip(parts, kinds):
            try:
                kind(part)
            except ValueError:
                raise ParseError(f"cannot parse {part!r}", first_lineno + k) from None
    raise ParseError("malformed data section", first_lineno)


def read_matrix_market(path, as_pattern: bool = False) -> Union[BinaryPattern, np.ndarray]:
    """Read a square matrix.

    Pattern files give a :class:`BinaryPattern`; real/integer files give a
    dense float array, or its nonzero pattern when ``as_pattern`` is set.
    Duplicate coordinates are merged (patterns) or summed (values).
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fmt, field, sym = _parse_header(lines[0])
    k = 1
    while k < len(lines) and (not lines[k].strip() or lines[k].lstrip().startswith("%")):
        k += 1
    if k == len(lines):
        raise ParseError("missing size line", k)
    size_lineno = k + 1
    if fmt == "coordinate":
        nrows, ncols, nent = _int_tokens(lines[k], size_lineno, 3)
    else:
        nrows, ncols = _int_tokens(lines[k], size_lineno, 2)
        nent = nrows * ncols if sym == "general" else nrows * (nrows + 1) // 2
        if sym == "skew-symmetric":
            nent = nrows * (nrows - 1) // 2
    if nrows < 1 or ncols < 1 or nent < 0:
        raise ParseError(f"invalid dimensions {nrows} x {ncols}", size_lineno)
    if nrows != ncols:
        raise DomainError(f"only square matrices are supported, got {nrows} x {ncols}")
    n = nrows
    body = [ln for ln in lines[k + 1 :] if ln.strip() and not ln.lstrip().startswith("%")]
    first = k + 2
    if len(body) != nent:
        raise ParseError(f"expected {nent} entries, found {len(body)}", size_lineno)

    if fmt == "array":
        try:
            vals = np.array(" ".join(body).split(), dtype=float)
        except ValueError:
            _locate_bad_line(body, first, 1, (float,))
        if vals.size != nent:
            _locate_bad_line(body, first, 1, (float,))
        dense = np.zeros((n, n))
        if sym == "general":
            dense = vals.reshape(n, n, order="F")
        else:
            lo = 0 if sym == "symmetric" else 1
            cols, rows = zip(*[(j, i) for j in range(n) for i in range(j + lo, n)]) if nent else ((), ())
            dense[list(rows), list(cols)] = vals
            sign = 1.0 if sym == "symmetric" else -1.0
            dense = dense + sign * np.tril(dense, -1).T
        return BinaryPattern.from_dense(dense) if as_pattern else dense

    width = 2 if field == "pattern" else 3
    kinds = (int, int) if field == "pattern" else (int, int, float)
    if nent:
        try:
            flat = np.array(" ".join(body).split(), dtype=float)
        except ValueError:
            _locate_bad_line(body, first, width, kinds)
        if flat.size != nent * width:
            _locate_bad_line(body, first, width, kinds)
        table = flat.reshape(nent, width)
        rows = table[:, 0].astype(np.int64)
        cols = table[:, 1].astype(np.int64)
        if np.any(rows != table[:, 0]) or np.any(cols != table[:, 1]):
            _locate_bad_line(body, first, width, kinds)
        bad = (rows < 1) | (rows > n) | (cols < 1) | (cols > n)
        if bad.any():
            j = int(np.argmax(bad))
            raise ParseError(f"entry ({rows[j]}, {cols[j]}) outside {n} x {n}", first + j)
        vals = table[:, 2] if width == 3 else np.ones(nent)
    else:
        rows = cols = np.zeros(0, dtype=np.int64)
        vals = np.zeros(0)
    if sym != "general":
        off = rows != cols
        sign = 1.0 if sym == "symmetric" else -1.0
        rows, cols = np.r_[rows, cols[off]], np.r_[cols, rows[off]]
        vals = np.r_[vals, sign * vals[off]]
    if field == "pattern":
        return BinaryPattern.from_arrays(n, rows, cols)
    dense = np.zeros((n, n))
    np.add.at(dense, (rows - 1, cols - 1), vals)
    if as_pattern:
        return BinaryPattern.from_dense(dense)
    return dense


def _fmt_real(x: float) -> str:
    # shortest repr that round-trips exactly
    return repr(float(x))


def render_matrix_market(obj, comment: Optional[str] = None) -> str:
    """A pattern as ``coordinate pattern``, a dense array as ``array real``."""
    out = []
    if isinstance(obj, BinaryPattern):
        out.append("%%MatrixMarket matrix coordinate pattern general")
        if comment:
            out.append(f"% {comment}")
        out.append(f"{obj.size} {obj.size} {obj.nnz}")
        out.extend(f"{i} {j}" for i, j in zip(obj.rows.tolist(), obj.cols.tolist()))
    else:
        m = np.asarray(obj, dtype=float)
        if m.ndim != 2:
            raise DomainError("expected a 2-D array")
        out.append("%%MatrixMarket matrix array real general")
        if comment:
            out.append(f"% {comment}")
        out.append(f"{m.shape[0]} {m.shape[1]}")
        out.extend(_fmt_real(x) for x in m.ravel(order="F"))
    return "\n".join(out) + "\n"


def write_matrix_market(obj, path, comment: Optional[str] = None) -> None:
    Path(path).write_text(render_matrix_market(obj, comment), encoding="utf-8")


def write_coordinate_real(m, path) -> None:
    """Sparse ``coordinate real general`` output (nonzeros only)."""
    m = np.asarray(m, dtype=float)
    r, c = np.nonzero(m.T)
    # nonzero on the transpose walks column-major; swap back to (row, col)
    rows, cols = c + 1, r + 1
    out = ["%%MatrixMarket matrix coordinate real general", f"{m.shape[0]} {m.shape[1]} {rows.size}"]
    out.extend(f"{i} {j} {_fmt_real(m[i - 1, j - 1])}" for i, j in zip(rows.tolist(), cols.tolist()))
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")


def read_edge_list(path, n: Optional[int] = None) -> BinaryPattern:
    """Whitespace edge list, one ``u v`` (1-based) per line; ``#``/``%`` start comments."""
    rows, cols = [], []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line or line.startswith("%"):
            continue
        u, v = _int_tokens(line, lineno, 2)
        if u < 1 or v < 1:
            raise ParseError(f"vertex ids are 1-based, got {u} {v}", lineno)
        rows.append(u)
        cols.append(v)
    size = n if n is not None else max(rows + cols, default=1)
    return BinaryPattern.from_arrays(size, rows, cols)


# DOT


def render_dot(graph: DecompositionGraph) -> str:
    lines = [
        "digraph decomposition {",
        f"  // n = {graph.n}, {len(graph.branches)} branch(es)",
        "  node [shape=circle];",
    ]
    isolated = {v: bid for bid, v in graph.isolated}
    for v in graph.vertices:
        if v in isolated:
            bid = isolated[v]
            color = PALETTE[(bid - 1) % len(PALETTE)]
            lines.append(f'  {v} [label="{v}", xlabel="branch {bid}", color="{color}"];')
        else:
            lines.append(f'  {v} [label="{v}"];')
    for e in sorted(graph.edges, key=lambda e: (e.branch, e.position)):
        color = PALETTE[(e.branch - 1) % len(PALETTE)]
        lines.append(
            f'  {e.source} -> {e.target} [label="{e.weight} (branch {e.branch})", color="{color}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(graph: DecompositionGraph, path) -> None:
    Path(path).write_text(render_dot(graph), encoding="utf-8")


# SVG


@dataclass(frozen=True)
class SvgStyle:
    width: int = 800
    edge_color: str = "#333333"
    edge_opacity: float = 0.5
    vertex_color: str = "#1f4e79"
    directed: bool = False


def _num(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(layout: LayoutResult, segments: Sequence[Segment], style: SvgStyle = SvgStyle()) -> str:
    """Vertices as circles, edges as lines, self-loops as small ring paths.

    The y axis is flipped so the picture matches the complex plane.
    """
    x, y = layout.x, -layout.y
    rad = vertex_radius(layout.config)
    lo_x, hi_x = float(x.min()) - rad, float(x.max()) + rad
    lo_y, hi_y = float(y.min()) - rad, float(y.max()) + rad
    margin = 0.05 * max(hi_x - lo_x, hi_y - lo_y, rad)
    vb = (lo_x - margin, lo_y - margin, hi_x - lo_x + 2 * margin, hi_y - lo_y + 2 * margin)
    height = max(1, round(style.width * vb[3] / vb[2]))
    stroke_w = _num(rad / 4)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" height="{height}" '
        f'viewBox="{" ".join(_num(v) for v in vb)}">',
    ]
    marker = ""
    if style.directed:
        out.append(
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" '
            'markerWidth="6" markerHeight="6" orient="auto-start-reverse">'
            f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{style.edge_color}"/></marker></defs>'
        )
        marker = ' marker-end="url(#arrow)"'
    out.append(
        f'<g id="edges" stroke="{style.edge_color}" stroke-opacity="{_num(style.edge_opacity)}" '
        f'stroke-width="{stroke_w}" fill="none">'
    )
    for s in segments:
        (x1, y1), (x2, y2) = s.start, s.end
        if s.is_loop:
            # ring of radius rad tangent to the vertex, on its outer side
            d = f"M {_num(x1)} {_num(-y1)} a {_num(rad)} {_num(rad)} 0 1 1 0.000001 0"
            out.append(f'<path d="{d}"/>')
        else:
            out.append(
                f'<line x1="{_num(x1)}" y1="{_num(-y1)}" x2="{_num(x2)}" y2="{_num(-y2)}"{marker}/>'
            )
    out.append("</g>")
    out.append(f'<g id="vertices" fill="{style.vertex_color}">')
    for xi, yi in zip(x.tolist(), y.tolist()):
        out.append(f'<circle cx="{_num(xi)}" cy="{_num(yi)}" r="{_num(rad)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(layout: LayoutResult, segments: Sequence[Segment], style: SvgStyle, path) -> None:
    Path(path).write_text(render_svg(layout, segments, style), encoding="utf-8")


# JSON


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(report: dict, path) -> None:
    Path(path).write_text(dumps(report), encoding="utf-8")


def _pattern_json(p: BinaryPattern, entries: bool = True) -> dict:
    out = {"size": p.size, "nnz": p.nnz}
    if entries:
        out["entries"] = [list(c) for c in p.coordinates()]
    return out


def factorization_report(dec: Decomposition, verified: Optional[bool] = None) -> dict:
    a = dec.pattern
    branch_ids = {br: k for k, br in enumerate(dec.branches, start=1)}
    return {
        "schema": SCHEMA,
        "kind": "factorization",
        "n": a.size,
        "nnz": a.nnz,
        "pairs_tested": [list(p) for p in dec.pairs_tested],
        "restricted_pairs": dec.restricted,
        "length2": [
            {"pair": list(f.pair), "left_nnz": f.left.nnz, "right_nnz": f.right.nnz}
            for f in dec.length2
        ],
        "left_indices": dec.lefts,
        "branches": [
            {
                "id": k,
                "chain": list(br.chain),
                "weights": list(br.weights),
            }
            for br, k in branch_ids.items()
        ],
        "decompositions": [
            {
                "branch": branch_ids[d.branch],
                "sizes": list(d.sizes),
                "factors": [_pattern_json(f) for f in d.factors],
            }
            for d in dec.decompositions
        ],
        "prime": dec.is_prime,
        "maximal": dec.is_maximal,
        "primality_guaranteed": dec.primality_guaranteed,
        "verified": verified,
    }


def layout_report(layout: LayoutResult, a: Optional[BinaryPattern] = None) -> dict:
    cfg = layout.config
    out = {
        "schema": SCHEMA,
        "kind": "layout",
        "sizes": list(cfg.sizes),
        "radii": list(cfg.radii),
        "shift": cfg.shift,
        "vertices": [
            {"index": u, "multi_index": list(multi_index(u, cfg.sizes)), "x": float(p.real), "y": float(p.imag)}
            for u, p in enumerate(layout.points.tolist(), start=1)
        ],
    }
    if a is not None:
        out["edges"] = [list(c) for c in a.coordinates()]
    return out


def nkp_report(result, norm: float, factor_paths: Sequence[str] = ()) -> dict:
    rel = result.frobenius_error / norm if norm else math.nan
    return {
        "schema": SCHEMA,
        "kind": "nkp",
        "sizes": list(result.sizes),
        "sigma": result.sigma,
        "sigmas": list(result.sigmas),
        "frobenius_error": result.frobenius_error,
        "relative_error": rel,
        "norm": norm,
        "method": result.method,
        "factor_files": list(factor_paths),
    }

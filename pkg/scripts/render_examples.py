"""Write the worked-example artefacts: DOT graphs, layout SVG, JSON reports.

    python3 scripts/render_examples.py [--out examples_out]
"""

import argparse
from pathlib import Path

from kronfact import generators as gen
from kronfact.branches import decompose
from kronfact.formats import (
    SvgStyle,
    factorization_report,
    layout_report,
    write_dot,
    write_json,
    write_matrix_market,
    write_svg,
)
from kronfact.layout import LayoutConfig, edge_segments, layout_positions
from kronfact.pattern import BinaryPattern


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="examples_out")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    cases = {
        "example1": gen.example1(),
        "example2": gen.example2(),
        "identity24": BinaryPattern.identity(24),
        "example5": gen.example5(),
        "gate": gen.gate_pattern(),
    }
    for name, a in cases.items():
        dec = decompose(a)
        write_matrix_market(a, out / f"{name}.mtx")
        write_dot(dec.graph, out / f"{name}.dot")
        write_json(factorization_report(dec), out / f"{name}.json")
        print(f"{name}: n={a.size}, decompositions {[d.sizes for d in dec.decompositions]}")

    a = gen.graph_adjacency()
    lay = layout_positions(LayoutConfig((4, 3, 2)))
    write_svg(lay, edge_segments(a, lay), SvgStyle(), out / "graph432.svg")
    write_json(layout_report(lay, a), out / "graph432.json")
    lay = layout_positions(LayoutConfig((4, 4, 4)))
    write_svg(lay, edge_segments(gen.arrowhead(3), lay), SvgStyle(edge_opacity=0.2), out / "arrowhead.svg")
    print(f"wrote {len(list(out.iterdir()))} files to {out}/")


if __name__ == "__main__":
    main()

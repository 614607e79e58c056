"""Regenerate the bundled filtration and diagram files in src/gpd/data/.

The torus is the classical 7-vertex triangulation (faces {i, i+1, i+3}
and {i, i+2, i+3} mod 7), filtered by dimension.  The Klein bottle is a
3x3 grid quotient with a flip on one identification, filtered in three
stages: vertices, then a spanning tree of the edges, then everything
else — this staging puts the whole H_1 = Z + Z/2 group in a single
diagram cell.  Every claimed homology group is recomputed on the spot.
"""

import itertools
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from gpd.diagram import type_A_diagram  # noqa: E402
from gpd.homology import parse_filtration, persistent_module  # noqa: E402
from gpd.serialize import diagram_from_json, diagram_to_json  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parent.parent / "src" / "gpd" / "data"


def edges_of(tris):
    return sorted({e for t in tris for e in itertools.combinations(t, 2)})


def torus_lines():
    tris = sorted({tuple(sorted((i % 7, (i + 1) % 7, (i + 3) % 7))) for i in range(7)} |
                  {tuple(sorted((i % 7, (i + 2) % 7, (i + 3) % 7))) for i in range(7)})
    lines = ["# 7-vertex torus, filtered by dimension"]
    lines += [f"{v} : 0" for v in range(7)]
    lines += [f"{a} {b} : 1" for a, b in edges_of(tris)]
    lines += [f"{' '.join(map(str, t))} : 2" for t in tris]
    return "\n".join(lines) + "\n"


def klein_lines():
    ni = nj = 3

    def v(i, j):
        if i >= ni or i < 0:
            j = -j
        return (i % ni) * nj + (j % nj)

    tris = set()
    for i in range(ni):
        for j in range(nj):
            tris.add(tuple(sorted((v(i, j), v(i + 1, j), v(i + 1, j + 1)))))
            tris.add(tuple(sorted((v(i, j), v(i, j + 1), v(i + 1, j + 1)))))
    tris = sorted(tris)
    edges = edges_of(tris)
    # spanning tree by BFS from vertex 0
    adj = {v_: [] for v_ in range(ni * nj)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen, tree, frontier = {0}, [], [0]
    while frontier:
        cur = frontier.pop(0)
        for nxt in sorted(adj[cur]):
            if nxt not in seen:
                seen.add(nxt)
                tree.append(tuple(sorted((cur, nxt))))
                frontier.append(nxt)
    tree = set(tree)
    lines = ["# 9-vertex Klein bottle (3x3 grid quotient with a flip),",
             "# staged: vertices, spanning tree, then the rest"]
    lines += [f"{w} : 0" for w in range(ni * nj)]
    lines += [f"{a} {b} : 1" for a, b in edges if (a, b) in tree]
    lines += [f"{a} {b} : 2" for a, b in edges if (a, b) not in tree]
    lines += [f"{' '.join(map(str, t))} : 2" for t in tris]
    return "\n".join(lines) + "\n"


def triangle_lines():
    return ("# hollow triangle: vertices, then the boundary edges\n"
            "0 : 0\n1 : 0\n2 : 0\n0 1 : 1\n1 2 : 1\n0 2 : 1\n")


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    torus = torus_lines()
    klein = klein_lines()
    tri = triangle_lines()

    K = parse_filtration(torus)
    assert persistent_module(K, 1, "Z").objects[-1].data == (2, ())
    assert persistent_module(K, 2, "Z").objects[-1].data == (1, ())
    K = parse_filtration(klein)
    assert persistent_module(K, 1, "Z").objects[-1].data == (1, (2,))
    assert persistent_module(K, 2, "Z").objects[-1].data == (0, ())
    YA = type_A_diagram(persistent_module(K, 1, "Z"))
    torsion_cells = [(k, v) for k, v in YA.cells
                     if any(not isinstance(d, str) and d[0] == "t" for d, _ in v.coeffs)]
    assert len(torsion_cells) == 1, torsion_cells

    (DATA / "torus.flt").write_text(torus)
    (DATA / "klein_bottle.flt").write_text(klein)
    (DATA / "triangle.flt").write_text(tri)

    sample_a = """{"grid": ["0", "2"], "cells": [{"i": 1, "j_or_inf": 2, "label": {"dim": 1}}],
"group": {"tag": "B", "category": "vect", "field": "Q", "role": "diagram"}}"""
    sample_b = sample_a.replace('"2"', '"3"')
    for name, text in [("sample_a.json", sample_a), ("sample_b.json", sample_b)]:
        canonical = diagram_to_json(diagram_from_json(text))
        assert diagram_to_json(diagram_from_json(canonical)) == canonical
        (DATA / name).write_text(canonical)
    print("wrote", sorted(p.name for p in DATA.iterdir()))


if __name__ == "__main__":
    main()

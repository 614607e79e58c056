"""Diagram serialization: canonical JSON, TSV tables, and SVG plots.

All rationals travel as "p/q" strings (or "p" when integral) so no
precision is lost.  JSON output is canonical — sorted cells, fixed key
order, one trailing newline — which makes emit -> parse -> emit the
identity on bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .categories import ab, finab, finset, repn, vect
from .diagram import DiagramGrid
from .exact import QQ, PrimeField, RationalField
from .grothendieck import GroupElem, _make_elem


class SerializeError(ValueError):
    pass


def rat_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _field_token(field) -> str:
    if isinstance(field, RationalField):
        return "Q"
    if isinstance(field, PrimeField):
        return f"F{field.p}"
    raise SerializeError(f"unknown field {field!r}")


def _field_from_token(tok: str):
    if tok == "Q":
        return QQ
    if tok.startswith("F"):
        return PrimeField(int(tok[1:]))
    raise SerializeError(f"unknown field token {tok!r}")


def _cat_to_json(cat) -> dict:
    out = {"category": cat.kind}
    out["field"] = _field_token(cat.field) if cat.field is not None else None
    return out


def _cat_from_json(d: dict):
    kind = d["category"]
    field = _field_from_token(d["field"]) if d.get("field") else None
    makers = {"finset": lambda: finset(), "ab": lambda: ab(), "finab": lambda: finab(),
              "vect": lambda: vect(field), "repn": lambda: repn(field)}
    if kind not in makers:
        raise SerializeError(f"unknown category {kind!r}")
    return makers[kind]()


def _scalar_str(x) -> str:
    return rat_str(x) if isinstance(x, Fraction) else str(x)


def _scalar_from_str(s: str, field):
    return Fraction(s) if isinstance(field, RationalField) else int(s)


def _label_key_str(group: str, cat, key) -> str:
    if group == "A":
        if isinstance(key, str):
            return key  # 'pt', 'line', 'Z'
        if key[0] == "t":
            return f"t:{key[1]}:{key[2]}"
        return f"j:{_scalar_str(key[1])}:{key[2]}"
    if isinstance(key, str):
        return key  # 'dim', 'rank'
    if isinstance(key, int) and cat.kind == "finab":
        return f"p:{key}"
    return f"ev:{_scalar_str(key)}"


def _label_key_parse(group: str, cat, tok: str):
    if group == "A":
        if tok in ("pt", "line", "Z"):
            return tok
        head, a, b = tok.split(":")
        if head == "t":
            return ("t", int(a), int(b))
        if head == "j":
            return ("j", _scalar_from_str(a, cat.field), int(b))
    else:
        if tok in ("dim", "rank"):
            return tok
        head, _, rest = tok.partition(":")
        if head == "p":
            return int(rest)
        if head == "ev":
            return _scalar_from_str(rest, cat.field)
    raise SerializeError(f"bad label key {tok!r}")


def diagram_to_json(d: DiagramGrid) -> str:
    cells = []
    n = d.n
    for (i, j), val in d.cells:
        label = {_label_key_str(d.group, d.cat, k): v for k, v in val.coeffs}
        cells.append({"i": i, "j_or_inf": "inf" if j == n + 1 else j,
                      "label": dict(sorted(label.items()))})
    doc = {
        "grid": [rat_str(t) for t in d.grid],
        "cells": cells,
        "group": {"tag": d.group, **_cat_to_json(d.cat), "role": d.role},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def diagram_from_json(text: str) -> DiagramGrid:
    try:
        doc = json.loads(text)
        group = doc["group"]["tag"]
        cat = _cat_from_json(doc["group"])
        role = doc["group"].get("role", "diagram")
        grid = tuple(Fraction(t) for t in doc["grid"])
        n = len(grid)
        cells = {}
        for c in doc["cells"]:
            j = n + 1 if c["j_or_inf"] == "inf" else int(c["j_or_inf"])
            coeffs = {_label_key_parse(group, cat, k): int(v) for k, v in c["label"].items()}
            cells[(int(c["i"]), j)] = _make_elem(group, cat, coeffs)
        return DiagramGrid.make(group, cat, grid, cells, role=role)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializeError(f"bad diagram file: {exc}") from exc


def label_text(val: GroupElem, cat) -> str:
    """Human-readable signed label, e.g. '[Z] - [Z/4]' or '2[line]'."""
    parts = []
    for key, c in val.coeffs:
        name = _pretty_key(val.group, cat, key)
        mag = "" if abs(c) == 1 else str(abs(c))
        term = f"{mag}[{name}]"
        parts.append(("- " if c < 0 else "+ " if parts else "") + term)
    return " ".join(parts) if parts else "0"


def _pretty_key(group: str, cat, key) -> str:
    if group == "A":
        if key == "pt":
            return "pt"
        if key == "line":
            return "k"
        if key == "Z":
            return "Z"
        if key[0] == "t":
            p, m = key[1], key[2]
            return f"Z/{p ** m}"
        return f"J({_scalar_str(key[1])},{key[2]})"
    if isinstance(key, str):
        return key
    if isinstance(key, int) and cat.kind == "finab":
        return f"len_{key}"
    return f"ev {_scalar_str(key)}"


def diagram_to_tsv(d: DiagramGrid) -> str:
    lines = ["i\tj\tbirth\tdeath\tlabel"]
    n = d.n
    for (i, j), val in d.cells:
        death = "inf" if j == n + 1 else rat_str(d.grid[j - 1])
        jtxt = "inf" if j == n + 1 else str(j)
        lines.append(f"{i}\t{jtxt}\t{rat_str(d.grid[i - 1])}\t{death}\t{label_text(val, d.cat)}")
    return "\n".join(lines) + "\n"


def diagram_to_svg(d: DiagramGrid) -> str:
    """Deterministic scatter plot: diagonal, grid lines, an infinity row
    above the finite range, and a signed text label at each cell."""
    size, margin = 420, 50
    span = size - 2 * margin
    grid = d.grid
    if grid:
        lo, hi = grid[0], grid[-1]
        width = (hi - lo) or Fraction(1)
    else:
        lo, width = Fraction(0), Fraction(1)

    def sx(v):
        return float(margin + span * (v - lo) / width)

    inf_y = margin // 2

    def sy(v):
        return float(size - margin - span * (v - lo) / width)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>',
           f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}" y2="{margin}" '
           'stroke="#999" stroke-dasharray="4 3"/>',
           f'<line x1="{margin}" y1="{inf_y}" x2="{size - margin}" y2="{inf_y}" '
           'stroke="#ccc"/>',
           f'<text x="{margin - 35}" y="{inf_y + 4}" font-size="12">inf</text>']
    for t in grid:
        out.append(f'<line x1="{sx(t):.2f}" y1="{margin}" x2="{sx(t):.2f}" '
                   f'y2="{size - margin}" stroke="#eee"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{size - margin + 15}" font-size="10" '
                   f'text-anchor="middle">{rat_str(t)}</text>')
        out.append(f'<text x="{margin - 8}" y="{sy(t):.2f}" font-size="10" '
                   f'text-anchor="end">{rat_str(t)}</text>')
    n = d.n
    for (i, j), val in d.cells:
        x = sx(grid[i - 1])
        y = inf_y if j == n + 1 else sy(grid[j - 1])
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="11">'
                   f'{label_text(val, d.cat)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

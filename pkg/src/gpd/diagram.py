"""Generalized persistence diagrams on a rational grid.

A diagram assigns a Grothendieck group element to every half-open grid
interval [s_i, s_j) with 1 <= i < j <= n + 1, where column j = n + 1
encodes the unbounded interval [s_i, infinity).  The same container
holds both the 'constructible' function X (interval -> class of the
image) and its Moebius inversion Y (the diagram proper); the two are
related by an exact inclusion-exclusion bijection implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .categories import AB, FINAB, FINSET, REPN, VECT, ab_relations, obj_ngens
from .exact import (
    column_space_basis,
    field_kernel,
    field_rank,
    field_solve,
    jordan_type,
    lattice_basis,
    lattice_intersection,
    preimage_lattice,
    quotient_invariants,
)
from .grothendieck import GroupElem, add, b_class, leq, sub, zero_elem
from .categories import iso_from_invariants
from .matrix import Mat


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class DiagramGrid:
    """Grid-indexed function into a Grothendieck group.

    role is 'constructible' for cumulative interval data and 'diagram'
    for its Moebius inversion; cells maps (i, j) pairs to nonzero group
    elements, with j = len(grid) + 1 standing for infinity.
    """

    group: str  # 'A' or 'B'
    cat: object
    grid: tuple  # exact rationals, strictly increasing
    cells: tuple  # sorted tuple of ((i, j), GroupElem)
    role: str

    @staticmethod
    def make(group, cat, grid, cells: dict, role) -> "DiagramGrid":
        grid = tuple(Fraction(v) for v in grid)
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise DiagramError("grid values must be strictly increasing")
        n = len(grid)
        items = []
        for (i, j), val in cells.items():
            if not 1 <= i < j <= n + 1:
                raise DiagramError(f"cell ({i}, {j}) is outside the grid")
            if val.group != group or val.cat != cat:
                raise DiagramError("cell value lives in the wrong group")
            if not val.is_zero():
                items.append(((i, j), val))
        if role not in ("constructible", "diagram"):
            raise DiagramError(f"unknown role {role!r}")
        return DiagramGrid(group, cat, grid, tuple(sorted(items, key=lambda it: it[0])), role)

    @property
    def n(self) -> int:
        return len(self.grid)

    def get(self, i: int, j: int) -> GroupElem:
        for key, val in self.cells:
            if key == (i, j):
                return val
        return zero_elem(self.group, self.cat)

    def as_dict(self) -> dict:
        return dict(self.cells)


def _zero(d: DiagramGrid) -> GroupElem:
    return zero_elem(d.group, d.cat)


def mobius_invert(X: DiagramGrid) -> DiagramGrid:
    """Inclusion-exclusion over the corner order of half-open intervals.

    Rows below the first grid value contribute the zero object, so the
    i = 0 terms vanish and the alternating sum needs no padding data.
    """
    if X.role != "constructible":
        raise DiagramError("inversion expects cumulative interval data")
    n = X.n
    xd = X.as_dict()
    z = _zero(X)

    def xv(i, j):
        if i < 1 or j > n + 1:
            return z
        return xd.get((i, j), z)

    cells = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            if j == n + 1:
                val = sub(xv(i, j), xv(i - 1, j))
            else:
                val = add(sub(xv(i, j), xv(i, j + 1)),
                          sub(xv(i - 1, j + 1), xv(i - 1, j)))
            cells[(i, j)] = val
    return DiagramGrid.make(X.group, X.cat, X.grid, cells, role="diagram")


def cumulate(Y: DiagramGrid) -> DiagramGrid:
    """Inverse of mobius_invert: sum the diagram over the upper-left cone."""
    if Y.role != "diagram":
        raise DiagramError("cumulation expects a diagram")
    n = Y.n
    cells = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            cells[(i, j)] = cumulative_at_cell(Y, i, j)
    return DiagramGrid.make(Y.group, Y.cat, Y.grid, cells, role="constructible")


def cumulative_at_cell(Y: DiagramGrid, i: int, j: int) -> GroupElem:
    """Sum of Y over cells (h, k) with h <= i and k >= j."""
    total = _zero(Y)
    for (h, k), val in Y.cells:
        if h <= i and k >= j:
            total = add(total, val)
    return total


def cumulative_at(Y: DiagramGrid, p, q=None) -> GroupElem:
    """Cumulative value on the interval [p, q), q None meaning infinity.

    The sum runs over diagram cells [s_h, s_k) containing [p, q), which
    snaps arbitrary rational endpoints onto the grid: h is largest with
    s_h <= p and k smallest with s_k >= q.  Returns zero when p lies
    below the grid.
    """
    from bisect import bisect_left, bisect_right

    n = Y.n
    i = bisect_right(Y.grid, p)
    if i == 0:
        return _zero(Y)
    if q is None:
        j = n + 1
    else:
        if q <= p:
            raise DiagramError("empty interval")
        j = bisect_left(Y.grid, q) + 1
    total = _zero(Y)
    for (h, k), val in Y.cells:
        if h <= i and k >= j:
            total = add(total, val)
    return total


def type_A_diagram(F) -> DiagramGrid:
    from .pmodule import dX_A

    return mobius_invert(dX_A(F))


def type_B_diagram(F) -> DiagramGrid:
    from .pmodule import dX_B

    return mobius_invert(dX_B(F))


def diagram_add(d1: DiagramGrid, d2: DiagramGrid) -> DiagramGrid:
    if (d1.group, d1.cat, d1.grid, d1.role) != (d2.group, d2.cat, d2.grid, d2.role):
        raise DiagramError("diagrams live on different grids or groups")
    cells = d1.as_dict()
    for key, val in d2.cells:
        cells[key] = add(cells[key], val) if key in cells else val
    return DiagramGrid.make(d1.group, d1.cat, d1.grid, cells, role=d1.role)


def diagram_leq(d1: DiagramGrid, d2: DiagramGrid) -> bool:
    """Existence of a morphism d1 -> d2 of diagrams.

    There is one exactly when, over every support cell I of d1, the
    cumulative value of d1 precedes that of d2 in the group order.  The
    grids need not coincide: cumulative values snap arbitrary rational
    endpoints onto each diagram's own grid.
    """
    if (d1.group, d1.cat, d1.role) != (d2.group, d2.cat, d2.role):
        raise DiagramError("diagrams live in different groups")
    n = d1.n
    for (i, j), _ in d1.cells:
        p = d1.grid[i - 1]
        q = None if j == n + 1 else d1.grid[j - 1]
        if not leq(cumulative_at_cell(d1, i, j), cumulative_at(d2, p, q)):
            return False
    return True


# ---------------------------------------------------------------------------
# Positivity of quotient-group diagrams via explicit subquotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PositivityReport:
    ok: bool
    negative_cells: tuple  # cells of Y with some negative coefficient
    witnesses: tuple  # sorted ((i, j), GroupElem) from subquotients
    matches: bool  # witnesses reproduce Y exactly


def positivity_check(F, Y: DiagramGrid | None = None) -> PositivityReport:
    """Check Y_B(F) >= 0 and recompute each cell as a concrete subquotient.

    The cell [s_i, s_j) is realized inside the object just before s_j as
    (im F(s_i) cap ker) / (im F(s_{i-1}) cap ker), with ker the kernel
    of the next connecting morphism (the whole object for j = n + 1).
    The class of that subquotient in the quotient group equals the
    inclusion-exclusion value, which certifies nonnegativity cell by
    cell.
    """
    from .pmodule import composite_mor

    if Y is None:
        Y = type_B_diagram(F)
    negative = tuple(k for k, v in Y.cells if any(c < 0 for _, c in v.coeffs))

    witnesses = {}
    n = F.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            b = n if j == n + 1 else j - 1
            m1 = composite_mor(F, i, b)
            m0 = composite_mor(F, i - 1, b)
            nxt = F.morphisms[b] if j <= n else None
            val = _subquotient_class(F.cat, F.objects[b], m1, m0, nxt)
            if not val.is_zero():
                witnesses[(i, j)] = val

    matches = dict(Y.cells) == witnesses
    return PositivityReport(ok=not negative and matches,
                            negative_cells=negative,
                            witnesses=tuple(sorted(witnesses.items())),
                            matches=matches)


def _subquotient_class(cat, obj, m1, m0, nxt) -> GroupElem:
    kind = cat.kind
    if kind == FINSET:
        raise DiagramError("finite sets have no quotient-group diagram")
    if kind == VECT:
        Fld = cat.field
        A1, A0 = m1.payload, m0.payload
        if nxt is None:
            val = field_rank(Fld, A1) - field_rank(Fld, A0)
        else:
            K = field_kernel(Fld, nxt.payload)
            val = _dim_intersection(Fld, A1, K) - _dim_intersection(Fld, A0, K)
        return GroupElem("B", cat, (("dim", val),) if val else ())
    if kind in (AB, FINAB):
        R = ab_relations(obj)
        L1 = lattice_basis(m1.payload.hstack(R))
        L0 = lattice_basis(m0.payload.hstack(R))
        if nxt is not None:
            Kl = preimage_lattice(nxt.payload, ab_relations(nxt.tgt))
            L1 = lattice_intersection(L1, Kl)
            L0 = lattice_intersection(L0, Kl)
        rank, invs = quotient_invariants(L1, L0)
        return b_class(iso_from_invariants(cat, rank, invs))
    if kind == REPN:
        Fld = cat.field
        A = obj.data  # the endomorphism on the ambient object
        if nxt is None:
            W1 = column_space_basis(Fld, m1.payload)
            W0 = column_space_basis(Fld, m0.payload)
        else:
            K = field_kernel(Fld, nxt.payload)
            W1 = _intersection_basis(Fld, m1.payload, K)
            W0 = _intersection_basis(Fld, m0.payload, K)
        counter: dict = {}
        for lam, m in jordan_type(_restrict_endo(Fld, A, W1), Fld):
            counter[lam] = counter.get(lam, 0) + m
        for lam, m in jordan_type(_restrict_endo(Fld, A, W0), Fld):
            counter[lam] = counter.get(lam, 0) - m
        items = tuple(sorted((k, v) for k, v in counter.items() if v))
        return GroupElem("B", cat, items)
    raise DiagramError(f"unknown category kind {kind!r}")


def _intersection_basis(Fld, U: Mat, W: Mat) -> Mat:
    """Basis of (column space of U) cap (column space of W)."""
    U = column_space_basis(Fld, U)
    W = column_space_basis(Fld, W)
    if U.cols == 0 or W.cols == 0:
        return Mat.zero(U.rows, 0)
    K = field_kernel(Fld, U.hstack(W.scale(-1)))
    coords = K.take_rows(range(U.cols))
    return column_space_basis(Fld, U @ coords)


def _dim_intersection(Fld, U: Mat, W: Mat) -> int:
    ru, rw = field_rank(Fld, U), field_rank(Fld, W)
    if ru == 0 or rw == 0:
        return 0
    return ru + rw - field_rank(Fld, U.hstack(W))


def _restrict_endo(Fld, A: Mat, W: Mat) -> Mat:
    """Matrix of A on the A-invariant subspace spanned by the columns of W."""
    if W.cols == 0:
        return Mat.zero(0, 0)
    C = field_solve(Fld, W, A @ W)
    if C is None:
        raise DiagramError("subspace is not invariant under the endomorphism")
    return C

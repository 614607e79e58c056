"""Diagrams: inclusion-exclusion inversion, cumulation, order, positivity."""

import random
from fractions import Fraction as Fr

import pytest

from gpd.categories import ab, finab, make_mor, make_obj, repn, vect
from gpd.diagram import (
    DiagramError,
    DiagramGrid,
    cumulate,
    cumulative_at,
    diagram_add,
    diagram_leq,
    mobius_invert,
    positivity_check,
    type_A_diagram,
    type_B_diagram,
)
from gpd.exact import QQ, PrimeField
from gpd.grothendieck import GroupElem, zero_elem
from gpd.matrix import Mat
from gpd.pmodule import ConstructibleModule, dX_A, dX_B, module_direct_sum

from generators import random_interval_sum_module, random_module
from oracles import classical_diagram_gf2

GF2 = PrimeField(2)


def elem(group, cat, **coeffs):
    items = tuple(sorted(coeffs.items()))
    return GroupElem(group, cat, tuple((k, v) for k, v in items if v))


def random_B_diagram(cat, rng, nvals=4):
    grid = tuple(Fr(v) for v in sorted(rng.sample(range(0, 12), nvals)))
    cells = {}
    for i in range(1, nvals + 1):
        for j in range(i + 1, nvals + 2):
            if rng.random() < 0.6:
                cells[(i, j)] = elem("B", cat, dim=rng.randint(-2, 3))
    return DiagramGrid.make("B", cat, grid, cells, role="diagram")


def test_round_trip_inversion():
    rng = random.Random(41)
    cat = vect(QQ)
    for _ in range(30):
        Y = random_B_diagram(cat, rng, nvals=rng.randint(1, 5))
        X = cumulate(Y)
        assert mobius_invert(X).cells == Y.cells
    # and the other direction, starting from cumulative data
    for _ in range(10):
        Y0 = random_B_diagram(cat, rng)
        X = cumulate(Y0)
        assert cumulate(mobius_invert(X)).cells == X.cells


def test_roles_are_enforced():
    cat = vect(QQ)
    Y = random_B_diagram(cat, random.Random(2))
    with pytest.raises(DiagramError):
        mobius_invert(Y)
    with pytest.raises(DiagramError):
        cumulate(cumulate(Y))


def test_diagram_recovers_interval_multiplicities():
    rng = random.Random(43)
    for _ in range(15):
        F, bars = random_interval_sum_module(GF2, rng, nvals=4, nints=rng.randint(1, 4))
        Y = type_A_diagram(F)
        got = {k: v.mult() for k, v in Y.cells}
        assert got == {k: {"line": m} for k, m in bars.items()}


def test_diagram_matches_quadrant_count_oracle():
    rng = random.Random(47)
    cat = vect(GF2)
    for _ in range(15):
        F = random_module(cat, rng, max_values=4, max_size=3)
        Y = type_A_diagram(F)
        dims = [o.data for o in F.objects[1:]]
        maps = [m.payload.to_lists() for m in F.morphisms[1:]]
        expected = classical_diagram_gf2(dims, maps)
        got = {k: v.mult()["line"] for k, v in Y.cells}
        assert got == expected


def test_diagram_additive_under_direct_sum():
    rng = random.Random(53)
    for cat in [vect(QQ), finab(), ab(), repn(QQ)]:
        for _ in range(5):
            # share the grid so the diagrams are directly comparable
            F = random_module(cat, rng, max_values=3)
            G = random_module(cat, rng, max_values=3)
            S = module_direct_sum(F, G)
            from gpd.pmodule import common_refinement
            Fr_, Gr_ = common_refinement(F, G)
            assert type_A_diagram(S).cells == \
                diagram_add(type_A_diagram(Fr_), type_A_diagram(Gr_)).cells
            assert type_B_diagram(S).cells == \
                diagram_add(type_B_diagram(Fr_), type_B_diagram(Gr_)).cells


def test_cumulative_at_snaps_rational_endpoints():
    F, bars = random_interval_sum_module(GF2, random.Random(59), nvals=3, nints=2)
    Y = type_A_diagram(F)
    X = dX_A(F)
    n = F.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            p = F.values[i - 1]
            q = None if j == n + 1 else F.values[j - 1]
            assert cumulative_at(Y, p, q) == X.get(i, j)
    # below the grid everything vanishes
    assert cumulative_at(Y, F.values[0] - 1).is_zero()
    # endpoints strictly inside a segment snap to the surrounding cell
    mid = (F.values[0] + F.values[1]) / 2
    assert cumulative_at(Y, mid, None) == X.get(1, n + 1)


def test_quotient_group_diagram_positive_where_split_diagram_is_not():
    """e -> Z/4 -> Z/2 with the quotient map: the split-group diagram
    has a negative cell, the quotient-group diagram does not."""
    cat = finab()
    e = make_obj(cat, (0, ()))
    z4 = make_obj(cat, (0, (4,)))
    z2 = make_obj(cat, (0, (2,)))
    F = ConstructibleModule(
        cat, (Fr(0), Fr(1)),
        (e, z4, z2),
        (make_mor(e, z4, Mat.zero(1, 0)), make_mor(z4, z2, Mat.from_rows([[1]], ncols=1))))
    YA = type_A_diagram(F)
    assert any(c < 0 for _, v in YA.cells for _, c in v.coeffs)
    YB = type_B_diagram(F)
    assert all(c >= 0 for _, v in YB.cells for _, c in v.coeffs)
    report = positivity_check(F, YB)
    assert report.ok


@pytest.mark.parametrize("cat", [vect(QQ), vect(GF2), ab(), finab(), repn(QQ), repn(PrimeField(5))],
                         ids=lambda c: f"{c.kind}-{getattr(c.field, 'name', '')}")
def test_positivity_with_subquotient_witnesses(cat):
    rng = random.Random(61)
    for _ in range(8):
        F = random_module(cat, rng, max_values=3, max_size=3)
        report = positivity_check(F)
        assert report.matches, f"witnesses disagree for {F}"
        assert report.ok
        assert report.negative_cells == ()


def test_diagram_leq_is_cumulative_comparison():
    cat = vect(QQ)
    z = zero_elem("B", cat)
    one = elem("B", cat, dim=1)
    lo = DiagramGrid.make("B", cat, (Fr(0), Fr(2)), {(1, 2): one}, role="diagram")
    hi = DiagramGrid.make("B", cat, (Fr(0), Fr(3)), {(1, 2): one}, role="diagram")
    # {[0,2): 1} -> {[0,3): 1}: the longer bar dominates over [0,2)
    assert diagram_leq(lo, hi)
    # {[0,3): 1} -> {[0,2): 1}: nothing in lo covers [0,3)
    assert not diagram_leq(hi, lo)
    assert diagram_leq(lo, lo)
    assert lo.get(1, 3) == z

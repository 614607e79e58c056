"""Interval growth, erosion of diagrams, and the erosion distance.

Eroding a diagram by eps >= 0 precomposes it with interval growth
[p, q) -> [p - eps, q + eps): every cell moves toward the diagonal by
eps on each side and disappears once its width drops to zero.  The
erosion distance between two diagrams is the least eps at which eroded
morphisms exist in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import DiagramError, DiagramGrid, cumulative_at, cumulative_at_cell
from .grothendieck import leq


def erode(Y: DiagramGrid, eps) -> DiagramGrid:
    """Precompose Y with interval growth by eps.

    The eroded diagram's value at [p, q) is Y([p - eps, q + eps)), so
    its support sits at the shrunken cells [t_i + eps, t_j - eps);
    cells of width at most 2 * eps vanish.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise DiagramError("erosion needs eps >= 0")
    if eps == 0:
        return Y
    n = Y.n
    grid = sorted({t - eps for t in Y.grid} | {t + eps for t in Y.grid})
    index = {t: k + 1 for k, t in enumerate(grid)}
    cells = {}
    for (i, j), val in Y.cells:
        p = Y.grid[i - 1] + eps
        if j == n + 1:
            cells[(index[p], len(grid) + 1)] = val
        else:
            q = Y.grid[j - 1] - eps
            if q > p:
                cells[(index[p], index[q])] = val
    return DiagramGrid.make(Y.group, Y.cat, tuple(grid), cells, role=Y.role)


def _eroded_leq(Ye: DiagramGrid, eps, Yt: DiagramGrid):
    """Morphism erode(Ye, eps) -> Yt, reported as (ok, failing interval).

    Cumulative values of the eroded diagram are read off directly: at
    the shrunken cell [t_i + eps, t_j - eps) they equal the cumulative
    value of Ye at [t_i, t_j), so no re-inversion is needed.
    """
    n = Ye.n
    for (i, j), _ in Ye.cells:
        p = Ye.grid[i - 1] + eps
        if j == n + 1:
            q = None
        else:
            q = Ye.grid[j - 1] - eps
            if q <= p:
                continue  # the cell has disappeared into the diagonal
        if not leq(cumulative_at_cell(Ye, i, j), cumulative_at(Yt, p, q)):
            return False, (p, q)
    return True, None


def erosion_exists(Y1: DiagramGrid, Y2: DiagramGrid, eps) -> bool:
    """Whether eroded morphisms exist in both directions at eps."""
    ok, _, _ = erosion_witness(Y1, Y2, eps)
    return ok


def erosion_witness(Y1: DiagramGrid, Y2: DiagramGrid, eps):
    """(ok, failing direction, failing interval) of the two-sided check."""
    if (Y1.group, Y1.cat, Y1.role) != (Y2.group, Y2.cat, Y2.role):
        raise DiagramError("erosion compares diagrams in the same group")
    eps = Fraction(eps)
    if eps < 0:
        raise DiagramError("erosion needs eps >= 0")
    ok, cell = _eroded_leq(Y2, eps, Y1)
    if not ok:
        return False, "2->1", cell
    ok, cell = _eroded_leq(Y1, eps, Y2)
    if not ok:
        return False, "1->2", cell
    return True, None, None


def erosion_candidates(Y1: DiagramGrid, Y2: DiagramGrid) -> tuple:
    """Ascending eps values at which the two-sided predicate can change.

    Pairwise differences of the combined grids (with one padding value
    past the maximum) catch every endpoint crossing, half-differences
    catch cells vanishing into the diagonal, and midpoints of
    consecutive values catch open-interval behavior where endpoint
    inclusion flips asymmetrically.
    """
    T = sorted(set(Y1.grid) | set(Y2.grid))
    if not T:
        return (Fraction(0),)
    T = T + [T[-1] + 1]
    base = {Fraction(0)}
    for a in T:
        for b in T:
            if a < b:
                base.add(b - a)
                base.add((b - a) / 2)
    cands = sorted(base)
    mids = [(x + y) / 2 for x, y in zip(cands, cands[1:])]
    return tuple(sorted(set(cands) | set(mids)))


@dataclass(frozen=True)
class ErosionReport:
    """Outcome of an erosion-distance scan.

    distance is None for infinity.  table lists every evaluated
    candidate as (eps, ok); failures records, for each failing eps, the
    direction ('1->2' or '2->1') and the interval where the cumulative
    comparison broke.
    """

    distance: Fraction | None
    table: tuple
    failures: tuple

    @property
    def is_infinite(self) -> bool:
        return self.distance is None


def erosion_distance(Y1: DiagramGrid, Y2: DiagramGrid) -> ErosionReport:
    """Least candidate eps at which eroded morphisms exist both ways.

    Candidates are evaluated in ascending order with no monotonicity
    assumption; the first success is therefore the least one.  If none
    succeeds the distance is infinite.
    """
    table = []
    failures = []
    distance = None
    for eps in erosion_candidates(Y1, Y2):
        ok, direction, cell = erosion_witness(Y1, Y2, eps)
        table.append((eps, ok))
        if ok:
            distance = eps
            break
        failures.append((eps, direction, cell))
    return ErosionReport(distance=distance, table=tuple(table), failures=tuple(failures))

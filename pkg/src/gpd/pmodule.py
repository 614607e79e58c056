"""Constructible persistence modules and interleavings.

A module is stored discretely: strictly increasing rational critical
values s_1 < ... < s_n, one object per segment (the object before s_1 is
always the monoidal identity), and one connecting morphism per critical
value.  Evaluation at real parameters composes connecting morphisms, so
the within-segment isomorphism requirement holds by construction.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .categories import (
    Category,
    IsoClass,
    Mor,
    Obj,
    compose,
    direct_sum_mor,
    direct_sum_obj,
    identity_mor,
    identity_obj,
    image_iso_class,
    make_mor,
)
from .grothendieck import GroupElem, a_class, b_class


class ModuleError(ValueError):
    pass


class InterleavingGridError(ValueError):
    pass


@dataclass(frozen=True)
class ConstructibleModule:
    cat: Category
    values: tuple  # s_1 < ... < s_n, exact rationals
    objects: tuple  # O_0 ... O_n with O_0 the identity object
    morphisms: tuple  # m_i : O_{i-1} -> O_i for i = 1 .. n

    def __post_init__(self):
        n = len(self.values)
        if len(self.objects) != n + 1 or len(self.morphisms) != n:
            raise ModuleError("expected n values, n+1 objects, n morphisms")
        if any(not isinstance(v, Fraction) for v in self.values):
            raise ModuleError("critical values must be exact rationals")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ModuleError("critical values must be strictly increasing")
        if self.objects[0] != identity_obj(self.cat):
            raise ModuleError("the object before the first critical value must be the identity")
        for i, m in enumerate(self.morphisms, start=1):
            if m.src != self.objects[i - 1] or m.tgt != self.objects[i]:
                raise ModuleError(f"connecting morphism {i} does not match its segment objects")

    @property
    def n(self) -> int:
        return len(self.values)

    def segment(self, r) -> int:
        """Index i with r in [s_i, s_{i+1}); 0 before s_1."""
        return bisect_right(self.values, r)

    def object_at(self, r) -> Obj:
        return self.objects[self.segment(r)]


def composite_mor(F: ConstructibleModule, a: int, b: int) -> Mor:
    """Composite of connecting morphisms from segment a to segment b."""
    if not 0 <= a <= b <= F.n:
        raise ModuleError(f"bad segment pair ({a}, {b})")
    m = identity_mor(F.objects[a])
    for i in range(a + 1, b + 1):
        m = compose(F.morphisms[i - 1], m)
    return m


def evaluate(F: ConstructibleModule, p, q) -> Mor:
    """The morphism F(p <= q)."""
    if p > q:
        raise ModuleError("evaluate needs p <= q")
    return composite_mor(F, F.segment(p), F.segment(q))


def shift(F: ConstructibleModule, eps) -> ConstructibleModule:
    """Precompose with r -> r + eps: the result changes at the values S - eps."""
    eps = Fraction(eps)
    return ConstructibleModule(F.cat, tuple(v - eps for v in F.values),
                               F.objects, F.morphisms)


def common_refinement(F: ConstructibleModule, G: ConstructibleModule):
    """Both modules re-gridded on the union of their critical sets."""
    if F.cat != G.cat:
        raise ModuleError("refinement across categories")
    merged = tuple(sorted(set(F.values) | set(G.values)))
    return _regrid(F, merged), _regrid(G, merged)


def _regrid(F: ConstructibleModule, values: tuple) -> ConstructibleModule:
    if not set(F.values) <= set(values):
        raise ModuleError("refinement grid must contain the original critical values")
    objs = [identity_obj(F.cat)]
    mors = []
    prev = None
    for t in values:
        objs.append(F.object_at(t))
        mors.append(evaluate(F, prev if prev is not None else t - 1, t))
        prev = t
    return ConstructibleModule(F.cat, values, tuple(objs), tuple(mors))


def module_direct_sum(F: ConstructibleModule, G: ConstructibleModule) -> ConstructibleModule:
    F, G = common_refinement(F, G)
    objs = tuple(direct_sum_obj(a, b) for a, b in zip(F.objects, G.objects))
    mors = tuple(direct_sum_mor(f, g) for f, g in zip(F.morphisms, G.morphisms))
    return ConstructibleModule(F.cat, F.values, objs, mors)


# ---------------------------------------------------------------------------
# The image-class map on grid intervals
# ---------------------------------------------------------------------------

def dX_cell(F: ConstructibleModule, i: int, j: int) -> IsoClass:
    """Image class for the grid cell [s_i, s_j), with j = n + 1 meaning infinity.

    'Just before s_j' is realized as segment j - 1, and anything beyond
    s_n as segment n, which eliminates the small offset in the interval
    casework.
    """
    n = F.n
    if not 1 <= i < j <= n + 1:
        raise ModuleError(f"bad grid cell ({i}, {j})")
    b = n if j == n + 1 else j - 1
    return image_iso_class(composite_mor(F, i, b))


def dX_iso(F: ConstructibleModule, p, q=None) -> IsoClass:
    """Image class of the interval [p, q), q None meaning infinity.

    Intervals meeting the critical set in the same subset give the same
    class, so arbitrary rational endpoints snap onto the grid casework.
    """
    a = F.segment(p)
    if q is None:
        b = F.n
    else:
        if q <= p:
            raise ModuleError("empty interval")
        b = F.segment(q) - 1 if q in F.values else F.segment(q)
        b = max(b, a)
    return image_iso_class(composite_mor(F, a, b))


def _dX_cells(F: ConstructibleModule, classify) -> dict:
    """classify(image class) over all grid cells, composing incrementally."""
    cells = {}
    n = F.n
    for i in range(1, n + 1):
        comp = identity_mor(F.objects[i])
        at = i
        for j in range(i + 1, n + 2):
            b = n if j == n + 1 else j - 1
            while at < b:
                comp = compose(F.morphisms[at], comp)
                at += 1
            cells[(i, j)] = classify(image_iso_class(comp))
    return cells


def dX_A(F: ConstructibleModule):
    from .diagram import DiagramGrid

    return DiagramGrid.make("A", F.cat, F.values, _dX_cells(F, a_class),
                            role="constructible")


def dX_B(F: ConstructibleModule):
    from .diagram import DiagramGrid

    return DiagramGrid.make("B", F.cat, F.values, _dX_cells(F, b_class),
                            role="constructible")


# ---------------------------------------------------------------------------
# Interleavings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterleavingPair:
    """Candidate eps-interleaving between F and G.

    phi holds one morphism F(r) -> G(r + eps) per segment of its grid
    (the merged breakpoints S_F | (S_G - eps)), with one extra entry in
    front for the segment before the first breakpoint; psi likewise on
    S_G | (S_F - eps).
    """

    eps: Fraction
    phi_grid: tuple
    phi: tuple  # len(phi_grid) + 1 morphisms
    psi_grid: tuple
    psi: tuple

    def phi_at(self, r) -> Mor:
        return self.phi[bisect_right(self.phi_grid, r)]

    def psi_at(self, r) -> Mor:
        return self.psi[bisect_right(self.psi_grid, r)]


def expected_phi_grid(F, G, eps) -> tuple:
    return tuple(sorted(set(F.values) | {v - eps for v in G.values}))


def identity_interleaving(F: ConstructibleModule) -> InterleavingPair:
    grid = expected_phi_grid(F, F, Fraction(0))
    mors = tuple(identity_mor(F.object_at(t)) for t in (grid[0] - 1,) + grid)
    return InterleavingPair(Fraction(0), grid, mors, grid, mors)


def check_interleaving(F: ConstructibleModule, G: ConstructibleModule,
                       pair: InterleavingPair) -> bool:
    """Verify naturality of both families and the two composite identities.

    Raises InterleavingGridError when the pair is not presented on the
    expected merged grids or its morphisms do not match the evaluations
    of F and G; returns False when the interleaving identities fail.
    """
    eps = pair.eps
    if eps < 0:
        raise InterleavingGridError("negative interleaving parameter")
    if pair.phi_grid != expected_phi_grid(F, G, eps):
        raise InterleavingGridError("phi is not given on the merged grid of F and shifted G")
    if pair.psi_grid != expected_phi_grid(G, F, eps):
        raise InterleavingGridError("psi is not given on the merged grid of G and shifted F")
    if len(pair.phi) != len(pair.phi_grid) + 1 or len(pair.psi) != len(pair.psi_grid) + 1:
        raise InterleavingGridError("one morphism per segment is required")

    points = set()
    for s in list(F.values) + list(G.values):
        points.update((s, s - eps, s - 2 * eps))
    reps = sorted(points)
    reps = [reps[0] - 1] + reps

    for r in reps:
        if pair.phi_at(r).src != F.object_at(r) or pair.phi_at(r).tgt != G.object_at(r + eps):
            raise InterleavingGridError(f"phi at {r} does not map F({r}) to G({r} + eps)")
        if pair.psi_at(r).src != G.object_at(r) or pair.psi_at(r).tgt != F.object_at(r + eps):
            raise InterleavingGridError(f"psi at {r} does not map G({r}) to F({r} + eps)")

    for r1, r2 in zip(reps, reps[1:]):
        # naturality squares against the connecting morphisms
        if compose(pair.phi_at(r2), evaluate(F, r1, r2)) != \
                compose(evaluate(G, r1 + eps, r2 + eps), pair.phi_at(r1)):
            return False
        if compose(pair.psi_at(r2), evaluate(G, r1, r2)) != \
                compose(evaluate(F, r1 + eps, r2 + eps), pair.psi_at(r1)):
            return False
    for r in reps:
        if compose(pair.psi_at(r + eps), pair.phi_at(r)) != evaluate(F, r, r + 2 * eps):
            return False
        if compose(pair.phi_at(r + eps), pair.psi_at(r)) != evaluate(G, r, r + 2 * eps):
            return False
    return True

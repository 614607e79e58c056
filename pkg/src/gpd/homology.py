"""Filtered simplicial complexes and their persistent homology modules.

The pipeline parses a plain-text filtration, computes homology of each
sublevel complex exactly (field coefficients by Gaussian elimination,
integer and Z/m coefficients by Smith normal form through presented
lattice quotients), expresses inclusion-induced maps in canonical
homology coordinates, and assembles a constructible persistence module.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .categories import ab, finab, finset, make_mor, make_obj, vect
from .exact import (
    QQ,
    LatticeQuotient,
    PrimeField,
    column_space_basis,
    field_kernel,
    field_rref,
    field_solve,
    int_kernel,
    preimage_lattice,
)
from .matrix import Mat
from .pmodule import ConstructibleModule, InterleavingPair, expected_phi_grid


class FiltrationError(ValueError):
    pass


class FiltrationParseError(FiltrationError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class MissingFaceError(FiltrationError):
    def __init__(self, line_no: int, simplex, face):
        super().__init__(f"line {line_no}: simplex {simplex} is missing its face {face}")
        self.line_no = line_no


class ValueInversionError(FiltrationError):
    def __init__(self, line_no: int, simplex, face):
        super().__init__(
            f"line {line_no}: simplex {simplex} appears before its face {face}")
        self.line_no = line_no


@dataclass(frozen=True)
class FilteredComplex:
    """Simplices (sorted vertex tuples, ordered by dimension then
    vertices) with one rational filtration value each."""

    simplices: tuple
    values: tuple

    def __post_init__(self):
        index = {s: i for i, s in enumerate(self.simplices)}
        if len(index) != len(self.simplices):
            raise FiltrationError("duplicate simplex")
        verts = {v for s in self.simplices for v in s}
        if verts != set(range(len(verts))):
            raise FiltrationError("vertex indices must be dense from 0")
        for s, v in zip(self.simplices, self.values):
            for f in facets(s):
                if f not in index:
                    raise FiltrationError(f"simplex {s} is missing its face {f}")
                if self.values[index[f]] > v:
                    raise FiltrationError(f"simplex {s} appears before its face {f}")

    @property
    def critical_values(self) -> tuple:
        return tuple(sorted(set(self.values)))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def simplices_of_dim(self, k: int, at=None) -> list:
        return [s for s, v in zip(self.simplices, self.values)
                if len(s) == k + 1 and (at is None or v <= at)]


def facets(simplex: tuple):
    if len(simplex) > 1:
        for i in range(len(simplex)):
            yield simplex[:i] + simplex[i + 1:]


def make_complex(items) -> FilteredComplex:
    """Build a complex from (vertex-tuple, value) pairs in any order."""
    entries = sorted(((tuple(sorted(s)), Fraction(v)) for s, v in items),
                     key=lambda e: (len(e[0]), e[0]))
    return FilteredComplex(tuple(s for s, _ in entries), tuple(v for _, v in entries))


def parse_filtration(text: str) -> FilteredComplex:
    """Parse `v0 v1 ... vk : value` lines; `#` starts a comment.

    Values are decimals or `p/q` rationals; lines may come in any
    order.  Errors carry the offending 1-based line number.
    """
    entries = []
    lines = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FiltrationParseError(line_no, "expected `v0 v1 ... vk : value`")
        left, _, right = line.partition(":")
        try:
            verts = tuple(sorted(int(tok) for tok in left.split()))
        except ValueError:
            raise FiltrationParseError(line_no, f"bad vertex list {left.strip()!r}") from None
        if not verts:
            raise FiltrationParseError(line_no, "empty vertex list")
        if len(set(verts)) != len(verts):
            raise FiltrationParseError(line_no, f"repeated vertex in {verts}")
        if any(v < 0 for v in verts):
            raise FiltrationParseError(line_no, "negative vertex index")
        try:
            value = Fraction(right.strip())
        except (ValueError, ZeroDivisionError):
            raise FiltrationParseError(line_no, f"bad value {right.strip()!r}") from None
        if verts in lines:
            raise FiltrationParseError(line_no, f"duplicate simplex {verts}")
        lines[verts] = line_no
        entries.append((verts, value))

    index = {s: v for s, v in entries}
    verts = {v for s in index for v in s}
    if verts != set(range(len(verts))):
        raise FiltrationParseError(0, f"vertex indices must be dense from 0, got {sorted(verts)}")
    for s, v in entries:
        for f in facets(s):
            if f not in index:
                raise MissingFaceError(lines[s], s, f)
            if index[f] > v:
                raise ValueInversionError(lines[s], s, f)
    return make_complex(entries)


def boundary_matrix(rows: list, cols: list) -> Mat:
    """Integer boundary matrix from the simplices `cols` to their facets."""
    pos = {s: i for i, s in enumerate(rows)}
    out = [[0] * len(cols) for _ in range(len(rows))]
    for j, s in enumerate(cols):
        if len(s) == 1:
            continue  # vertices have zero boundary
        for i in range(len(s)):
            out[pos[s[:i] + s[i + 1:]]][j] = (-1) ** i
    return Mat.from_rows(out, ncols=len(cols))


# ---------------------------------------------------------------------------
# Homology of one sublevel complex, with coordinates
# ---------------------------------------------------------------------------

def parse_coeffs(token: str):
    """Coefficient token: 'Z', 'Q', 'Fp:<p>', or 'Zm:<m>'."""
    if token == "Z":
        return ("Z", None)
    if token == "Q":
        return ("F", QQ)
    if token.startswith("Fp:"):
        return ("F", PrimeField(int(token[3:])))
    if token.startswith("Zm:"):
        m = int(token[3:])
        if m < 2:
            raise FiltrationError("Z/m coefficients need m >= 2")
        return ("Zm", m)
    raise FiltrationError(f"unknown coefficient token {token!r}")


class _Stage:
    """Homology of one sublevel complex in one degree, coordinatized.

    Exposes the homology object, ambient cycle representatives of its
    canonical generators (as chain vectors over the stage's k-simplices),
    and `coords` to express any cycle of the stage in those generators.
    """

    def __init__(self, K: FilteredComplex, k: int, coeffs: str, at):
        kind, arg = parse_coeffs(coeffs)
        self.k_simplices = K.simplices_of_dim(k, at=at)
        below = K.simplices_of_dim(k - 1, at=at) if k > 0 else []
        above = K.simplices_of_dim(k + 1, at=at)
        nk = len(self.k_simplices)
        d_k = boundary_matrix(below, self.k_simplices)
        d_k1 = boundary_matrix(self.k_simplices, above)
        if kind == "F":
            F = arg
            ker = field_kernel(F, d_k.map(F.coerce)) if k > 0 else \
                Mat.identity(nk, one=F.one, zero=F.zero)
            img = column_space_basis(F, d_k1.map(F.coerce))
            # extend a basis of the boundaries to one of the cycles
            _, pivots = field_rref(F, img.hstack(ker))
            chosen = [p - img.cols for p in pivots if p >= img.cols]
            gens = ker.take_cols(chosen)
            self._field = F
            self._full = img.hstack(gens)
            self._split = img.cols
            self.gen_reps = gens
            self.obj = make_obj(vect(F), gens.cols)
        else:
            if kind == "Z":
                L = int_kernel(d_k) if k > 0 else Mat.identity(nk)
                B = d_k1
                cat = ab()
            else:
                m = arg
                L = preimage_lattice(d_k, Mat.identity(len(below)).scale(m)) \
                    if k > 0 else Mat.identity(nk)
                B = d_k1.hstack(Mat.identity(nk).scale(m))
                cat = finab()
            lq = LatticeQuotient(L, B)
            rank, invs = lq.iso()
            self._lq = lq
            self.gen_reps = lq.generator_reps()
            self.obj = make_obj(cat, (rank, tuple(invs)))
        self._kind = kind

    def coords(self, chain) -> list:
        """Canonical homology coordinates of a cycle chain vector."""
        if self._kind == "F":
            F = self._field
            sol = field_solve(F, self._full, Mat.from_cols([chain], nrows=len(chain)))
            if sol is None:
                raise FiltrationError("chain is not a cycle of this stage")
            return [sol[i, 0] for i in range(self._split, self._full.cols)]
        return self._lq.coords(chain)


_stage_cache: dict = {}


def _stage_at(K: FilteredComplex, k: int, coeffs: str, at) -> _Stage:
    """Stages keyed by the sublevel subset: different thresholds that
    admit the same simplices share one homology computation."""
    mask = tuple(v <= at for v in K.values)
    key = (K, k, coeffs, mask)
    if key not in _stage_cache:
        _stage_cache[key] = _Stage(K, k, coeffs, at)
    return _stage_cache[key]


def _induced_payload(src: _Stage, tgt: _Stage):
    """Matrix of the inclusion-induced map in canonical coordinates."""
    pos = {s: i for i, s in enumerate(tgt.k_simplices)}
    cols = []
    for j in range(src.gen_reps.cols):
        chain = [0 if src._kind != "F" else tgt._field.zero] * len(tgt.k_simplices)
        for i, s in enumerate(src.k_simplices):
            chain[pos[s]] = src.gen_reps[i, j]
        cols.append(tgt.coords(chain))
    return Mat.from_cols(cols, nrows=_ngens(tgt))


def _ngens(stage: _Stage) -> int:
    return stage.gen_reps.cols


def persistent_module(K: FilteredComplex, k: int, coeffs: str) -> ConstructibleModule:
    """Degree-k persistent homology of the sublevel filtration.

    Field coefficients give vector-space objects, 'Z' gives finitely
    generated abelian groups, 'Zm:<m>' gives finite abelian groups.
    Degrees above the complex dimension give zero modules.
    """
    if k < 0:
        raise FiltrationError("homology degree must be nonnegative")
    kind, arg = parse_coeffs(coeffs)
    values = K.critical_values
    cat = vect(arg) if kind == "F" else (ab() if kind == "Z" else finab())
    stages = [_stage_at(K, k, coeffs, at=t) for t in values]
    objs = [make_obj(cat, 0 if kind == "F" else (0, ()))]
    mors = []
    prev = None
    for st in stages:
        objs.append(st.obj)
        if prev is None:
            zero = Mat.zero(_ngens(st), 0,
                            zero=arg.zero if kind == "F" else 0)
            mors.append(make_mor(objs[0], st.obj, zero))
        else:
            mors.append(make_mor(prev.obj, st.obj, _induced_payload(prev, st)))
        prev = st
    return ConstructibleModule(cat, values, tuple(objs), tuple(mors))


# ---------------------------------------------------------------------------
# Connected components as a set-valued module (merge tree)
# ---------------------------------------------------------------------------

def component_module(K: FilteredComplex) -> ConstructibleModule:
    """Pi_0 of the sublevel filtration, valued in finite sets.

    Components at each stage are ordered by their smallest vertex; the
    connecting maps send a component to the one absorbing it.
    """
    cat = finset()
    values = K.critical_values

    def components(at):
        verts = [s[0] for s in K.simplices_of_dim(0, at=at)]
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, b in K.simplices_of_dim(1, at=at):
            parent[find(a)] = find(b)
        groups = {}
        for v in verts:
            groups.setdefault(find(v), []).append(v)
        return sorted(min(g) for g in groups.values()), {v: min(groups[find(v)]) for v in verts}

    objs = [make_obj(cat, 0)]
    mors = []
    prev_reps = None
    for t in values:
        reps, root_of = components(t)
        obj = make_obj(cat, len(reps))
        objs.append(obj)
        if prev_reps is None:
            mors.append(make_mor(objs[0], obj, ()))
        else:
            table = tuple(reps.index(root_of[r]) for r in prev_reps)
            mors.append(make_mor(objs[-2], obj, table))
        prev_reps = reps
    return ConstructibleModule(cat, values, tuple(objs), tuple(mors))


# ---------------------------------------------------------------------------
# Perturbation and the induced interleaving
# ---------------------------------------------------------------------------

def perturb(K: FilteredComplex, eps, seed: int) -> FilteredComplex:
    """Move every filtration value by a seeded rational offset in [-eps, eps].

    Face-value monotonicity is restored by propagating values upward
    from faces, which keeps every value within eps of the original.
    """
    eps = Fraction(eps)
    if eps < 0:
        raise FiltrationError("perturbation needs eps >= 0")
    rng = random.Random(seed)
    # offsets on a coarse rational lattice keep the number of distinct
    # perturbed values (hence homology stages) small
    index = {s: v + eps * Fraction(rng.randint(-4, 4), 4)
             for s, v in zip(K.simplices, K.values)}
    for s in K.simplices:  # dimension order: faces are already repaired
        for f in facets(s):
            if index[f] > index[s]:
                index[s] = index[f]
    return make_complex(index.items())


def interleaving_from_perturbation(K: FilteredComplex, K2: FilteredComplex,
                                   k: int, coeffs: str, eps):
    """(F, G, pair): the two homology modules of filtrations of the same
    complex whose values differ by at most eps, with their canonical
    eps-interleaving.

    Both directions are inclusions of sublevel complexes, so the
    morphism families are the induced maps in homology coordinates.
    """
    eps = Fraction(eps)
    if K.simplices != K2.simplices:
        raise FiltrationError("interleaving needs the same underlying complex")
    if any(abs(a - b) > eps for a, b in zip(K.values, K2.values)):
        raise FiltrationError("filtration values differ by more than eps")
    F = persistent_module(K, k, coeffs)
    G = persistent_module(K2, k, coeffs)

    def family(src_K, tgt_K, src_M, tgt_M):
        grid = expected_phi_grid(src_M, tgt_M, eps)
        mors = []
        for r in (grid[0] - 1,) + grid:
            a = _stage_at(src_K, k, coeffs, at=r)
            b = _stage_at(tgt_K, k, coeffs, at=r + eps)
            mors.append(make_mor(src_M.object_at(r), tgt_M.object_at(r + eps),
                                 _induced_payload(a, b)))
        return grid, tuple(mors)

    pg, phi = family(K, K2, F, G)
    sg, psi = family(K2, K, G, F)
    return F, G, InterleavingPair(eps, pg, phi, sg, psi)


# ---------------------------------------------------------------------------
# Vietoris-Rips helper
# ---------------------------------------------------------------------------

def rips_filtration(dist: list, max_dim: int = 2) -> FilteredComplex:
    """Rips filtration from a symmetric rational distance matrix.

    Vertices enter at 0 and every higher simplex at the largest
    pairwise distance among its vertices.
    """
    from itertools import combinations

    npts = len(dist)
    items = [((v,), Fraction(0)) for v in range(npts)]
    for d in range(1, max_dim + 1):
        for s in combinations(range(npts), d + 1):
            val = max(Fraction(dist[a][b]) for a, b in combinations(s, 2))
            items.append((s, val))
    return make_complex(items)


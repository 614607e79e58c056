"""The five value-category backends.

Objects and morphisms for: finite sets under disjoint union, finite
dimensional vector spaces, finitely generated abelian groups, finite
abelian groups, and vector-space endomorphisms (square matrices up to
conjugation, classified by Jordan type).

Objects are kept in canonical form at all times; abelian morphism
payloads are reduced modulo the target relations at construction, so
equality of morphisms is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    QQ,
    LatticeQuotient,
    PrimeField,
    column_space_basis,
    field_rank,
    field_solve,
    jordan_type,
)
from .matrix import Mat

FINSET = "finset"
VECT = "vect"
AB = "ab"
FINAB = "finab"
REPN = "repn"


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class Category:
    kind: str
    field: object = None  # QQ or PrimeField, for vect and repn

    def __post_init__(self):
        if self.kind in (VECT, REPN):
            if self.field is None:
                raise CategoryError(f"{self.kind} needs a coefficient field")
        elif self.field is not None:
            raise CategoryError(f"{self.kind} takes no coefficient field")

    @property
    def abelian(self) -> bool:
        return self.kind != FINSET

    def __repr__(self):
        return f"Category({self.kind}{', ' + repr(self.field) if self.field else ''})"


def finset() -> Category:
    return Category(FINSET)


def vect(field=QQ) -> Category:
    return Category(VECT, field)


def ab() -> Category:
    return Category(AB)


def finab() -> Category:
    return Category(FINAB)


def repn(field=QQ) -> Category:
    return Category(REPN, field)


# ---------------------------------------------------------------------------
# Objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Obj:
    cat: Category
    data: object

    def __repr__(self):
        return f"Obj({self.cat.kind}, {self.data!r})"


def make_obj(cat: Category, data) -> Obj:
    if cat.kind == FINSET:
        n = int(data)
        if n < 0:
            raise CategoryError("negative set size")
        return Obj(cat, n)
    if cat.kind == VECT:
        n = int(data)
        if n < 0:
            raise CategoryError("negative dimension")
        return Obj(cat, n)
    if cat.kind in (AB, FINAB):
        rank, invs = data
        rank = int(rank)
        invs = tuple(int(d) for d in invs)
        if rank < 0 or any(d < 2 for d in invs):
            raise CategoryError("bad abelian group data")
        for a, b in zip(invs, invs[1:]):
            if b % a != 0:
                raise CategoryError("invariant factors must form a divisibility chain")
        if cat.kind == FINAB and rank != 0:
            raise CategoryError("finite abelian groups have no free part")
        return Obj(cat, (rank, invs))
    if cat.kind == REPN:
        A = data if isinstance(data, Mat) else Mat.from_rows(data)
        if A.rows != A.cols:
            raise CategoryError("endomorphism object must be square")
        return Obj(cat, A.map(cat.field.coerce))
    raise CategoryError(f"unknown category kind {cat.kind!r}")


def identity_obj(cat: Category) -> Obj:
    if cat.kind in (FINSET, VECT):
        return Obj(cat, 0)
    if cat.kind in (AB, FINAB):
        return Obj(cat, (0, ()))
    return Obj(cat, Mat.zero(0, 0))


def obj_ngens(a: Obj) -> int:
    if a.cat.kind in (FINSET, VECT):
        return a.data
    if a.cat.kind in (AB, FINAB):
        rank, invs = a.data
        return rank + len(invs)
    return a.data.rows


def ab_relations(a: Obj) -> Mat:
    """Relation lattice of an abelian-group object inside Z^ngens (columns)."""
    rank, invs = a.data
    g = rank + len(invs)
    cols = []
    for j, d in enumerate(invs):
        v = [0] * g
        v[rank + j] = d
        cols.append(v)
    return Mat.from_cols(cols, nrows=g)


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mor:
    src: Obj
    tgt: Obj
    payload: object

    @property
    def cat(self) -> Category:
        return self.src.cat

    def __repr__(self):
        return f"Mor({self.src.data!r} -> {self.tgt.data!r})"


def make_mor(src: Obj, tgt: Obj, payload) -> Mor:
    if src.cat != tgt.cat:
        raise CategoryError("source and target live in different categories")
    cat = src.cat
    if cat.kind == FINSET:
        table = tuple(int(v) for v in payload)
        if len(table) != src.data:
            raise CategoryError("function table length must equal source size")
        if any(not 0 <= v < tgt.data for v in table):
            raise CategoryError("function table value out of range")
        return Mor(src, tgt, table)
    if cat.kind == VECT:
        M = payload if isinstance(payload, Mat) else Mat.from_rows(payload)
        if (M.rows, M.cols) != (tgt.data, src.data):
            raise CategoryError(f"matrix shape {M.rows}x{M.cols} does not match "
                                f"{tgt.data}x{src.data}")
        return Mor(src, tgt, M.map(cat.field.coerce))
    if cat.kind in (AB, FINAB):
        M = payload if isinstance(payload, Mat) else Mat.from_rows(payload)
        gs, gt = obj_ngens(src), obj_ngens(tgt)
        if (M.rows, M.cols) != (gt, gs):
            raise CategoryError(f"matrix shape {M.rows}x{M.cols} does not match "
                                f"{gt}x{gs} generators")
        M = _ab_canonical_payload(tgt, M)
        _ab_check_well_defined(src, tgt, M)
        return Mor(src, tgt, M)
    if cat.kind == REPN:
        M = payload if isinstance(payload, Mat) else Mat.from_rows(payload)
        if (M.rows, M.cols) != (tgt.data.rows, src.data.rows):
            raise CategoryError("matrix shape does not match endomorphism dimensions")
        F = cat.field
        M = M.map(F.coerce)
        left = (M @ src.data).map(F.coerce)
        right = (tgt.data @ M).map(F.coerce)
        if left != right:
            raise CategoryError("payload does not intertwine the endomorphisms")
        return Mor(src, tgt, M)
    raise CategoryError(f"unknown category kind {cat.kind!r}")


def _ab_canonical_payload(tgt: Obj, M: Mat) -> Mat:
    rank, invs = tgt.data
    rows = M.to_lists()
    for j, d in enumerate(invs):
        rows[rank + j] = [v % d for v in rows[rank + j]]
    return Mat.from_rows(rows, ncols=M.cols)


def _ab_check_well_defined(src: Obj, tgt: Obj, M: Mat):
    """Each source relation d_j * g_j must map into the target relations."""
    rank_s, invs_s = src.data
    rank_t, invs_t = tgt.data
    for j, d in enumerate(invs_s):
        col = M.col(rank_s + j)
        for i in range(rank_t):
            if d * col[i] != 0:
                raise CategoryError(
                    f"torsion generator {j} of order {d} maps to an element of infinite order")
        for i, dt in enumerate(invs_t):
            if (d * col[rank_t + i]) % dt != 0:
                raise CategoryError(
                    f"torsion generator {j} of order {d} maps to an element whose order "
                    f"does not divide {d}")


def identity_mor(a: Obj) -> Mor:
    if a.cat.kind == FINSET:
        return Mor(a, a, tuple(range(a.data)))
    n = obj_ngens(a)
    if a.cat.kind in (AB, FINAB):
        return make_mor(a, a, Mat.identity(n))
    F = a.cat.field
    return Mor(a, a, Mat.identity(n, one=F.one, zero=F.zero))


def zero_mor(src: Obj, tgt: Obj) -> Mor:
    """The zero morphism (abelian backends) or the map out of the empty set."""
    cat = src.cat
    if cat.kind == FINSET:
        if src.data != 0:
            raise CategoryError("finite sets only have canonical maps out of the empty set")
        return make_mor(src, tgt, ())
    return make_mor(src, tgt, Mat.zero(obj_ngens(tgt), obj_ngens(src)))


def compose(g: Mor, f: Mor) -> Mor:
    """g after f."""
    if f.tgt != g.src:
        raise CategoryError("composition mismatch: target of f is not source of g")
    cat = f.cat
    if cat.kind == FINSET:
        return Mor(f.src, g.tgt, tuple(g.payload[v] for v in f.payload))
    M = g.payload @ f.payload
    if cat.kind in (VECT, REPN):
        return Mor(f.src, g.tgt, M.map(cat.field.coerce))
    return make_mor(f.src, g.tgt, M)


def is_isomorphism(f: Mor) -> bool:
    cat = f.cat
    if cat.kind == FINSET:
        return f.src.data == f.tgt.data and len(set(f.payload)) == f.src.data
    if cat.kind == VECT:
        return (f.src.data == f.tgt.data
                and field_rank(cat.field, f.payload) == f.src.data)
    if cat.kind == REPN:
        return (f.src.data.rows == f.tgt.data.rows
                and field_rank(cat.field, f.payload) == f.payload.rows)
    # abelian groups: surjective onto an isomorphic group implies bijective
    if iso_class(f.src) != iso_class(f.tgt):
        return False
    gt = obj_ngens(f.tgt)
    cok = LatticeQuotient(Mat.identity(gt), f.payload.hstack(ab_relations(f.tgt)))
    return cok.iso() == (0, [])


# ---------------------------------------------------------------------------
# Isomorphism classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoClass:
    """Canonical multiset of indecomposable descriptors.

    Descriptors: 'pt' (singleton set), 'line' (1-dim space), 'Z'
    (infinite cyclic), ('t', p, m) for Z/p^m, ('j', lam, m) for a Jordan
    block of size m at eigenvalue lam.
    """

    cat: Category
    items: tuple  # sorted tuple of (descriptor, positive count)

    def mult(self) -> dict:
        return dict(self.items)

    def total(self) -> int:
        return sum(c for _, c in self.items)

    def __repr__(self):
        return f"IsoClass({dict(self.items)!r})"


def _descriptor_key(d):
    if isinstance(d, str):
        return (0, d, 0, 0)
    if d[0] == "t":
        return (1, "", d[1], d[2])
    return (2, "", Fraction(d[1]) if not isinstance(d[1], int) else d[1], d[2])


def _make_iso(cat: Category, counter: dict) -> IsoClass:
    items = tuple(sorted(((d, c) for d, c in counter.items() if c),
                         key=lambda it: _descriptor_key(it[0])))
    if any(c < 0 for _, c in items):
        raise CategoryError("negative multiplicity in an isomorphism class")
    return IsoClass(cat, items)


def _prime_power_parts(d: int):
    """Primary decomposition of a cyclic group order d >= 2."""
    parts = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            m = 0
            while d % p == 0:
                d //= p
                m += 1
            parts.append((p, m))
        p += 1
    if d > 1:
        parts.append((d, 1))
    return parts


def iso_from_invariants(cat: Category, rank: int, invs) -> IsoClass:
    counter: dict = {}
    if rank:
        counter["Z"] = rank
    for d in invs:
        for p, m in _prime_power_parts(d):
            key = ("t", p, m)
            counter[key] = counter.get(key, 0) + 1
    return _make_iso(cat, counter)


def invariants_from_iso(c: IsoClass) -> tuple[int, tuple[int, ...]]:
    """Rebuild (free rank, invariant-factor chain) from a primary multiset."""
    rank = 0
    primary: dict = {}
    for d, cnt in c.items:
        if d == "Z":
            rank = cnt
        else:
            _, p, m = d
            primary.setdefault(p, []).extend([m] * cnt)
    chains: list[int] = []
    for p, ms in primary.items():
        ms.sort(reverse=True)
        for i, m in enumerate(ms):
            if i < len(chains):
                chains[i] *= p ** m
            else:
                chains.append(p ** m)
    chains.sort()
    return rank, tuple(chains)


def iso_class(a: Obj) -> IsoClass:
    cat = a.cat
    if cat.kind == FINSET:
        return _make_iso(cat, {"pt": a.data})
    if cat.kind == VECT:
        return _make_iso(cat, {"line": a.data})
    if cat.kind in (AB, FINAB):
        rank, invs = a.data
        return iso_from_invariants(cat, rank, invs)
    counter: dict = {}
    for lam, size in jordan_type(a.data, cat.field):
        key = ("j", lam, size)
        counter[key] = counter.get(key, 0) + 1
    return _make_iso(cat, counter)


def image_iso_class(f: Mor) -> IsoClass:
    """Isomorphism class of the epi-mono image of f."""
    cat = f.cat
    if cat.kind == FINSET:
        return _make_iso(cat, {"pt": len(set(f.payload))})
    if cat.kind == VECT:
        return _make_iso(cat, {"line": field_rank(cat.field, f.payload)})
    if cat.kind in (AB, FINAB):
        R = ab_relations(f.tgt)
        q = LatticeQuotient(f.payload.hstack(R), R)
        rank, invs = q.iso()
        return iso_from_invariants(cat, rank, invs)
    F = cat.field
    W = column_space_basis(F, f.payload)
    if W.cols == 0:
        return _make_iso(cat, {})
    C = field_solve(F, W, (f.tgt.data @ W).map(F.coerce))
    counter: dict = {}
    for lam, size in jordan_type(C, F):
        key = ("j", lam, size)
        counter[key] = counter.get(key, 0) + 1
    return _make_iso(cat, counter)


def iso_union(a: IsoClass, b: IsoClass) -> IsoClass:
    if a.cat != b.cat:
        raise CategoryError("isomorphism classes from different categories")
    counter = dict(a.items)
    for d, c in b.items:
        counter[d] = counter.get(d, 0) + c
    return _make_iso(a.cat, counter)


# ---------------------------------------------------------------------------
# Direct sums
# ---------------------------------------------------------------------------

def direct_sum_obj(a: Obj, b: Obj) -> Obj:
    cat = a.cat
    if cat != b.cat:
        raise CategoryError("direct sum across categories")
    if cat.kind in (FINSET, VECT):
        return Obj(cat, a.data + b.data)
    if cat.kind in (AB, FINAB):
        rank, invs = invariants_from_iso(iso_union(iso_class(a), iso_class(b)))
        return make_obj(cat, (rank, invs))
    A, B = a.data, b.data
    n, m = A.rows, B.rows
    F = cat.field
    rows = []
    for i in range(n):
        rows.append(tuple(A[i, j] for j in range(n)) + tuple(F.zero for _ in range(m)))
    for i in range(m):
        rows.append(tuple(F.zero for _ in range(n)) + tuple(B[i, j] for j in range(m)))
    return Obj(cat, Mat.from_rows(rows, ncols=n + m))


def _ab_sum_presentation(a: Obj, b: Obj) -> LatticeQuotient:
    """Presentation of a (+) b on the concatenated generators of a and b."""
    ga, gb = obj_ngens(a), obj_ngens(b)
    Ra, Rb = ab_relations(a), ab_relations(b)
    top = Ra.hstack(Mat.zero(ga, Rb.cols))
    bot = Mat.zero(gb, Ra.cols).hstack(Rb)
    return LatticeQuotient(Mat.identity(ga + gb), top.vstack(bot))


def direct_sum_mor(f: Mor, g: Mor) -> Mor:
    """Block direct sum with sources and targets in canonical form."""
    cat = f.cat
    if cat != g.cat:
        raise CategoryError("direct sum across categories")
    src = direct_sum_obj(f.src, g.src)
    tgt = direct_sum_obj(f.tgt, g.tgt)
    if cat.kind == FINSET:
        table = f.payload + tuple(v + f.tgt.data for v in g.payload)
        return make_mor(src, tgt, table)
    if cat.kind in (VECT, REPN):
        F = cat.field
        r1, c1 = f.payload.rows, f.payload.cols
        r2, c2 = g.payload.rows, g.payload.cols
        rows = []
        for i in range(r1):
            rows.append(tuple(f.payload[i, j] for j in range(c1))
                        + tuple(F.zero for _ in range(c2)))
        for i in range(r2):
            rows.append(tuple(F.zero for _ in range(c1))
                        + tuple(g.payload[i, j] for j in range(c2)))
        return make_mor(src, tgt, Mat.from_rows(rows, ncols=c1 + c2))
    # abelian groups: translate the block map through canonical coordinates
    qs = _ab_sum_presentation(f.src, g.src)
    qt = _ab_sum_presentation(f.tgt, g.tgt)
    ga, gb = obj_ngens(f.src), obj_ngens(g.src)
    block_cols = []
    for col in qs.generator_reps().columns():
        xa = col[:ga]
        xb = col[ga:]
        ya = [sum(f.payload[i, k] * xa[k] for k in range(ga)) for i in range(obj_ngens(f.tgt))]
        yb = [sum(g.payload[i, k] * xb[k] for k in range(gb)) for i in range(obj_ngens(g.tgt))]
        block_cols.append(qt.coords(tuple(ya) + tuple(yb)))
    payload = Mat.from_cols(block_cols, nrows=qt.ngens)
    return make_mor(src, tgt, payload)

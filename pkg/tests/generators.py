"""Seeded random objects, morphisms, and modules for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from gpd.categories import (
    Category,
    Mor,
    Obj,
    ab,
    direct_sum_mor,
    direct_sum_obj,
    finab,
    finset,
    identity_obj,
    make_mor,
    make_obj,
    obj_ngens,
    repn,
    vect,
)
from gpd.exact import QQ, PrimeField, field_kernel, field_solve
from gpd.matrix import Mat

SMALL_CHAINS = [(), (2,), (3,), (4,), (2, 2), (2, 4), (3, 3), (2, 6), (8,), (2, 2, 2), (6,), (12,)]


def random_obj(cat: Category, rng: random.Random, max_size: int = 4) -> Obj:
    if cat.kind == "finset":
        return make_obj(cat, rng.randint(0, max_size + 2))
    if cat.kind == "vect":
        return make_obj(cat, rng.randint(0, max_size))
    if cat.kind in ("ab", "finab"):
        rank = 0 if cat.kind == "finab" else rng.randint(0, 2)
        invs = rng.choice(SMALL_CHAINS)
        if cat.kind == "finab" and not invs and rng.random() < 0.7:
            invs = rng.choice([c for c in SMALL_CHAINS if c])
        return make_obj(cat, (rank, invs))
    # repn: random Jordan blocks, conjugated by a random invertible matrix
    F = cat.field
    n = rng.randint(0, max_size)
    if n == 0:
        return identity_obj(cat)
    eigs = list(F.elements())[:5] if isinstance(F, PrimeField) else [Fraction(v) for v in (-1, 0, 1, 2)]
    rows = [[F.zero] * n for _ in range(n)]
    pos = 0
    while pos < n:
        size = rng.randint(1, n - pos)
        lam = rng.choice(eigs)
        for k in range(size):
            rows[pos + k][pos + k] = lam
            if k + 1 < size:
                rows[pos + k][pos + k + 1] = F.one
        pos += size
    J = Mat.from_rows(rows, ncols=n)
    P = random_invertible(F, n, rng)
    Pinv = field_solve(F, P, Mat.identity(n, one=F.one, zero=F.zero))
    return make_obj(cat, (P @ J @ Pinv).map(F.coerce))


def random_invertible(F, n: int, rng: random.Random) -> Mat:
    rows = Mat.identity(n, one=F.one, zero=F.zero).to_lists()
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = F.coerce(rng.randint(-2, 2))
        rows[i] = [F.add(a, F.mul(c, b)) for a, b in zip(rows[i], rows[j])]
    return Mat.from_rows(rows, ncols=n)


def random_mor(src: Obj, tgt: Obj, rng: random.Random) -> Mor:
    cat = src.cat
    if cat.kind == "finset":
        if tgt.data == 0:
            return make_mor(src, tgt, ()) if src.data == 0 else None
        return make_mor(src, tgt, tuple(rng.randrange(tgt.data) for _ in range(src.data)))
    if cat.kind == "vect":
        F = cat.field
        M = Mat.from_rows([[F.coerce(rng.randint(-2, 2)) for _ in range(src.data)]
                           for _ in range(tgt.data)], ncols=src.data)
        return make_mor(src, tgt, M)
    if cat.kind in ("ab", "finab"):
        return make_mor(src, tgt, random_ab_payload(src, tgt, rng))
    # repn: random element of the intertwiner space
    F = cat.field
    A, B = src.data, tgt.data
    n, m = A.rows, B.rows
    if n == 0 or m == 0:
        return make_mor(src, tgt, Mat.zero(m, n, zero=F.zero))
    # vec(X A - B X) = 0 as a linear system on the m*n entries of X
    rows = []
    for i in range(m):
        for j in range(n):
            row = [F.zero] * (m * n)
            for k in range(n):
                row[i * n + k] = F.add(row[i * n + k], A[k, j])
            for k in range(m):
                row[k * n + j] = F.sub(row[k * n + j], B[i, k])
            rows.append(row)
    K = field_kernel(F, Mat.from_rows(rows, ncols=m * n))
    if K.cols == 0:
        return make_mor(src, tgt, Mat.zero(m, n, zero=F.zero))
    combo = [F.coerce(rng.randint(-2, 2)) for _ in range(K.cols)]
    flat = [F.coerce(sum(K[i, c] * combo[c] for c in range(K.cols))) for i in range(m * n)]
    X = Mat.from_rows([flat[i * n:(i + 1) * n] for i in range(m)], ncols=n)
    return make_mor(src, tgt, X)


def random_ab_payload(src: Obj, tgt: Obj, rng: random.Random) -> Mat:
    """A random well-defined generator matrix between abelian-group objects."""
    rank_s, invs_s = src.data
    rank_t, invs_t = tgt.data
    gt = obj_ngens(tgt)
    cols = []
    for j in range(obj_ngens(src)):
        if j < rank_s:
            cols.append([rng.randint(-2, 2) for _ in range(gt)])
        else:
            d = invs_s[j - rank_s]
            col = [0] * rank_t
            for dt in invs_t:
                step = dt // gcd(dt, d)
                col.append(step * rng.randint(0, max(dt // step - 1, 0)))
            cols.append(col)
    return Mat.from_cols(cols, nrows=gt)


ALL_CATS = [finset(), vect(QQ), vect(PrimeField(2)), ab(), finab(), repn(QQ), repn(PrimeField(5))]


def random_module(cat: Category, rng: random.Random, max_values: int = 4, max_size: int = 3):
    """A random constructible module: e at the start, then random steps."""
    from fractions import Fraction

    from gpd.pmodule import ConstructibleModule

    n = rng.randint(1, max_values)
    values = sorted(rng.sample(range(-4, 9), n))
    values = tuple(Fraction(v) for v in values)
    objs = [identity_obj(cat)]
    for _ in range(n):
        o = random_obj(cat, rng, max_size=max_size)
        if cat.kind == "finset" and o.data == 0 and objs[-1].data > 0:
            o = make_obj(cat, 1)
        objs.append(o)
    mors = []
    for i in range(1, n + 1):
        mors.append(random_mor(objs[i - 1], objs[i], rng))
    return ConstructibleModule(cat, values, tuple(objs), tuple(mors))


def random_interval_sum_module(field, rng: random.Random, nvals: int = 4, nints: int = 3):
    """Vect module built as a sum of interval modules with a random basis change.

    Returns (module, bars) where bars is a dict (i, j) -> multiplicity on
    the 1-based grid, j = nvals + 1 meaning infinity.
    """
    from gpd.pmodule import ConstructibleModule, module_direct_sum

    cat = vect(field)
    values = tuple(Fraction(v) for v in sorted(rng.sample(range(0, 10), nvals)))
    bars: dict = {}
    modules = []
    for _ in range(nints):
        i = rng.randint(1, nvals)
        j = rng.randint(i + 1, nvals + 1)
        bars[(i, j)] = bars.get((i, j), 0) + 1
        objs = [make_obj(cat, 0)]
        mors = []
        for k in range(1, nvals + 1):
            dim = 1 if i <= k < j else 0
            objs.append(make_obj(cat, dim))
            prev = objs[-2].data
            payload = Mat.from_rows([[field.one] * prev for _ in range(dim)], ncols=prev) \
                if dim and prev else Mat.zero(dim, prev, zero=field.zero)
            mors.append(make_mor(objs[-2], objs[-1], payload))
        modules.append(ConstructibleModule(cat, values, tuple(objs), tuple(mors)))
    total = modules[0]
    for m in modules[1:]:
        total = module_direct_sum(total, m)
    # conjugate each stage by a random invertible matrix
    objs = list(total.objects)
    mors = list(total.morphisms)
    changes = [Mat.identity(objs[0].data, one=field.one, zero=field.zero)]
    for i in range(1, len(objs)):
        changes.append(random_invertible(field, objs[i].data, rng))
    new_mors = []
    for i, m in enumerate(mors, start=1):
        Pi = changes[i]
        Pprev_inv = field_solve(field, changes[i - 1],
                                Mat.identity(objs[i - 1].data, one=field.one, zero=field.zero))
        new_mors.append(make_mor(objs[i - 1], objs[i], (Pi @ m.payload @ Pprev_inv).map(field.coerce)))
    return ConstructibleModule(cat, total.values, tuple(objs), tuple(new_mors)), bars

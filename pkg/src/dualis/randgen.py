"""Seeded generators for randomized checks.

Everything here is driven by a caller-supplied random.Random so runs are
reproducible.  Random structures are built by conjugating known-good tables
with random invertible basis changes: the result looks arbitrary but stays
exactly (co)associative, and the conjugating map doubles as a self-check
because the morphism constructors validate it.
"""

from __future__ import annotations

from random import Random

from .algebra import FinAlgebra, matrix_algebra, unitalize
from .coalgebra import CoalgebraMorphism, FinCoalgebra, comatrix, dual_coalgebra
from .combinat import Poset, Quiver, path_coalgebra, paths_by_length
from .comodule import FinComodule
from .errors import ValidationError
from .fields import Field
from .finite_dual import FinBialgebra, bialgebra_dual, group_bialgebra
from .linalg import SparseMatrix, basis_vec


def rand_scalar(F: Field, rng: Random):
    return F.from_int(rng.randint(-3, 3))


def rand_invertible(F: Field, rng: Random, n: int) -> SparseMatrix:
    """Product of random elementary row operations, so exactly invertible."""
    M = SparseMatrix.identity(F, n)
    for _ in range(2 * n + rng.randrange(3)):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        ent = dict(SparseMatrix.identity(F, n).entries)
        if kind == 0 and i != j:  # swap
            del ent[(i, i)], ent[(j, j)]
            ent[(i, j)] = F.one
            ent[(j, i)] = F.one
        elif kind == 1:  # scale by a unit
            c = F.from_int(rng.choice([1, -1, 2, 3]))
            if F.is_zero(c):
                c = F.one
            ent[(i, i)] = c
        elif i != j:  # shear
            c = rand_scalar(F, rng)
            if not F.is_zero(c):
                ent[(i, j)] = c
        M = SparseMatrix(F, n, n, ent) @ M
    return M


def conjugate_coalgebra(C: FinCoalgebra, P: SparseMatrix
                        ) -> tuple[FinCoalgebra, CoalgebraMorphism]:
    """Transport the structure along P; returns the new coalgebra and the
    isomorphism from C onto it (validated by construction)."""
    F = C.field
    Pinv = P.inverse()
    comult = {}
    for k in range(C.dim):
        v = Pinv.apply(basis_vec(F, C.dim, k))
        terms: dict = {}
        for a, va in enumerate(v):
            if F.is_zero(va):
                continue
            for (i, j), w in C.comult.get(a, {}).items():
                li = P.apply(basis_vec(F, C.dim, i))
                lj = P.apply(basis_vec(F, C.dim, j))
                coeff = F.mul(va, w)
                for ii, x in enumerate(li):
                    if F.is_zero(x):
                        continue
                    for jj, y in enumerate(lj):
                        if F.is_zero(y):
                            continue
                        key = (ii, jj)
                        s = F.add(terms.get(key, F.zero),
                                  F.mul(coeff, F.mul(x, y)))
                        if F.is_zero(s):
                            terms.pop(key, None)
                        else:
                            terms[key] = s
        if terms:
            comult[k] = terms
    counit = None
    if C.counit is not None:
        counit = tuple(Pinv.transpose().apply(tuple(C.counit)))
    D = FinCoalgebra(F, C.dim, comult, counit)
    iso = CoalgebraMorphism(C, D, P, counital=C.counit is not None)
    return D, iso


def conjugate_algebra(A: FinAlgebra, P: SparseMatrix) -> FinAlgebra:
    F = A.field
    Pinv = P.inverse()
    mult = {}
    for i in range(A.dim):
        vi = Pinv.apply(basis_vec(F, A.dim, i))
        for j in range(A.dim):
            vj = Pinv.apply(basis_vec(F, A.dim, j))
            prod = P.apply(A.multiply(vi, vj))
            table = {k: c for k, c in enumerate(prod) if not F.is_zero(c)}
            if table:
                mult[(i, j)] = table
    unit = tuple(P.apply(tuple(A.unit))) if A.unit is not None else None
    return FinAlgebra(F, A.dim, mult, unit)


def divided_power_coalgebra(F: Field, n: int, counital: bool = True) -> FinCoalgebra:
    """delta(c_k) = sum of c_i (x) c_j over i+j=k; dropping c_0 loses the counit."""
    lo = 0 if counital else 1
    dim = n - lo + 1
    comult = {}
    for k in range(lo, n + 1):
        terms = {}
        for i in range(lo, k - lo + 1):
            j = k - i
            if lo <= j <= n:
                terms[(i - lo, j - lo)] = F.one
        if terms:
            comult[k - lo] = terms
    counit = None
    if counital:
        counit = tuple(F.one if k == 0 else F.zero for k in range(dim))
    return FinCoalgebra(F, dim, comult, counit)


def grouplike_coalgebra(F: Field, n: int) -> FinCoalgebra:
    comult = {k: {(k, k): F.one} for k in range(n)}
    return FinCoalgebra(F, n, comult, tuple([F.one] * n))


def direct_sum_coalgebra(C1: FinCoalgebra, C2: FinCoalgebra) -> FinCoalgebra:
    F = C1.field
    if F.name() != C2.field.name():
        raise ValidationError("mixed fields in a direct sum")
    d1 = C1.dim
    comult = {k: dict(t) for k, t in C1.comult.items()}
    for k, t in C2.comult.items():
        comult[k + d1] = {(i + d1, j + d1): v for (i, j), v in t.items()}
    counit = None
    if C1.counit is not None and C2.counit is not None:
        counit = tuple(C1.counit) + tuple(C2.counit)
    return FinCoalgebra(F, d1 + C2.dim, comult, counit)


def direct_sum_algebra(A1: FinAlgebra, A2: FinAlgebra) -> FinAlgebra:
    F = A1.field
    d1 = A1.dim
    mult = {pair: dict(t) for pair, t in A1.mult.items()}
    for (i, j), t in A2.mult.items():
        mult[(i + d1, j + d1)] = {k + d1: v for k, v in t.items()}
    unit = None
    if A1.unit is not None and A2.unit is not None:
        unit = tuple(A1.unit) + tuple(A2.unit)
    return FinAlgebra(F, d1 + A2.dim, mult, unit)


def truncated_poly_algebra(F: Field, n: int, unital: bool = True) -> FinAlgebra:
    """K[t]/(t^{n+1}), or its positive part t*K[t]/(t^{n+1}) without a unit."""
    lo = 0 if unital else 1
    dim = n - lo + 1
    mult = {}
    for i in range(lo, n + 1):
        for j in range(lo, n + 1):
            if i + j <= n:
                mult[(i - lo, j - lo)] = {i + j - lo: F.one}
    unit = None
    if unital:
        unit = tuple(F.one if k == 0 else F.zero for k in range(dim))
    return FinAlgebra(F, dim, mult, unit)


def _counital_block(F: Field, rng: Random, dim: int) -> FinCoalgebra:
    kind = rng.randrange(4)
    if kind == 0:
        return grouplike_coalgebra(F, dim)
    if kind == 1:
        return divided_power_coalgebra(F, dim - 1)
    if kind == 2 and dim == 4:
        return comatrix(F, 2)
    if kind == 3 and dim >= 3:
        # two vertices with dim-2 parallel arrows: exactly dim paths
        Q = Quiver((0, 1), tuple((0, 1) for _ in range(dim - 2)))
        C, _ = path_coalgebra(F, Q, max_len=1)
        return C
    return divided_power_coalgebra(F, dim - 1)


def rand_coalgebra(F: Field, rng: Random, max_dim: int = 5,
                   counital: bool = True) -> FinCoalgebra:
    dim = rng.randint(1, max_dim)
    if counital:
        parts = []
        left = dim
        while left > 0:
            take = rng.randint(1, left)
            parts.append(_counital_block(F, rng, take))
            left -= parts[-1].dim
        C = parts[0]
        for p in parts[1:]:
            C = direct_sum_coalgebra(C, p)
    else:
        if dim == 1:
            C = FinCoalgebra(F, 1, {}, None)
        else:
            C = divided_power_coalgebra(F, dim, counital=False)
    P = rand_invertible(F, rng, C.dim)
    D, _ = conjugate_coalgebra(C, P)
    return D


def rand_algebra(F: Field, rng: Random, max_dim: int = 5,
                 unital: bool = True) -> FinAlgebra:
    dim = rng.randint(1, max_dim)
    if unital:
        parts = []
        left = dim
        while left > 0:
            if left >= 4 and rng.random() < 0.3:
                parts.append(matrix_algebra(F, 2))
                left -= 4
            else:
                take = rng.randint(1, left)
                parts.append(truncated_poly_algebra(F, take - 1))
                left -= take
        A = parts[0]
        for p in parts[1:]:
            A = direct_sum_algebra(A, p)
    else:
        A = truncated_poly_algebra(F, dim, unital=False)
    P = rand_invertible(F, rng, A.dim)
    return conjugate_algebra(A, P)


def rand_comodule(rng: Random, C: FinCoalgebra, copies: int = 1) -> FinComodule:
    """Conjugated direct sum of copies of the regular comodule."""
    F = C.field
    dim = C.dim * copies
    coaction = {}
    for c in range(copies):
        for t, table in C.comult.items():
            coaction[t + c * C.dim] = {(s + c * C.dim, k): v
                                       for (s, k), v in table.items()}
    P = rand_invertible(F, rng, dim)
    Pinv = P.inverse()
    base = FinComodule(C, dim, coaction)
    new = {}
    for t in range(dim):
        v = Pinv.apply(basis_vec(F, dim, t))
        terms: dict = {}
        for a, va in enumerate(v):
            if F.is_zero(va):
                continue
            for (s, k), w in base.coaction.get(a, {}).items():
                img = P.apply(basis_vec(F, dim, s))
                for ss, x in enumerate(img):
                    if F.is_zero(x):
                        continue
                    key = (ss, k)
                    acc = F.add(terms.get(key, F.zero),
                                F.mul(va, F.mul(w, x)))
                    if F.is_zero(acc):
                        terms.pop(key, None)
                    else:
                        terms[key] = acc
        if terms:
            new[t] = terms
    return FinComodule(C, dim, new)


def rand_morphism_triple(F: Field, rng: Random, max_dim: int = 4):
    """(D, C, f) with D counital, C a plain coalgebra, f: D -> C a morphism.

    This is the shape the counitalization adjunction lifts: f factors
    uniquely through the counitalization of C by a counital morphism.
    """
    from .coalgebra import counitalize

    D = rand_coalgebra(F, rng, max_dim=max_dim, counital=True)
    style = rng.randrange(4)
    if style == 0:
        C = rand_coalgebra(F, rng, max_dim=max_dim, counital=False)
        f = CoalgebraMorphism(D, C, SparseMatrix(F, C.dim, D.dim, {}),
                              counital=False)
        return D, C, f
    if style == 1:
        C = FinCoalgebra(F, D.dim, {k: dict(t) for k, t in D.comult.items()},
                         None)
        f = CoalgebraMorphism(D, C, SparseMatrix.identity(F, D.dim),
                              counital=False)
        return D, C, f
    if style == 2:
        P = rand_invertible(F, rng, D.dim)
        E, iso = conjugate_coalgebra(D, P)
        C = FinCoalgebra(F, E.dim, {k: dict(t) for k, t in E.comult.items()},
                         None)
        f = CoalgebraMorphism(D, C, P, counital=False)
        return D, C, f
    # canonical projection out of a counitalization
    C = rand_coalgebra(F, rng, max_dim=max_dim, counital=False)
    D1, proj = counitalize(C)
    return D1, C, proj


def rand_acyclic_quiver(rng: Random, max_vertices: int = 6,
                        max_arrows: int = 10, path_cap: int = 400) -> Quiver:
    """Arrows only go up a random vertex order, so the result is acyclic;
    rejection keeps the total path count under the cap."""
    while True:
        n = rng.randint(1, max_vertices)
        order = list(range(n))
        rng.shuffle(order)
        pos = {v: order.index(v) for v in range(n)}
        arrows = []
        for _ in range(rng.randint(0, max_arrows)):
            a = rng.randrange(n)
            b = rng.randrange(n)
            if pos[a] < pos[b]:
                arrows.append((a, b))
        Q = Quiver(tuple(range(n)), tuple(arrows))
        levels, _ = paths_by_length(Q, None)
        if sum(len(l) for l in levels) <= path_cap:
            return Q


def rand_poset(rng: Random, n: int) -> Poset:
    """Random order on 0..n-1 compatible with the integer order."""
    strict = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                strict.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(strict):
            for (c, d) in list(strict):
                if b == c and (a, d) not in strict:
                    strict.add((a, d))
                    changed = True
    rel = frozenset(strict) | frozenset((i, i) for i in range(n))
    return Poset(tuple(range(n)), rel)


def _s3_tables():
    elems = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    table = [[elems.index(compose(p, q)) for q in elems] for p in elems]
    inverses = [elems.index(tuple(sorted(range(3), key=lambda i: p[i])))
                for p in elems]
    return table, inverses


def hopf_instances(F: Field) -> list:
    """Four bialgebras with antipodes: Z/2, Z/4, S3, and functions on S3."""
    z2 = group_bialgebra(F, [[0, 1], [1, 0]], [0, 1])
    z4 = group_bialgebra(F, [[(i + j) % 4 for j in range(4)] for i in range(4)],
                         [(-i) % 4 for i in range(4)])
    table, inv = _s3_tables()
    s3 = group_bialgebra(F, table, inv)
    fns3 = bialgebra_dual(s3)
    return [("group-z2", z2), ("group-z4", z4), ("group-s3", s3),
            ("functions-s3", fns3)]


def rand_subspace(F: Field, rng: Random, ambient: int, max_vectors: int = 3) -> list:
    vecs = []
    for _ in range(rng.randint(0, max_vectors)):
        vecs.append(tuple(rand_scalar(F, rng) for _ in range(ambient)))
    return vecs

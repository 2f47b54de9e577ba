"""Finite-dimensional coalgebras given by comultiplication constants.

comult[k][(i,j)] is the coefficient of c_i (x) c_j in delta(c_k).  A counit
is optional; adjoining one is the job of counitalize.  Coassociativity is
exactly associativity of the transposed table, and the code leans on that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraMorphism,
    FinAlgebra,
    check_associative,
    radical,
    regular_matrix_embedding,
    unitalize,
)
from .errors import DimensionMismatch, ValidationError
from .fields import Field
from .linalg import RowSpace, SparseMatrix, basis_vec


def _clean_comult(F: Field, comult: dict) -> dict:
    out = {}
    for k, terms in comult.items():
        keep = {ij: v for ij, v in terms.items() if not F.is_zero(v)}
        if keep:
            out[k] = keep
    return out


def transpose_comult(comult: dict) -> dict:
    """comult[k][(i,j)] = c  becomes  mult[(i,j)][k] = c."""
    mult: dict = {}
    for k, terms in comult.items():
        for (i, j), v in terms.items():
            mult.setdefault((i, j), {})[k] = v
    return mult


def transpose_mult(mult: dict) -> dict:
    comult: dict = {}
    for (i, j), terms in mult.items():
        for k, v in terms.items():
            comult.setdefault(k, {})[(i, j)] = v
    return comult


@dataclass(frozen=True)
class FinCoalgebra:
    """Coassociative coalgebra on basis c_0..c_{dim-1}, optionally counital."""

    field: Field
    dim: int
    comult: dict
    counit: tuple | None = None

    def __post_init__(self):
        F = self.field
        for k, terms in self.comult.items():
            if not 0 <= k < self.dim:
                raise DimensionMismatch(f"comult key {k} out of range")
            for (i, j) in terms:
                if not (0 <= i < self.dim and 0 <= j < self.dim):
                    raise DimensionMismatch(f"comult target ({i},{j}) out of range")
        object.__setattr__(self, "comult", _clean_comult(F, self.comult))
        check_associative(F, transpose_comult(self.comult), self.dim)
        if self.counit is not None:
            eps = tuple(self.counit)
            if len(eps) != self.dim:
                raise DimensionMismatch("counit has wrong length")
            object.__setattr__(self, "counit", eps)
            for k in range(self.dim):
                left = {}
                right = {}
                for (i, j), v in self.comult.get(k, {}).items():
                    if not F.is_zero(eps[i]):
                        s = F.add(left.get(j, F.zero), F.mul(eps[i], v))
                        left[j] = s
                    if not F.is_zero(eps[j]):
                        s = F.add(right.get(i, F.zero), F.mul(eps[j], v))
                        right[i] = s
                left = {j: v for j, v in left.items() if not F.is_zero(v)}
                right = {i: v for i, v in right.items() if not F.is_zero(v)}
                if left != {k: F.one} or right != {k: F.one}:
                    raise ValidationError(f"counit axiom fails on basis element {k}")

    # -- coproducts -----------------------------------------------------------

    def comult_of(self, x: tuple) -> dict:
        """delta(x) as a sparse {(i,j): scalar} tensor."""
        F = self.field
        acc: dict = {}
        for k, xk in enumerate(x):
            if F.is_zero(xk):
                continue
            for ij, v in self.comult.get(k, {}).items():
                s = F.add(acc.get(ij, F.zero), F.mul(xk, v))
                if F.is_zero(s):
                    acc.pop(ij, None)
                else:
                    acc[ij] = s
        return acc

    def counit_of(self, x: tuple):
        if self.counit is None:
            raise ValidationError("coalgebra has no counit")
        F = self.field
        s = F.zero
        for k, xk in enumerate(x):
            s = F.add(s, F.mul(self.counit[k], xk))
        return s

    def is_counital(self) -> bool:
        return self.counit is not None


@dataclass(frozen=True)
class CoalgebraMorphism:
    """Linear map f with delta(f(c)) = (f (x) f)(delta(c)) on every basis c."""

    source: FinCoalgebra
    target: FinCoalgebra
    matrix: SparseMatrix
    counital: bool = False

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise DimensionMismatch("morphism matrix shape mismatch")
        F = self.source.field
        if F != self.target.field:
            raise ValidationError("morphism between different base fields")
        imgs: list[dict] = [dict() for _ in range(self.source.dim)]
        for (s, k), v in self.matrix.entries.items():
            imgs[k][s] = v
        for k in range(self.source.dim):
            lhs: dict = {}
            for s, c in imgs[k].items():
                for ab, v in self.target.comult.get(s, {}).items():
                    x = F.add(lhs.get(ab, F.zero), F.mul(c, v))
                    if F.is_zero(x):
                        lhs.pop(ab, None)
                    else:
                        lhs[ab] = x
            rhs: dict = {}
            for (i, j), v in self.source.comult.get(k, {}).items():
                for a, va in imgs[i].items():
                    cva = F.mul(v, va)
                    for b, vb in imgs[j].items():
                        x = F.add(rhs.get((a, b), F.zero), F.mul(cva, vb))
                        if F.is_zero(x):
                            rhs.pop((a, b), None)
                        else:
                            rhs[(a, b)] = x
            if lhs != rhs:
                raise ValidationError(f"coalgebra morphism fails on basis element {k}")
        if self.counital:
            if self.source.counit is None or self.target.counit is None:
                raise ValidationError("counital morphism requires counits on both sides")
            for k in range(self.source.dim):
                img = self.matrix.apply(basis_vec(F, self.source.dim, k))
                if self.target.counit_of(img) != self.source.counit[k]:
                    raise ValidationError("morphism does not preserve the counit")

    def __call__(self, x: tuple) -> tuple:
        return self.matrix.apply(x)

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()


def compose_coalgebra(g: CoalgebraMorphism, f: CoalgebraMorphism) -> CoalgebraMorphism:
    if f.target != g.source:
        raise ValidationError("composition target/source mismatch")
    return CoalgebraMorphism(f.source, g.target, g.matrix @ f.matrix,
                             counital=f.counital and g.counital)


# ---------------------------------------------------------------------------
# counitalization

def counitalize(C: FinCoalgebra) -> tuple[FinCoalgebra, CoalgebraMorphism]:
    """Adjoin a grouplike e: delta(c) gains c(x)e + e(x)c, and eps picks the
    e-coordinate.  Returns the enlarged coalgebra and the projection killing e."""
    F = C.field
    n = C.dim
    comult = {}
    for k in range(n):
        terms = dict(C.comult.get(k, {}))
        terms[(k, n)] = F.add(terms.get((k, n), F.zero), F.one)
        terms[(n, k)] = F.add(terms.get((n, k), F.zero), F.one)
        comult[k] = terms
    comult[n] = {(n, n): F.one}
    counit = tuple([F.zero] * n + [F.one])
    C1 = FinCoalgebra(F, n + 1, comult, counit)
    proj = CoalgebraMorphism(C1, C, SparseMatrix(F, n, n + 1, {(i, i): F.one for i in range(n)}))
    return C1, proj


def counital_lift(f: CoalgebraMorphism, C1: FinCoalgebra, proj: CoalgebraMorphism
                  ) -> tuple[CoalgebraMorphism, int]:
    """Unique counital lift of f: D -> C through proj: C1 -> C.

    The lift is pinned by the linear constraints proj . g = f and
    eps_C1 . g = eps_D; the second return value is the dimension of the
    homogeneous solution space (always 0, computed rather than assumed).
    """
    D = f.source
    if D.counit is None:
        raise ValidationError("lift needs a counital source")
    F = D.field
    n = C1.dim
    # stack proj's matrix and the counit row; kernel dim 0 means uniqueness
    ent = dict(proj.matrix.entries)
    for j, v in enumerate(C1.counit):
        if not F.is_zero(v):
            ent[(proj.matrix.rows, j)] = v
    stacked = SparseMatrix(F, proj.matrix.rows + 1, n, ent)
    freedom = len(stacked.kernel_basis()) * D.dim
    cols = {}
    for k in range(D.dim):
        rhs = tuple(list(f.matrix.apply(basis_vec(F, D.dim, k))) + [D.counit[k]])
        sol = stacked.solve(rhs)
        if sol is None:
            raise ValidationError("lift constraints are inconsistent")
        cols[k] = sol
    ent = {}
    for k, col in cols.items():
        for i, v in enumerate(col):
            if not F.is_zero(v):
                ent[(i, k)] = v
    g = CoalgebraMorphism(D, C1, SparseMatrix(F, n, D.dim, ent), counital=True)
    for k in range(D.dim):
        e = basis_vec(F, D.dim, k)
        if proj(g(e)) != f(e):
            raise ValidationError("lift does not project back to f")
    return g, freedom


# ---------------------------------------------------------------------------
# duals

def dual_algebra(C: FinCoalgebra) -> FinAlgebra:
    """Convolution algebra on the dual basis; unital exactly when C is counital."""
    return FinAlgebra(C.field, C.dim, transpose_comult(C.comult),
                      tuple(C.counit) if C.counit is not None else None)


def dual_coalgebra(A: FinAlgebra) -> FinCoalgebra:
    """Full dual of a finite-dimensional algebra as a coalgebra on the dual
    basis; the counit is evaluation at the unit, when there is one."""
    return FinCoalgebra(A.field, A.dim, transpose_mult(A.mult),
                        tuple(A.unit) if A.unit is not None else None)


def dual_unitalization_iso(C: FinCoalgebra) -> AlgebraMorphism:
    """Unitalizing the dual equals dualizing the counitalization; under
    dual-basis indexing the isomorphism is the identity matrix."""
    B1, _ = unitalize(dual_algebra(C))
    C1, _ = counitalize(C)
    D = dual_algebra(C1)
    iso = AlgebraMorphism(B1, D, SparseMatrix.identity(C.field, C.dim + 1), unital=True)
    if not iso.is_bijective():
        raise ValidationError("unitalization/dual comparison is not bijective")
    return iso


# ---------------------------------------------------------------------------
# comatrix coalgebras

def comatrix(F: Field, n: int) -> FinCoalgebra:
    """Matrix-unit coalgebra: delta(e_ij) = sum_k e_ik (x) e_kj, eps = [i == j]."""
    comult = {}
    counit = [F.zero] * (n * n)
    for i in range(n):
        for j in range(n):
            comult[i * n + j] = {(i * n + k, k * n + j): F.one for k in range(n)}
        counit[i * n + i] = F.one
    return FinCoalgebra(F, n * n, comult, tuple(counit))


def comatrix_cover(C: FinCoalgebra) -> CoalgebraMorphism:
    """Surjection from the (dim+1)-square comatrix coalgebra onto C, obtained
    by dualizing the regular matrix embedding of the dual algebra."""
    F = C.field
    n = C.dim + 1
    pi = regular_matrix_embedding(dual_algebra(C))
    ent = {}
    for (rc, k), v in pi.matrix.entries.items():
        ent[(k, rc)] = v
    theta = CoalgebraMorphism(comatrix(F, n), C, SparseMatrix(F, C.dim, n * n, ent))
    if theta.matrix.rank() != C.dim:
        raise ValidationError("comatrix cover is not surjective")
    # the image family satisfies the comatrix identity in C
    family = [theta(basis_vec(F, n * n, idx)) for idx in range(n * n)]
    for i in range(n):
        for j in range(n):
            lhs = C.comult_of(family[i * n + j])
            rhs: dict = {}
            for k in range(n):
                a, b = family[i * n + k], family[k * n + j]
                for s, va in enumerate(a):
                    if F.is_zero(va):
                        continue
                    for t, vb in enumerate(b):
                        if F.is_zero(vb):
                            continue
                        x = F.add(rhs.get((s, t), F.zero), F.mul(va, vb))
                        if F.is_zero(x):
                            rhs.pop((s, t), None)
                        else:
                            rhs[(s, t)] = x
            if lhs != rhs:
                raise ValidationError(f"comatrix identity fails at ({i},{j})")
    return theta


# ---------------------------------------------------------------------------
# subcoalgebras

def _tensor_rows_cols(F: Field, dim: int, tensor: dict):
    """Rows and columns of a sparse {(i,j): v} tensor as vectors in F^dim."""
    rows: dict[int, list] = {}
    cols: dict[int, list] = {}
    for (i, j), v in tensor.items():
        rows.setdefault(i, [F.zero] * dim)[j] = v
        cols.setdefault(j, [F.zero] * dim)[i] = v
    return [tuple(r) for r in rows.values()], [tuple(c) for c in cols.values()]


def subcoalgebra_on_span(C: FinCoalgebra, vectors) -> tuple[FinCoalgebra, CoalgebraMorphism]:
    """Induced coalgebra on a span, or ValidationError if it is not closed."""
    F = C.field
    rs = RowSpace(F, C.dim, vectors)
    basis = rs.basis()
    d = len(basis)
    comult = {}
    for a, vec in enumerate(basis):
        tensor = C.comult_of(vec)
        rows, cols = _tensor_rows_cols(F, C.dim, tensor)
        for w in rows + cols:
            if not rs.contains(w):
                raise ValidationError("span is not a subcoalgebra")
        # rewrite the tensor in the sub-basis, first by rows then by columns
        terms = {}
        mids: dict[int, list] = {}
        for (i, j), v in tensor.items():
            mids.setdefault(i, [F.zero] * C.dim)[j] = v
        for i, row in list(mids.items()):
            coords = rs.coords(tuple(row))
            for b, cb in enumerate(coords):
                if not F.is_zero(cb):
                    terms.setdefault(b, {})[i] = cb
        table = {}
        for b, by_i in terms.items():
            vec_i = [F.zero] * C.dim
            for i, c in by_i.items():
                vec_i[i] = c
            coords = rs.coords(tuple(vec_i))
            for a2, ca in enumerate(coords):
                if not F.is_zero(ca):
                    table[(a2, b)] = ca
        if table:
            comult[a] = table
    counit = None
    if C.counit is not None:
        counit = tuple(C.counit_of(v) for v in basis)
    D = FinCoalgebra(F, d, comult, counit)
    ent = {}
    for a, vec in enumerate(basis):
        for i, v in enumerate(vec):
            if not F.is_zero(v):
                ent[(i, a)] = v
    incl = CoalgebraMorphism(D, C, SparseMatrix(F, C.dim, d, ent),
                             counital=counit is not None and C.counit is not None)
    return D, incl


def subcoalgebra_generated(C: FinCoalgebra, x: tuple) -> tuple[FinCoalgebra, CoalgebraMorphism]:
    """Smallest subcoalgebra containing x: close the span under all rows and
    columns of coefficient tensors of delta."""
    F = C.field
    rs = RowSpace(F, C.dim)
    queue = []
    if rs.add(x):
        queue.append(tuple(x))
    while queue:
        v = queue.pop()
        tensor = C.comult_of(v)
        rows, cols = _tensor_rows_cols(F, C.dim, tensor)
        for w in rows + cols:
            if rs.add(w):
                queue.append(w)
    return subcoalgebra_on_span(C, rs.basis())


def coradical(C: FinCoalgebra) -> tuple[FinCoalgebra, CoalgebraMorphism]:
    """Largest cosemisimple subcoalgebra: the annihilator of the radical of
    the dual algebra."""
    F = C.field
    rad = radical(dual_algebra(C))
    ent = {}
    for r, f in enumerate(rad.basis):
        for j, v in enumerate(f):
            if not F.is_zero(v):
                ent[(r, j)] = v
    M = SparseMatrix(F, len(rad.basis), C.dim, ent)
    vectors = M.kernel_basis() if rad.basis else [basis_vec(F, C.dim, i) for i in range(C.dim)]
    D, incl = subcoalgebra_on_span(C, vectors)
    # spot-check: subcoalgebras generated inside the socle stay inside it
    rs = RowSpace(F, C.dim, vectors)
    probes = list(vectors)
    for i in range(len(vectors) - 1):
        probes.append(tuple(F.add(a, b) for a, b in zip(vectors[i], vectors[i + 1])))
    for v in probes:
        sub, sub_incl = subcoalgebra_generated(C, v)
        for b in range(sub.dim):
            img = sub_incl(basis_vec(F, sub.dim, b))
            if not rs.contains(img):
                raise ValidationError("socle candidate is not closed under generation")
    return D, incl

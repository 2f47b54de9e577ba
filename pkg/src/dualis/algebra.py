"""Finite-dimensional associative algebras given by structure constants.

An algebra is stored as a sparse table mult[(i,j)][k] = coefficient of the
k-th basis element in the product b_i * b_j; an absent (i,j) key means the
product of those basis elements is zero.  Algebras need not have a unit;
adjoining one is the job of unitalize.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    DimensionMismatch,
    NotTwoSided,
    UnsupportedCharacteristic,
    ValidationError,
)
from .fields import Field
from .linalg import RowSpace, SparseMatrix, basis_vec, intersect_spans, vec_is_zero


def _clean_table(F: Field, mult: dict) -> dict:
    out = {}
    for key, terms in mult.items():
        keep = {k: v for k, v in terms.items() if not F.is_zero(v)}
        if keep:
            out[key] = keep
    return out


def _mul_dict(F: Field, mult: dict, x: dict, y: dict) -> dict:
    acc: dict = {}
    for i, xi in x.items():
        for j, yj in y.items():
            terms = mult.get((i, j))
            if not terms:
                continue
            c = F.mul(xi, yj)
            for k, v in terms.items():
                s = F.add(acc.get(k, F.zero), F.mul(c, v))
                if F.is_zero(s):
                    acc.pop(k, None)
                else:
                    acc[k] = s
    return acc


def check_associative(F: Field, mult: dict, dim: int) -> None:
    """Raise unless the table is associative.

    Only triples where one side can be nonzero are visited, so monomial-type
    tables stay cheap.
    """
    right_of: dict[int, set] = {}
    left_of: dict[int, set] = {}
    for (i, j) in mult:
        right_of.setdefault(i, set()).add(j)
        left_of.setdefault(j, set()).add(i)
    triples = set()
    for (i, j), terms in mult.items():
        for l in terms:
            for k in right_of.get(l, ()):
                triples.add((i, j, k))
    for (j, k), terms in mult.items():
        for l in terms:
            for i in left_of.get(l, ()):
                triples.add((i, j, k))
    for (i, j, k) in triples:
        lhs = _mul_dict(F, mult, mult.get((i, j), {}), {k: F.one})
        rhs = _mul_dict(F, mult, {i: F.one}, mult.get((j, k), {}))
        if lhs != rhs:
            raise ValidationError(f"associativity fails at basis triple ({i},{j},{k})")


@dataclass(frozen=True)
class FinAlgebra:
    """Associative algebra on basis b_0..b_{dim-1}, optionally unital."""

    field: Field
    dim: int
    mult: dict
    unit: tuple | None = None

    def __post_init__(self):
        F = self.field
        for (i, j), terms in self.mult.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"mult key ({i},{j}) out of range")
            for k in terms:
                if not 0 <= k < self.dim:
                    raise DimensionMismatch(f"mult target {k} out of range")
        object.__setattr__(self, "mult", _clean_table(F, self.mult))
        check_associative(F, self.mult, self.dim)
        if self.unit is not None:
            u = tuple(self.unit)
            if len(u) != self.dim:
                raise DimensionMismatch("unit has wrong length")
            object.__setattr__(self, "unit", u)
            ud = {i: c for i, c in enumerate(u) if not F.is_zero(c)}
            for i in range(self.dim):
                e = {i: F.one}
                if _mul_dict(F, self.mult, ud, e) != e or _mul_dict(F, self.mult, e, ud) != e:
                    raise ValidationError(f"declared unit fails on basis element {i}")

    # -- products -------------------------------------------------------------

    def multiply(self, x: tuple, y: tuple) -> tuple:
        F = self.field
        xd = {i: v for i, v in enumerate(x) if not F.is_zero(v)}
        yd = {i: v for i, v in enumerate(y) if not F.is_zero(v)}
        acc = _mul_dict(F, self.mult, xd, yd)
        out = [F.zero] * self.dim
        for k, v in acc.items():
            out[k] = v
        return tuple(out)

    def basis_product(self, i: int, j: int) -> dict:
        return dict(self.mult.get((i, j), {}))

    def is_unital(self) -> bool:
        return self.unit is not None

    def left_mult_matrix(self, x: tuple) -> SparseMatrix:
        """Matrix of y -> x*y on the algebra's own basis."""
        F = self.field
        ent = {}
        xd = {i: v for i, v in enumerate(x) if not F.is_zero(v)}
        for j in range(self.dim):
            col = _mul_dict(F, self.mult, xd, {j: F.one})
            for k, v in col.items():
                ent[(k, j)] = v
        return SparseMatrix(F, self.dim, self.dim, ent)


def matrix_algebra(F: Field, n: int) -> FinAlgebra:
    """Full matrix algebra; basis unit e_{rc} sits at index r*n + c."""
    mult = {}
    for r in range(n):
        for c in range(n):
            for d in range(n):
                mult[(r * n + c, c * n + d)] = {r * n + d: F.one}
    unit = [F.zero] * (n * n)
    for r in range(n):
        unit[r * n + r] = F.one
    return FinAlgebra(F, n * n, mult, tuple(unit))


@dataclass(frozen=True)
class AlgebraMorphism:
    """Linear map between algebras, multiplicative on basis pairs."""

    source: FinAlgebra
    target: FinAlgebra
    matrix: SparseMatrix
    unital: bool = False

    def __post_init__(self):
        if self.matrix.rows != self.target.dim or self.matrix.cols != self.source.dim:
            raise DimensionMismatch("morphism matrix shape mismatch")
        F = self.source.field
        if F != self.target.field:
            raise ValidationError("morphism between different base fields")
        images = [self.matrix.apply(basis_vec(F, self.source.dim, i))
                  for i in range(self.source.dim)]
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.matrix.apply(self.source.multiply(
                    basis_vec(F, self.source.dim, i), basis_vec(F, self.source.dim, j)))
                rhs = self.target.multiply(images[i], images[j])
                if lhs != rhs:
                    raise ValidationError(f"morphism not multiplicative at ({i},{j})")
        if self.unital:
            if self.source.unit is None or self.target.unit is None:
                raise ValidationError("unital morphism requires units on both sides")
            if self.matrix.apply(self.source.unit) != self.target.unit:
                raise ValidationError("morphism does not map unit to unit")

    def __call__(self, x: tuple) -> tuple:
        return self.matrix.apply(x)

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()


def compose(g: AlgebraMorphism, f: AlgebraMorphism) -> AlgebraMorphism:
    if f.target is not g.source and f.target != g.source:
        raise ValidationError("composition target/source mismatch")
    return AlgebraMorphism(f.source, g.target, g.matrix @ f.matrix,
                           unital=f.unital and g.unital)


# ---------------------------------------------------------------------------
# unitalization

def unitalize(A: FinAlgebra) -> tuple[FinAlgebra, AlgebraMorphism]:
    """Adjoin a unit u: (a + s*u)(b + t*u) = ab + s*b + t*a + st*u.

    Returns the enlarged algebra (unit at the last index) and the inclusion.
    """
    F = A.field
    n = A.dim
    mult = {k: dict(v) for k, v in A.mult.items()}
    for i in range(n):
        mult[(i, n)] = {i: F.one}
        mult[(n, i)] = {i: F.one}
    mult[(n, n)] = {n: F.one}
    unit = tuple([F.zero] * n + [F.one])
    A1 = FinAlgebra(F, n + 1, mult, unit)
    incl = AlgebraMorphism(A, A1, SparseMatrix(F, n + 1, n, {(i, i): F.one for i in range(n)}))
    return A1, incl


def unitalize_morphism(f: AlgebraMorphism, A1: FinAlgebra, B1: FinAlgebra) -> AlgebraMorphism:
    """Extend f: A -> B to the unitalizations by sending u to u."""
    F = f.source.field
    n, m = f.source.dim, f.target.dim
    ent = {(i, j): v for (i, j), v in f.matrix.entries.items()}
    ent[(m, n)] = F.one
    return AlgebraMorphism(A1, B1, SparseMatrix(F, m + 1, n + 1, ent), unital=True)


def regular_matrix_embedding(A: FinAlgebra) -> AlgebraMorphism:
    """Embed A into the (dim+1)-square matrix algebra by left multiplication
    on the unitalization.  Injective because a*u = a recovers the element."""
    F = A.field
    n = A.dim
    A1, _ = unitalize(A)
    M = matrix_algebra(F, n + 1)
    ent = {}
    for i in range(n):
        a = basis_vec(F, n + 1, i)
        for c in range(n + 1):
            col = A1.multiply(a, basis_vec(F, n + 1, c))
            for r, v in enumerate(col):
                if not F.is_zero(v):
                    ent[(r * (n + 1) + c, i)] = v
    mor = AlgebraMorphism(A, M, SparseMatrix(F, (n + 1) ** 2, n, ent))
    if not mor.is_injective():
        raise ValidationError("regular embedding unexpectedly non-injective")
    return mor


# ---------------------------------------------------------------------------
# ideals

@dataclass(frozen=True)
class SubspaceIdeal:
    """A subspace of an algebra closed under the flagged multiplications."""

    ambient: FinAlgebra
    basis: tuple
    sided: str  # "left" | "right" | "two"

    def __post_init__(self):
        if self.sided not in ("left", "right", "two"):
            raise ValidationError(f"bad sidedness {self.sided!r}")
        A = self.ambient
        F = A.field
        rs = RowSpace(F, A.dim, self.basis)
        if rs.dim != len(self.basis):
            raise ValidationError("ideal basis is linearly dependent")
        object.__setattr__(self, "basis", tuple(rs.basis()))
        for v in self.basis:
            for i in range(A.dim):
                e = basis_vec(F, A.dim, i)
                if self.sided in ("left", "two"):
                    if not rs.contains(A.multiply(e, v)):
                        raise ValidationError("subspace not closed under left multiplication")
                if self.sided in ("right", "two"):
                    if not rs.contains(A.multiply(v, e)):
                        raise ValidationError("subspace not closed under right multiplication")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: tuple) -> bool:
        return RowSpace(self.ambient.field, self.ambient.dim, self.basis).contains(vec)


def ideal_closure(A: FinAlgebra, seed_vectors, sided: str = "two") -> SubspaceIdeal:
    """Smallest sided ideal containing the seed vectors (span fixpoint)."""
    if sided not in ("left", "right", "two"):
        raise ValidationError(f"bad sidedness {sided!r}")
    F = A.field
    rs = RowSpace(F, A.dim)
    queue = []
    for v in seed_vectors:
        if rs.add(v):
            queue.append(tuple(v))
    while queue:
        v = queue.pop()
        for i in range(A.dim):
            e = basis_vec(F, A.dim, i)
            if sided in ("left", "two"):
                w = A.multiply(e, v)
                if rs.add(w):
                    queue.append(w)
            if sided in ("right", "two"):
                w = A.multiply(v, e)
                if rs.add(w):
                    queue.append(w)
    return SubspaceIdeal(A, tuple(rs.basis()), sided)


def quotient_algebra(A: FinAlgebra, I: SubspaceIdeal) -> tuple[FinAlgebra, AlgebraMorphism]:
    """Quotient by a two-sided ideal, on the echelon complement of its basis."""
    if I.ambient != A:
        raise ValidationError("ideal belongs to a different algebra")
    if I.sided != "two":
        raise NotTwoSided("quotient requires a two-sided ideal")
    F = A.field
    rs = RowSpace(F, A.dim, I.basis)
    pivots = set(rs.pivots())
    comp = [c for c in range(A.dim) if c not in pivots]
    q = len(comp)

    def project(vec: tuple) -> tuple:
        res = rs.residual(vec)
        return tuple(res[c] for c in comp)

    mult = {}
    for a, ca in enumerate(comp):
        for b, cb in enumerate(comp):
            prod = project(A.multiply(basis_vec(F, A.dim, ca), basis_vec(F, A.dim, cb)))
            terms = {k: v for k, v in enumerate(prod) if not F.is_zero(v)}
            if terms:
                mult[(a, b)] = terms
    unit = project(A.unit) if A.unit is not None else None
    Q = FinAlgebra(F, q, mult, unit)
    ent = {}
    for i in range(A.dim):
        col = project(basis_vec(F, A.dim, i))
        for r, v in enumerate(col):
            if not F.is_zero(v):
                ent[(r, i)] = v
    proj = AlgebraMorphism(A, Q, SparseMatrix(F, q, A.dim, ent))
    return Q, proj


def cofinite_two_sided_inside(A: FinAlgebra, I: SubspaceIdeal) -> SubspaceIdeal:
    """Two-sided ideal I âˆ© Ker(phi) inside a left ideal I, where phi is the
    representation of A on the left module A/I."""
    if I.sided not in ("left", "two"):
        raise ValidationError("expected a left ideal")
    F = A.field
    rs = RowSpace(F, A.dim, I.basis)
    pivots = set(rs.pivots())
    comp = [c for c in range(A.dim) if c not in pivots]
    q = len(comp)

    def project(vec: tuple) -> tuple:
        res = rs.residual(vec)
        return tuple(res[c] for c in comp)

    # column i of the big matrix is phi(b_i) flattened (q*q entries)
    ent = {}
    for i in range(A.dim):
        e = basis_vec(F, A.dim, i)
        for c, cc in enumerate(comp):
            col = project(A.multiply(e, basis_vec(F, A.dim, cc)))
            for r, v in enumerate(col):
                if not F.is_zero(v):
                    ent[(r * q + c, i)] = v
    phi = SparseMatrix(F, q * q, A.dim, ent)
    ker = phi.kernel_basis()
    inter = intersect_spans(F, list(I.basis), ker, A.dim)
    J = SubspaceIdeal(A, tuple(inter), "two")
    for v in J.basis:
        if not rs.contains(v):
            raise ValidationError("result escaped the given left ideal")
    return J


def radical(A: FinAlgebra) -> SubspaceIdeal:
    """Jacobson radical via the trace form of left multiplication on the
    unitalization.  Requires characteristic 0 or p > dim(A) + 1."""
    F = A.field
    p = F.characteristic
    if p != 0 and p <= A.dim + 1:
        raise UnsupportedCharacteristic(
            f"radical needs char 0 or p > dim+1 = {A.dim + 1}, got p = {p}")
    n = A.dim
    # t[l] = trace of left multiplication by b_l on the unitalization
    t = [F.zero] * n
    for (l, k), terms in A.mult.items():
        c = terms.get(k)
        if c is not None:
            t[l] = F.add(t[l], c)
    ent = {}
    for (i, j), terms in A.mult.items():
        s = F.zero
        for l, v in terms.items():
            s = F.add(s, F.mul(v, t[l]))
        if not F.is_zero(s):
            ent[(i, j)] = s
    G = SparseMatrix(F, n, n, ent)
    rad = SubspaceIdeal(A, tuple(G.kernel_basis()), "two")
    # nilpotency certificate: powers of the radical reach zero
    power = list(rad.basis)
    steps = 0
    while power:
        steps += 1
        if steps > n + 1:
            raise ValidationError("radical candidate is not nilpotent")
        nxt = RowSpace(F, n)
        for x in power:
            for y in rad.basis:
                nxt.add(A.multiply(x, y))
        power = nxt.basis()
    return rad

"""Finite duals of graded algebras, observed through a truncation window.

A functional f on a graded algebra belongs to the finite dual exactly when
its two-sided translates a -> f <- b span a finite-dimensional space.  With
only finitely many degrees stored we cannot decide that outright, so
membership_bounded returns certificates with explicit semantics:

  Member(dim, ...)   the translate span, restricted to the window of degrees
                     0..bound, reached dimension dim <= bound and a full
                     extra generation of translates added nothing;
  NotWithinBound     the restricted span already exceeds the bound, which is
                     a proof that the true span does too (restriction can
                     only lose dimension);
  InsufficientTruncation is raised when the stored degrees cannot support
                     the generation budget (known degree < 2 * bound) or the
                     span is still growing when the budget runs out.

Sequences are the one-variable special case: a functional on K[X] is a
sequence, translates are shifts, and membership within bound d is a linear
recurrence of order at most d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import FinAlgebra, check_associative
from .coalgebra import (
    CoalgebraMorphism,
    FinCoalgebra,
    counitalize,
    dual_coalgebra,
    transpose_comult,
    transpose_mult,
    unitalize,
)
from .errors import (
    DimensionMismatch,
    IncompatibleStructure,
    InsufficientData,
    InsufficientTruncation,
    OperationCancelled,
    ValidationError,
)
from .fields import Field
from .linalg import RowSpace, SparseMatrix, basis_vec


class CancelToken:
    """Cooperative cancellation flag for the long-running searches."""

    def __init__(self):
        self.cancelled = False

    def cancel(self):
        self.cancelled = True

    def check(self):
        if self.cancelled:
            raise OperationCancelled("operation cancelled")


@dataclass(frozen=True)
class GradedAlgebra:
    """Nonnegatively graded algebra with basis keys (degree, index).

    component_dims[d] is the dimension of the degree-d part, and
    mult[(key1, key2)][key3] the structure constant; output degrees must add.
    truncated means products of total degree beyond the last stored one were
    dropped (a quotient, still associative) rather than genuinely zero.
    """

    field: Field
    component_dims: tuple
    mult: dict
    unit: dict | None = None
    truncated: bool = False
    labels: dict | None = None

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "component_dims", tuple(self.component_dims))
        dims = self.component_dims
        if not dims:
            raise DimensionMismatch("graded algebra needs at least degree 0")

        def ok(key):
            d, i = key
            return 0 <= d < len(dims) and 0 <= i < dims[d]

        clean = {}
        for (k1, k2), terms in self.mult.items():
            if not (ok(k1) and ok(k2)):
                raise DimensionMismatch(f"mult key ({k1},{k2}) out of range")
            keep = {}
            for k3, v in terms.items():
                if not ok(k3):
                    raise DimensionMismatch(f"mult target {k3} out of range")
                if k3[0] != k1[0] + k2[0]:
                    raise ValidationError(
                        f"product of degrees {k1[0]},{k2[0]} lands in degree {k3[0]}")
                if not F.is_zero(v):
                    keep[k3] = v
            if keep:
                clean[(k1, k2)] = keep
        object.__setattr__(self, "mult", clean)
        check_associative(F, clean, 0)
        if self.unit is not None:
            u = {k: v for k, v in self.unit.items() if not F.is_zero(v)}
            for k in u:
                if not ok(k) or k[0] != 0:
                    raise ValidationError("unit must live in degree 0")
            object.__setattr__(self, "unit", u)
            for key in self.basis_keys():
                if self.mul_flat(u, {key: F.one}) != {key: F.one}:
                    raise ValidationError(f"unit fails on the left at {key}")
                if self.mul_flat({key: F.one}, u) != {key: F.one}:
                    raise ValidationError(f"unit fails on the right at {key}")

    @property
    def max_degree(self) -> int:
        return len(self.component_dims) - 1

    @property
    def total_dim(self) -> int:
        return sum(self.component_dims)

    def basis_keys(self):
        for d, nd in enumerate(self.component_dims):
            for i in range(nd):
                yield (d, i)

    def label(self, key) -> str:
        if self.labels and key in self.labels:
            return self.labels[key]
        return f"b[{key[0]},{key[1]}]"

    def mul_flat(self, x: dict, y: dict) -> dict:
        F = self.field
        acc: dict = {}
        for k1, a in x.items():
            for k2, b in y.items():
                terms = self.mult.get((k1, k2))
                if not terms:
                    continue
                c = F.mul(a, b)
                for k3, v in terms.items():
                    s = F.add(acc.get(k3, F.zero), F.mul(c, v))
                    if F.is_zero(s):
                        acc.pop(k3, None)
                    else:
                        acc[k3] = s
        return acc

    def as_fin_algebra(self) -> tuple[FinAlgebra, dict]:
        """Flatten to a FinAlgebra; returns it plus the key -> index map."""
        index = {key: n for n, key in enumerate(self.basis_keys())}
        mult = {}
        for (k1, k2), terms in self.mult.items():
            mult[(index[k1], index[k2])] = {index[k3]: v for k3, v in terms.items()}
        unit = None
        if self.unit is not None:
            u = [self.field.zero] * self.total_dim
            for k, v in self.unit.items():
                u[index[k]] = v
            unit = tuple(u)
        return FinAlgebra(self.field, self.total_dim, mult, unit), index


def polynomial_algebra(F: Field, max_degree: int) -> GradedAlgebra:
    """K[X] stored through degree max_degree, products beyond it dropped."""
    one = F.one
    mult = {}
    for d1 in range(max_degree + 1):
        for d2 in range(max_degree + 1 - d1):
            mult[((d1, 0), (d2, 0))] = {(d1 + d2, 0): one}
    labels = {(d, 0): f"X^{d}" for d in range(max_degree + 1)}
    return GradedAlgebra(F, (1,) * (max_degree + 1), mult, unit={(0, 0): one},
                         truncated=True, labels=labels)


@dataclass(frozen=True)
class GradedFunctional:
    """Functional on a graded algebra, trusted through known_degree."""

    field: Field
    values: dict
    known_degree: int

    def __post_init__(self):
        F = self.field
        vals = {}
        for key, v in self.values.items():
            if key[0] > self.known_degree:
                raise DimensionMismatch(f"value at degree {key[0]} beyond known degree")
            if not F.is_zero(v):
                vals[key] = v
        object.__setattr__(self, "values", vals)

    def __call__(self, x: dict):
        F = self.field
        s = F.zero
        for key, c in x.items():
            if key[0] > self.known_degree:
                raise InsufficientTruncation(
                    f"functional not known at degree {key[0]}")
            s = F.add(s, F.mul(c, self.values.get(key, F.zero)))
        return s


def seq_functional(F: Field, seq) -> GradedFunctional:
    """A sequence as a functional on K[X]: f(X^n) = seq[n]."""
    vals = {(n, 0): F.from_int(v) if isinstance(v, int) else v
            for n, v in enumerate(seq)}
    return GradedFunctional(F, vals, len(seq) - 1)


# ---------------------------------------------------------------------------
# translate spans and bounded membership

@dataclass(frozen=True)
class Member:
    """Bounded membership certificate; see the module docstring for exactly
    what it promises."""

    dim: int
    bound: int
    level_dims: tuple
    witness: tuple


@dataclass(frozen=True)
class NotWithinBound:
    """The translate span provably exceeds the bound."""

    dim: int
    level: int


def _window_keys(G: GradedAlgebra, bound: int):
    return [key for key in G.basis_keys() if key[0] <= bound]


def translate_span(G: GradedAlgebra, f: GradedFunctional, bound: int,
                   sides: str = "both", cancel: CancelToken | None = None):
    """Span of translates restricted to the window of degrees <= bound.

    Returns (rowspace, level_dims, window_keys).  Levels are indexed by the
    total degree of the translating pair; the budget is chosen so every
    needed product stays inside the stored degrees.
    """
    if sides not in ("both", "left", "right"):
        raise ValidationError(f"unknown sides {sides!r}")
    F = G.field
    D = min(G.max_degree, f.known_degree)
    if D < 2 * bound:
        raise InsufficientTruncation(
            f"need stored degree >= {2 * bound}, have {D}")
    window = _window_keys(G, bound)
    t_max = D - bound
    rs = RowSpace(F, len(window))

    def row_of(a_key, b_key):
        # (a -> f <- b)(c) = f(b c a)
        out = []
        for c in window:
            x = {c: F.one}
            if b_key is not None:
                x = G.mul_flat({b_key: F.one}, x)
            if a_key is not None:
                x = G.mul_flat(x, {a_key: F.one})
            out.append(f(x))
        return tuple(out)

    def level_pairs(t):
        if t == 0:
            yield (None, None)
        by_deg = lambda d: [(d, i) for i in range(G.component_dims[d])] \
            if d < len(G.component_dims) else []
        if sides in ("left", "both"):
            for a in by_deg(t):
                yield (a, None)
        if sides in ("right", "both"):
            for b in by_deg(t):
                yield (None, b)
        if sides == "both":
            for qa in range(t + 1):
                for a in by_deg(qa):
                    for b in by_deg(t - qa):
                        yield (a, b)

    level_dims = []
    for t in range(t_max + 1):
        if cancel is not None:
            cancel.check()
        for a_key, b_key in level_pairs(t):
            rs.add(row_of(a_key, b_key))
        level_dims.append(rs.dim)
    return rs, tuple(level_dims), window


def membership_bounded(G: GradedAlgebra, f: GradedFunctional, bound: int,
                       cancel: CancelToken | None = None):
    """Decide bounded membership of f in the finite dual; see module docs."""
    if bound < 0:
        raise ValidationError("bound must be nonnegative")
    rs, level_dims, _ = translate_span(G, f, bound, "both", cancel)
    dim = level_dims[-1]
    if dim > bound:
        first_bad = next(t for t, d in enumerate(level_dims) if d > bound)
        return NotWithinBound(dim, first_bad)
    if len(level_dims) >= 2 and level_dims[-1] != level_dims[-2]:
        raise InsufficientTruncation(
            "translate span still growing at the truncation budget")
    return Member(dim, bound, level_dims, tuple(rs.basis()))


def delta_of_functional(G: GradedAlgebra, f: GradedFunctional, bound: int,
                        cancel: CancelToken | None = None):
    """Factor f(ab) = sum_i g_i(a) h_i(b) through the right-translate span.

    Returns a list of (g_i, h_i) pairs of GradedFunctionals.  The identity is
    verified on every in-range basis pair before returning.
    """
    F = G.field
    D = min(G.max_degree, f.known_degree)
    if D < 2 * bound:
        raise InsufficientTruncation(
            f"need stored degree >= {2 * bound}, have {D}")
    window = _window_keys(G, bound)
    t_max = D - bound

    # right translates f <- b, remembering which b produced each basis row
    rs = RowSpace(F, len(window))
    reps: list[dict | None] = []  # translating keys, None for f itself

    def right_row(b_key):
        out = []
        for c in window:
            x = {c: F.one} if b_key is None else G.mul_flat({b_key: F.one}, {c: F.one})
            out.append(f(x))
        return tuple(out)

    pending = [(None, right_row(None))]
    for t in range(t_max + 1):
        if cancel is not None:
            cancel.check()
        for i in range(G.component_dims[t] if t < len(G.component_dims) else 0):
            pending.append(((t, i), right_row((t, i))))
    added = []
    for b_key, row in pending:
        if rs.add(row):
            added.append(b_key)
    d = rs.dim
    if d > bound:
        return NotWithinBound(d, 0)
    # h_i = f <- b_i known through degree D - deg(b_i)
    hs = []
    h_deg = []
    for b_key in added:
        q = 0 if b_key is None else b_key[0]
        vals = {}
        for c in G.basis_keys():
            if c[0] > D - q:
                continue
            x = {c: F.one} if b_key is None else G.mul_flat({b_key: F.one}, {c: F.one})
            v = f(x)
            if not F.is_zero(v):
                vals[c] = v
        hs.append(GradedFunctional(F, vals, D - q))
        h_deg.append(D - q)
    # the h basis must match the row space ordering for coords to line up
    basis_rows = [tuple(h.values.get(c, F.zero) for c in window) for h in hs]
    coord_space = RowSpace(F, len(window), basis_rows)
    if coord_space.dim != d:
        raise ValidationError("right translate representatives degenerate")
    # g_i(a) = i-th coordinate of f <- a in that basis
    gs_vals: list[dict] = [dict() for _ in range(d)]
    g_known = min(t_max, min(h_deg) if h_deg else t_max)
    for a in G.basis_keys():
        if a[0] > g_known:
            continue
        row = right_row(a)
        coords = _coords_in(F, basis_rows, row)
        if coords is None:
            raise ValidationError("right translate escapes its own span")
        for i, c in enumerate(coords):
            if not F.is_zero(c):
                gs_vals[i][a] = c
    gs = [GradedFunctional(F, vals, g_known) for vals in gs_vals]
    # verify the factorization on all pairs both sides can see
    min_h = min(h_deg) if h_deg else D
    for a in G.basis_keys():
        if a[0] > g_known:
            continue
        for b in G.basis_keys():
            if a[0] + b[0] > D or b[0] > min_h:
                continue
            prod = G.mul_flat({a: F.one}, {b: F.one})
            lhs = f(prod)
            rhs = F.zero
            for g, h in zip(gs, hs):
                rhs = F.add(rhs, F.mul(g({a: F.one}), h({b: F.one})))
            if lhs != rhs:
                raise ValidationError(f"delta factorization fails at ({a},{b})")
    return list(zip(gs, hs))


def _coords_in(F: Field, rows, target):
    """Coordinates of target in the span of the (independent) rows, or None."""
    M = SparseMatrix.from_rows(F, list(rows), len(target)).transpose()
    return M.solve(tuple(target))


# ---------------------------------------------------------------------------
# coefficient functions of a finite-dimensional representation

def coefficient_functions(G: GradedAlgebra, rep: dict, dim: int):
    """Matrix coefficients of a representation as finite-dual members.

    rep maps graded basis keys to dim x dim matrices (SparseMatrix); it must
    be multiplicative on every in-range basis pair.  Returns the dim^2
    functionals rho[i][j](a) = (matrix of a)[i, j], each known through the
    full stored degree, after verifying rho_ij(ab) = sum_k rho_ik(a) rho_kj(b).
    """
    F = G.field
    for key in rep:
        m = rep[key]
        if m.rows != dim or m.cols != dim:
            raise DimensionMismatch("representation matrix has wrong shape")
    for k1 in G.basis_keys():
        for k2 in G.basis_keys():
            if k1[0] + k2[0] > G.max_degree:
                continue
            prod = G.mul_flat({k1: F.one}, {k2: F.one})
            lhs = SparseMatrix(F, dim, dim, {})
            for k3, c in prod.items():
                if k3 in rep:
                    lhs = lhs + rep[k3].scale(c)
            m1 = rep.get(k1, SparseMatrix(F, dim, dim, {}))
            m2 = rep.get(k2, SparseMatrix(F, dim, dim, {}))
            if (m1 @ m2).entries != lhs.entries:
                raise ValidationError(f"representation fails at ({k1},{k2})")
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            vals = {}
            for key, m in rep.items():
                v = m.entries.get((i, j))
                if v is not None:
                    vals[key] = v
            row.append(GradedFunctional(F, vals, G.max_degree))
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# finite-dimensional cases and bialgebras

def finite_dual_findim(A: FinAlgebra) -> FinCoalgebra:
    """For finite-dimensional algebras the finite dual is the whole dual."""
    return dual_coalgebra(A)


def unital_dual_compat(A: FinAlgebra) -> CoalgebraMorphism:
    """Dualizing the unitalization equals counitalizing the dual; under
    dual-basis indexing the comparison map is the identity."""
    A1, _ = unitalize(A)
    lhs = finite_dual_findim(A1)
    rhs, _ = counitalize(finite_dual_findim(A))
    iso = CoalgebraMorphism(lhs, rhs, SparseMatrix.identity(A.field, A.dim + 1),
                            counital=True)
    if not iso.is_bijective():
        raise ValidationError("unitalization/dual comparison is not bijective")
    return iso


@dataclass(frozen=True)
class FinBialgebra:
    """Unital algebra + counital coalgebra on one space, with the coproduct
    and counit multiplicative; an optional antipode is checked to be the
    convolution inverse of the identity."""

    algebra: FinAlgebra
    coalgebra: FinCoalgebra
    antipode: SparseMatrix | None = None

    def __post_init__(self):
        A, C = self.algebra, self.coalgebra
        F = A.field
        if F != C.field or A.dim != C.dim:
            raise IncompatibleStructure("algebra and coalgebra do not match")
        if A.unit is None or C.counit is None:
            raise IncompatibleStructure("bialgebra needs a unit and a counit")
        n = A.dim
        for i in range(n):
            for j in range(n):
                lhs: dict = {}
                for k, c in A.mult.get((i, j), {}).items():
                    for pq, v in C.comult.get(k, {}).items():
                        x = F.add(lhs.get(pq, F.zero), F.mul(c, v))
                        if F.is_zero(x):
                            lhs.pop(pq, None)
                        else:
                            lhs[pq] = x
                rhs: dict = {}
                for (p, q), v in C.comult.get(i, {}).items():
                    for (r, s), w in C.comult.get(j, {}).items():
                        vw = F.mul(v, w)
                        for u, cu in A.mult.get((p, r), {}).items():
                            for t, ct in A.mult.get((q, s), {}).items():
                                x = F.add(rhs.get((u, t), F.zero),
                                          F.mul(vw, F.mul(cu, ct)))
                                if F.is_zero(x):
                                    rhs.pop((u, t), None)
                                else:
                                    rhs[(u, t)] = x
                if lhs != rhs:
                    raise IncompatibleStructure(
                        f"coproduct not multiplicative at ({i},{j})")
                eps_prod = F.zero
                for k, c in A.mult.get((i, j), {}).items():
                    eps_prod = F.add(eps_prod, F.mul(c, C.counit[k]))
                if eps_prod != F.mul(C.counit[i], C.counit[j]):
                    raise IncompatibleStructure(f"counit not multiplicative at ({i},{j})")
        unit_cop = C.comult_of(A.unit)
        expect = {}
        for i, u in enumerate(A.unit):
            if F.is_zero(u):
                continue
            for j, v in enumerate(A.unit):
                if not F.is_zero(v):
                    expect[(i, j)] = F.mul(u, v)
        if unit_cop != expect:
            raise IncompatibleStructure("coproduct of the unit is not unit (x) unit")
        if C.counit_of(A.unit) != F.one:
            raise IncompatibleStructure("counit of the unit is not 1")
        if self.antipode is not None:
            S = self.antipode
            if S.rows != n or S.cols != n:
                raise DimensionMismatch("antipode matrix has wrong shape")
            for k in range(n):
                left = [F.zero] * n
                right = [F.zero] * n
                for (i, j), v in C.comult.get(k, {}).items():
                    si = S.apply(basis_vec(F, n, i))
                    for s, w in enumerate(A.multiply(si, basis_vec(F, n, j))):
                        left[s] = F.add(left[s], F.mul(v, w))
                    sj = S.apply(basis_vec(F, n, j))
                    for s, w in enumerate(A.multiply(basis_vec(F, n, i), sj)):
                        right[s] = F.add(right[s], F.mul(v, w))
                target = tuple(F.mul(C.counit[k], u) for u in A.unit)
                if tuple(left) != target or tuple(right) != target:
                    raise IncompatibleStructure(f"antipode axiom fails at {k}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim


def bialgebra_dual(H: FinBialgebra) -> FinBialgebra:
    """Transpose everything; exact in finite dimension."""
    A = FinAlgebra(H.field, H.dim, transpose_comult(H.coalgebra.comult),
                   tuple(H.coalgebra.counit))
    C = FinCoalgebra(H.field, H.dim, transpose_mult(H.algebra.mult),
                     tuple(H.algebra.unit))
    S = H.antipode.transpose() if H.antipode is not None else None
    return FinBialgebra(A, C, S)


def group_bialgebra(F: Field, table, inverses) -> FinBialgebra:
    """Group algebra K[G] from a Cayley table: grouplike basis, antipode g -> g^-1."""
    n = len(table)
    mult = {(i, j): {table[i][j]: F.one} for i in range(n) for j in range(n)}
    unit = [F.zero] * n
    # identity = the element fixing everything
    e = next(i for i in range(n) if all(table[i][j] == j for j in range(n)))
    unit[e] = F.one
    A = FinAlgebra(F, n, mult, tuple(unit))
    comult = {i: {(i, i): F.one} for i in range(n)}
    C = FinCoalgebra(F, n, comult, tuple([F.one] * n))
    S = SparseMatrix(F, n, n, {(inverses[i], i): F.one for i in range(n)})
    return FinBialgebra(A, C, S)


# ---------------------------------------------------------------------------
# linear recurrences

@dataclass(frozen=True)
class LinRec:
    """Order-d recurrence with monic annihilator polynomial (low to high)."""

    order: int
    poly: tuple


def linrec_analyze(F: Field, seq, rank_bound: int):
    """Smallest-order linear recurrence valid over the whole stored sequence.

    Returns LinRec or NotWithinBound; raises InsufficientData when the
    sequence is too short to support the requested bound.
    """
    seq = [F.from_int(v) if isinstance(v, int) else v for v in seq]
    n = len(seq)
    if n < 2 * rank_bound + 2:
        raise InsufficientData(
            f"need at least {2 * rank_bound + 2} terms, have {n}")
    if all(F.is_zero(v) for v in seq):
        return LinRec(0, (F.one,))
    for d in range(1, rank_bound + 1):
        rows = [seq[m:m + d] for m in range(n - d)]
        rhs = tuple(seq[m + d] for m in range(n - d))
        M = SparseMatrix.from_rows(F, [tuple(r) for r in rows], d)
        sol = M.solve(rhs)
        if sol is not None:
            poly = tuple(F.neg(c) for c in sol) + (F.one,)
            return LinRec(d, poly)
    return NotWithinBound(rank_bound + 1, rank_bound)

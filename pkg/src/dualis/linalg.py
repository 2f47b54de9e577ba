"""Sparse exact linear algebra over Q and F_p.

Matrices store only nonzero entries.  Elimination pivots on the first
nonzero entry in a row-major scan, so every result is deterministic; there
are no magnitude-based choices to make in exact arithmetic.  A dense
elimination path is used internally when fill-in passes 50%, with output
identical to the sparse path.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DimensionMismatch
from .fields import Field


# ---------------------------------------------------------------------------
# vector helpers (vectors are tuples of scalars)

def vec_zero(F: Field, n: int) -> tuple:
    return (F.zero,) * n

def vec_add(F: Field, x: tuple, y: tuple) -> tuple:
    return tuple(F.add(a, b) for a, b in zip(x, y))

def vec_sub(F: Field, x: tuple, y: tuple) -> tuple:
    return tuple(F.sub(a, b) for a, b in zip(x, y))

def vec_scale(F: Field, c, x: tuple) -> tuple:
    return tuple(F.mul(c, a) for a in x)

def vec_is_zero(F: Field, x: tuple) -> bool:
    return all(F.is_zero(a) for a in x)

def basis_vec(F: Field, n: int, i: int) -> tuple:
    return tuple(F.one if j == i else F.zero for j in range(n))


# ---------------------------------------------------------------------------
# reduced row echelon form

def _rref_rows(F: Field, rows: list[dict], ncols: int):
    """RREF of rows given as {col: nonzero scalar} dicts.

    Returns (reduced nonzero rows, pivot column list).  Pivot choice is the
    first row in order holding a nonzero in the leftmost unfinished column.
    """
    rows = [dict(r) for r in rows]
    nnz = sum(len(r) for r in rows)
    if rows and ncols and nnz * 2 > len(rows) * ncols:
        return _rref_dense(F, rows, ncols)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if c in rows[i]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = {j: F.mul(inv, v) for j, v in rows[r].items()}
        lead = rows[r]
        for i in range(len(rows)):
            if i != r and c in rows[i]:
                f = rows[i][c]
                out = dict(rows[i])
                for j, v in lead.items():
                    s = F.sub(out.get(j, F.zero), F.mul(f, v))
                    if F.is_zero(s):
                        out.pop(j, None)
                    else:
                        out[j] = s
                rows[i] = out
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _rref_dense(F: Field, rows: list[dict], ncols: int):
    """Dense twin of _rref_rows; same pivot rule, same output."""
    zero = F.zero
    m = [[r.get(j, zero) for j in range(ncols)] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    out = []
    for i in range(r):
        out.append({j: v for j, v in enumerate(m[i]) if not F.is_zero(v)})
    return out, pivots


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix; entries maps (row, col) to nonzero scalars."""

    field: Field
    rows: int
    cols: int
    entries: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        F = self.field
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionMismatch(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
            if not F.is_zero(v):
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, F: Field, rows: list, cols: int | None = None) -> "SparseMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        ent = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if not F.is_zero(v):
                    ent[(i, j)] = v
        return cls(F, len(rows), cols, ent)

    @classmethod
    def identity(cls, F: Field, n: int) -> "SparseMatrix":
        return cls(F, n, n, {(i, i): F.one for i in range(n)})

    @classmethod
    def zero(cls, F: Field, rows: int, cols: int) -> "SparseMatrix":
        return cls(F, rows, cols, {})

    # -- structure ----------------------------------------------------------

    def row(self, i: int) -> tuple:
        F = self.field
        out = [F.zero] * self.cols
        for (r, c), v in self.entries.items():
            if r == i:
                out[c] = v
        return tuple(out)

    def to_dense(self) -> list[list]:
        F = self.field
        m = [[F.zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            m[i][j] = v
        return m

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.field, self.cols, self.rows,
                            {(j, i): v for (i, j), v in self.entries.items()})

    def _row_dicts(self) -> list[dict]:
        rows = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        F = self.field
        ent = dict(self.entries)
        for k, v in other.entries.items():
            s = F.add(ent.get(k, F.zero), v)
            if F.is_zero(s):
                ent.pop(k, None)
            else:
                ent[k] = s
        return SparseMatrix(F, self.rows, self.cols, ent)

    def scale(self, c) -> "SparseMatrix":
        F = self.field
        return SparseMatrix(F, self.rows, self.cols,
                            {k: F.mul(c, v) for k, v in self.entries.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(self.field.neg(self.field.one))

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        F = self.field
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple, object] = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                key = (i, j)
                s = F.add(acc.get(key, F.zero), F.mul(u, v))
                if F.is_zero(s):
                    acc.pop(key, None)
                else:
                    acc[key] = s
        return SparseMatrix(F, self.rows, other.cols, acc)

    def apply(self, x: tuple) -> tuple:
        """Matrix times column vector."""
        if len(x) != self.cols:
            raise DimensionMismatch("vector length != cols")
        F = self.field
        out = [F.zero] * self.rows
        for (i, j), v in self.entries.items():
            if not F.is_zero(x[j]):
                out[i] = F.add(out[i], F.mul(v, x[j]))
        return tuple(out)

    # -- elimination-backed queries -------------------------------------------

    def rank(self) -> int:
        _, pivots = _rref_rows(self.field, self._row_dicts(), self.cols)
        return len(pivots)

    def kernel_basis(self) -> list[tuple]:
        """Basis of the right null space, rows in reduced echelon order."""
        F = self.field
        red, pivots = _rref_rows(F, self._row_dicts(), self.cols)
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        for fc in free:
            v = [F.zero] * self.cols
            v[fc] = F.one
            for r, pc in enumerate(pivots):
                coeff = red[r].get(fc, F.zero)
                if not F.is_zero(coeff):
                    v[pc] = F.neg(coeff)
            basis.append(tuple(v))
        return basis

    def solve(self, b: tuple) -> tuple | None:
        """One solution of Mx = b with free variables zero; None if none."""
        if len(b) != self.rows:
            raise DimensionMismatch("rhs length != rows")
        F = self.field
        rows = self._row_dicts()
        for i, bi in enumerate(b):
            if not F.is_zero(bi):
                rows[i][self.cols] = bi
        red, pivots = _rref_rows(F, rows, self.cols + 1)
        x = [F.zero] * self.cols
        for r, pc in enumerate(pivots):
            if pc == self.cols:
                return None
            x[pc] = red[r].get(self.cols, F.zero)
        return tuple(x)

    def tensor(self, other: "SparseMatrix") -> "SparseMatrix":
        """Kronecker product; index (i, k) maps to i*other.rows + k."""
        F = self.field
        ent = {}
        for (i, j), u in self.entries.items():
            for (k, l), v in other.entries.items():
                ent[(i * other.rows + k, j * other.cols + l)] = F.mul(u, v)
        return SparseMatrix(F, self.rows * other.rows, self.cols * other.cols, ent)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "SparseMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        F = self.field
        n = self.rows
        rows = self._row_dicts()
        for i in range(n):
            rows[i][n + i] = F.one
        red, pivots = _rref_rows(F, rows, 2 * n)
        if pivots[:n] != list(range(n)):
            raise DimensionMismatch("matrix is singular")
        ent = {}
        for i, row in enumerate(red):
            for j, v in row.items():
                if j >= n:
                    ent[(i, j - n)] = v
        return SparseMatrix(F, n, n, ent)


# ---------------------------------------------------------------------------
# incremental row spaces (the engine behind all fixpoint closures)

class RowSpace:
    """A subspace of F^n kept in reduced echelon form, grown one vector at a time."""

    def __init__(self, F: Field, ambient: int, vectors=()):
        self.field = F
        self.ambient = ambient
        self._rows: list[dict] = []   # sorted by pivot column, each fully reduced
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: tuple) -> dict:
        F = self.field
        w = {j: v for j, v in enumerate(vec) if not F.is_zero(v)}
        for pc, row in zip(self._pivots, self._rows):
            c = w.get(pc)
            if c is None:
                continue
            for j, v in row.items():
                s = F.sub(w.get(j, F.zero), F.mul(c, v))
                if F.is_zero(s):
                    w.pop(j, None)
                else:
                    w[j] = s
        return w

    def contains(self, vec: tuple) -> bool:
        return not self._reduce(vec)

    def residual(self, vec: tuple) -> tuple:
        F = self.field
        w = self._reduce(vec)
        out = [F.zero] * self.ambient
        for j, v in w.items():
            out[j] = v
        return tuple(out)

    def add(self, vec: tuple) -> bool:
        """Insert vec; True if the dimension grew."""
        if len(vec) != self.ambient:
            raise DimensionMismatch("vector length != ambient dimension")
        F = self.field
        w = self._reduce(vec)
        if not w:
            return False
        pc = min(w)
        inv = F.inv(w[pc])
        w = {j: F.mul(inv, v) for j, v in w.items()}
        for i in range(len(self._rows)):
            c = self._rows[i].get(pc)
            if c is None:
                continue
            out = dict(self._rows[i])
            for j, v in w.items():
                s = F.sub(out.get(j, F.zero), F.mul(c, v))
                if F.is_zero(s):
                    out.pop(j, None)
                else:
                    out[j] = s
            self._rows[i] = out
        at = 0
        while at < len(self._pivots) and self._pivots[at] < pc:
            at += 1
        self._rows.insert(at, w)
        self._pivots.insert(at, pc)
        return True

    def basis(self) -> list[tuple]:
        F = self.field
        out = []
        for row in self._rows:
            v = [F.zero] * self.ambient
            for j, c in row.items():
                v[j] = c
            out.append(tuple(v))
        return out

    def pivots(self) -> list[int]:
        return list(self._pivots)

    def coords(self, vec: tuple) -> tuple | None:
        """Coordinates of vec in basis(); None if vec is outside."""
        F = self.field
        w = {j: v for j, v in enumerate(vec) if not F.is_zero(v)}
        out = []
        for pc, row in zip(self._pivots, self._rows):
            c = w.get(pc, F.zero)
            out.append(c)
            if not F.is_zero(c):
                for j, v in row.items():
                    s = F.sub(w.get(j, F.zero), F.mul(c, v))
                    if F.is_zero(s):
                        w.pop(j, None)
                    else:
                        w[j] = s
        if w:
            return None
        return tuple(out)


def span_basis(F: Field, vectors, ambient: int) -> list[tuple]:
    """Canonical reduced-echelon basis of the span of the given vectors."""
    rs = RowSpace(F, ambient, vectors)
    return rs.basis()


def intersect_spans(F: Field, basis_u: list[tuple], basis_w: list[tuple], ambient: int) -> list[tuple]:
    """Canonical basis of span(U) intersect span(W)."""
    if not basis_u or not basis_w:
        return []
    cols = len(basis_u) + len(basis_w)
    ent = {}
    for a, u in enumerate(basis_u):
        for i, v in enumerate(u):
            if not F.is_zero(v):
                ent[(i, a)] = v
    for b, w in enumerate(basis_w):
        for i, v in enumerate(w):
            if not F.is_zero(v):
                ent[(i, len(basis_u) + b)] = F.neg(v)
    M = SparseMatrix(F, ambient, cols, ent)
    vecs = []
    for k in M.kernel_basis():
        acc = [F.zero] * ambient
        for a, u in enumerate(basis_u):
            if not F.is_zero(k[a]):
                for i, v in enumerate(u):
                    acc[i] = F.add(acc[i], F.mul(k[a], v))
        vecs.append(tuple(acc))
    return span_basis(F, vecs, ambient)

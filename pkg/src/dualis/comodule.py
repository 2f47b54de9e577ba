"""Comodules, modules, and the correspondence between them.

coaction[t][(s,k)] is the coefficient of m_s (x) c_k in rho(m_t), and
action[(i,t)][s] the coefficient of m_s in a_i . m_t.  Over a
finite-dimensional coalgebra the two pictures are transposes of each other,
and the subspace lattices agree; lattice_agreement_check makes that an
executable statement.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import FinAlgebra
from .coalgebra import FinCoalgebra, counitalize, dual_algebra, dual_coalgebra
from .errors import DimensionMismatch, ValidationError
from .fields import Field
from .linalg import RowSpace, SparseMatrix, basis_vec


def _clean_nested(F: Field, table: dict) -> dict:
    out = {}
    for k, terms in table.items():
        keep = {t: v for t, v in terms.items() if not F.is_zero(v)}
        if keep:
            out[k] = keep
    return out


@dataclass(frozen=True)
class FinComodule:
    """Right coaction rho: M -> M (x) C on basis m_0..m_{dim-1}."""

    coalgebra: FinCoalgebra
    dim: int
    coaction: dict

    def __post_init__(self):
        C = self.coalgebra
        F = C.field
        for t, terms in self.coaction.items():
            if not 0 <= t < self.dim:
                raise DimensionMismatch(f"coaction key {t} out of range")
            for (s, k) in terms:
                if not (0 <= s < self.dim and 0 <= k < C.dim):
                    raise DimensionMismatch(f"coaction target ({s},{k}) out of range")
        object.__setattr__(self, "coaction", _clean_nested(F, self.coaction))
        for t in range(self.dim):
            lhs: dict = {}
            rhs: dict = {}
            for (s, k), v in self.coaction.get(t, {}).items():
                for (i, j), w in C.comult.get(k, {}).items():
                    key = (s, i, j)
                    x = F.add(lhs.get(key, F.zero), F.mul(v, w))
                    if F.is_zero(x):
                        lhs.pop(key, None)
                    else:
                        lhs[key] = x
                for (u, i), w in self.coaction.get(s, {}).items():
                    key = (u, i, k)
                    x = F.add(rhs.get(key, F.zero), F.mul(v, w))
                    if F.is_zero(x):
                        rhs.pop(key, None)
                    else:
                        rhs[key] = x
            if lhs != rhs:
                raise ValidationError(f"coaction not coassociative at basis element {t}")
        if C.counit is not None:
            for t in range(self.dim):
                acc: dict = {}
                for (s, k), v in self.coaction.get(t, {}).items():
                    x = F.add(acc.get(s, F.zero), F.mul(v, C.counit[k]))
                    if F.is_zero(x):
                        acc.pop(s, None)
                    else:
                        acc[s] = x
                if acc != {t: F.one}:
                    raise ValidationError(f"counit law fails at basis element {t}")

    def coaction_of(self, x: tuple) -> dict:
        """rho(x) as a sparse {(s,k): scalar} tensor."""
        F = self.coalgebra.field
        acc: dict = {}
        for t, xt in enumerate(x):
            if F.is_zero(xt):
                continue
            for sk, v in self.coaction.get(t, {}).items():
                y = F.add(acc.get(sk, F.zero), F.mul(xt, v))
                if F.is_zero(y):
                    acc.pop(sk, None)
                else:
                    acc[sk] = y
        return acc


@dataclass(frozen=True)
class FinModule:
    """Left action of a finite-dimensional algebra on basis m_0..m_{dim-1}."""

    algebra: FinAlgebra
    dim: int
    action: dict

    def __post_init__(self):
        A = self.algebra
        F = A.field
        for (i, t), terms in self.action.items():
            if not (0 <= i < A.dim and 0 <= t < self.dim):
                raise DimensionMismatch(f"action key ({i},{t}) out of range")
            for s in terms:
                if not 0 <= s < self.dim:
                    raise DimensionMismatch(f"action target {s} out of range")
        object.__setattr__(self, "action", _clean_nested(F, self.action))
        for i in range(A.dim):
            for j in range(A.dim):
                prod = A.mult.get((i, j), {})
                for t in range(self.dim):
                    if not prod and (j, t) not in self.action:
                        continue
                    lhs: dict = {}
                    for k, c in prod.items():
                        for s, v in self.action.get((k, t), {}).items():
                            x = F.add(lhs.get(s, F.zero), F.mul(c, v))
                            if F.is_zero(x):
                                lhs.pop(s, None)
                            else:
                                lhs[s] = x
                    rhs: dict = {}
                    for s, v in self.action.get((j, t), {}).items():
                        for u, w in self.action.get((i, s), {}).items():
                            x = F.add(rhs.get(u, F.zero), F.mul(v, w))
                            if F.is_zero(x):
                                rhs.pop(u, None)
                            else:
                                rhs[u] = x
                    if lhs != rhs:
                        raise ValidationError(
                            f"action not associative at ({i},{j},{t})")
        if A.unit is not None:
            for t in range(self.dim):
                acc: dict = {}
                for i, ui in enumerate(A.unit):
                    if F.is_zero(ui):
                        continue
                    for s, v in self.action.get((i, t), {}).items():
                        x = F.add(acc.get(s, F.zero), F.mul(ui, v))
                        if F.is_zero(x):
                            acc.pop(s, None)
                        else:
                            acc[s] = x
                if acc != {t: F.one}:
                    raise ValidationError(f"unit does not act as identity on {t}")

    def act(self, a: tuple, x: tuple) -> tuple:
        F = self.algebra.field
        out = [F.zero] * self.dim
        for i, ai in enumerate(a):
            if F.is_zero(ai):
                continue
            for t, xt in enumerate(x):
                if F.is_zero(xt):
                    continue
                c = F.mul(ai, xt)
                for s, v in self.action.get((i, t), {}).items():
                    out[s] = F.add(out[s], F.mul(c, v))
        return tuple(out)


# ---------------------------------------------------------------------------
# correspondences

def comodule_counitalize(M: FinComodule) -> tuple[FinComodule, FinCoalgebra]:
    """Extend the coaction along counitalization: rho1(m) = rho(m) + m (x) e."""
    C = M.coalgebra
    F = C.field
    C1, _ = counitalize(C)
    coaction = {}
    for t in range(M.dim):
        terms = dict(M.coaction.get(t, {}))
        terms[(t, C.dim)] = F.add(terms.get((t, C.dim), F.zero), F.one)
        coaction[t] = terms
    return FinComodule(C1, M.dim, coaction), C1


def comodule_to_dual_module(M: FinComodule) -> FinModule:
    """The dual-basis functional c^k acts by contracting the coaction."""
    action: dict = {}
    for t, terms in M.coaction.items():
        for (s, k), v in terms.items():
            action.setdefault((k, t), {})[s] = v
    return FinModule(dual_algebra(M.coalgebra), M.dim, action)


def module_to_comodule(N: FinModule) -> FinComodule:
    """Inverse transpose: a module over a finite-dimensional algebra is a
    comodule over the dual coalgebra."""
    coaction: dict = {}
    for (i, t), terms in N.action.items():
        for s, v in terms.items():
            coaction.setdefault(t, {})[(s, i)] = v
    return FinComodule(dual_coalgebra(N.algebra), N.dim, coaction)


# ---------------------------------------------------------------------------
# sub-objects

def is_subcomodule(M: FinComodule, vectors) -> bool:
    """Does the span satisfy rho(W) <= W (x) C?"""
    C = M.coalgebra
    F = C.field
    rs = RowSpace(F, M.dim, vectors)
    for w in rs.basis():
        cols: dict[int, list] = {}
        for (s, k), v in M.coaction_of(w).items():
            cols.setdefault(k, [F.zero] * M.dim)[s] = v
        for col in cols.values():
            if not rs.contains(tuple(col)):
                return False
    return True


def is_submodule(N: FinModule, vectors) -> bool:
    F = N.algebra.field
    rs = RowSpace(F, N.dim, vectors)
    for w in rs.basis():
        for i in range(N.algebra.dim):
            if not rs.contains(N.act(basis_vec(F, N.algebra.dim, i), w)):
                return False
    return True


def subcomodule_on_span(M: FinComodule, vectors) -> tuple[FinComodule, SparseMatrix]:
    """Induced comodule on a closed span, with its inclusion matrix."""
    C = M.coalgebra
    F = C.field
    rs = RowSpace(F, M.dim, vectors)
    basis = rs.basis()
    coaction = {}
    for a, w in enumerate(basis):
        cols: dict[int, list] = {}
        for (s, k), v in M.coaction_of(w).items():
            cols.setdefault(k, [F.zero] * M.dim)[s] = v
        table = {}
        for k, col in cols.items():
            if not rs.contains(tuple(col)):
                raise ValidationError("span is not a subcomodule")
            for b, cb in enumerate(rs.coords(tuple(col))):
                if not F.is_zero(cb):
                    table[(b, k)] = cb
        if table:
            coaction[a] = table
    sub = FinComodule(C, len(basis), coaction)
    ent = {}
    for a, w in enumerate(basis):
        for i, v in enumerate(w):
            if not F.is_zero(v):
                ent[(i, a)] = v
    return sub, SparseMatrix(F, M.dim, len(basis), ent)


def subcomodule_generated(M: FinComodule, x: tuple) -> tuple[FinComodule, SparseMatrix]:
    """Smallest subcomodule containing x: close under (I (x) f) . rho."""
    C = M.coalgebra
    F = C.field
    rs = RowSpace(F, M.dim)
    queue = []
    if rs.add(x):
        queue.append(tuple(x))
    while queue:
        w = queue.pop()
        cols: dict[int, list] = {}
        for (s, k), v in M.coaction_of(w).items():
            cols.setdefault(k, [F.zero] * M.dim)[s] = v
        for col in cols.values():
            t = tuple(col)
            if rs.add(t):
                queue.append(t)
    return subcomodule_on_span(M, rs.basis())


# ---------------------------------------------------------------------------
# lattice agreement

def _all_subspaces_gf2(dim: int):
    """Every subspace of GF(2)^dim as a list of spanning vectors (dim <= 4)."""
    vecs = []
    for mask in range(1, 1 << dim):
        vecs.append(tuple((mask >> i) & 1 for i in range(dim)))

    def span_of(gens):
        seen = {(0,) * dim}
        frontier = [(0,) * dim]
        while frontier:
            v = frontier.pop()
            for g in gens:
                w = tuple((a + b) % 2 for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return frozenset(seen)

    spaces = {frozenset({(0,) * dim}): []}
    for r in range(1, dim + 1):
        for gens in itertools.combinations(vecs, r):
            key = span_of(gens)
            if key not in spaces:
                spaces[key] = list(gens)
    return list(spaces.values())


def _random_subspace(F: Field, dim: int, rng: random.Random):
    r = rng.randrange(dim + 1)
    vecs = []
    for _ in range(r):
        if F.characteristic == 0:
            vecs.append(tuple(F.from_int(rng.randrange(-3, 4)) for _ in range(dim)))
        else:
            vecs.append(tuple(F.from_int(rng.randrange(F.characteristic))
                              for _ in range(dim)))
    return vecs


def lattice_agreement_check(M: FinComodule, seed: int = 0, samples: int = 100) -> dict:
    """Confirm that the three notions of sub-object pick out the same spans:
    C-subcomodules, C1-subcomodules after counitalizing, and modules over the
    dual algebra.  Exhaustive over GF(2) up to dimension 4, seeded samples
    otherwise.  Raises ValidationError on any disagreement."""
    C = M.coalgebra
    F = C.field
    M1, _ = comodule_counitalize(M)
    N = comodule_to_dual_module(M)
    exhaustive = F.characteristic == 2 and M.dim <= 4
    if exhaustive:
        candidates = _all_subspaces_gf2(M.dim)
    else:
        rng = random.Random(seed)
        candidates = [_random_subspace(F, M.dim, rng) for _ in range(samples)]
        # always include the full space, the zero space, and generated closures
        candidates.append([basis_vec(F, M.dim, i) for i in range(M.dim)])
        candidates.append([])
        for t in range(M.dim):
            _, incl = subcomodule_generated(M, basis_vec(F, M.dim, t))
            candidates.append([incl.apply(basis_vec(F, incl.cols, a))
                               for a in range(incl.cols)])
    agree = 0
    closed = 0
    for vecs in candidates:
        a = is_subcomodule(M, vecs)
        b = is_subcomodule(M1, vecs)
        c = is_submodule(N, vecs)
        if not (a == b == c):
            raise ValidationError(
                f"lattices disagree: comodule={a} counitalized={b} dual-module={c}")
        agree += 1
        if a:
            closed += 1
    return {"checked": len(candidates), "closed": closed,
            "exhaustive": exhaustive, "agree": agree}

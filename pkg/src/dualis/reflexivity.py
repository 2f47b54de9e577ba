"""Injective block decompositions, the rational dual, and the evaluation map.

A complete orthogonal primitive idempotent family (e_j) in the dual algebra
C* cuts a counital coalgebra into blocks through the hit operators

    right side:  P_e(c) = (id (x) e) delta(c)
    left side:   P_e(c) = (e (x) id) delta(c)

The operators are verified to be orthogonal idempotent projections summing to
the identity, and each image is checked to be a coideal on the matching side
(right blocks satisfy delta(W) <= C (x) W, left blocks delta(W) <= W (x) C).
For a path coalgebra the right blocks are spanned by the paths ending at a
fixed vertex and the left blocks by the paths starting at one, which is the
bridge to the bounded walk counts used by the semiperfectness harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .algebra import FinAlgebra
from .coalgebra import CoalgebraMorphism, FinCoalgebra, dual_algebra, dual_coalgebra
from .combinat import _count_walks, path_coalgebra, path_target, semiperfect_check
from .comodule import FinComodule, FinModule, module_to_comodule
from .errors import (
    InsufficientClosureRadius,
    NotLeftCoreflexive,
    ValidationError,
)
from .fields import Field
from .idempotents import complete_primitive_idempotents, verify_family
from .linalg import RowSpace, SparseMatrix, basis_vec, vec_add


@dataclass(frozen=True)
class InjectiveDecomposition:
    """Blocks of a counital coalgebra cut by dual idempotents.

    idempotents are functionals (coordinate tuples over the dual basis),
    projections the corresponding hit operators, blocks the column-space
    bases of the projections.
    """

    coalgebra: FinCoalgebra
    side: str
    idempotents: tuple
    projections: tuple
    blocks: tuple
    certificates: tuple

    @property
    def block_dims(self) -> tuple:
        return tuple(len(b) for b in self.blocks)


def _hit_matrix(C: FinCoalgebra, e: tuple, side: str) -> SparseMatrix:
    F = C.field
    ent: dict = {}
    for k, table in C.comult.items():
        for (i, j), v in table.items():
            if side == "right":
                w = F.mul(v, e[j])
                pos = (i, k)
            else:
                w = F.mul(v, e[i])
                pos = (j, k)
            if not F.is_zero(w):
                cur = ent.get(pos, F.zero)
                s = F.add(cur, w)
                if F.is_zero(s):
                    ent.pop(pos, None)
                else:
                    ent[pos] = s
    return SparseMatrix(F, C.dim, C.dim, ent)


def _column_space(M: SparseMatrix) -> list:
    F = M.field
    rs = RowSpace(F, M.rows)
    for j in range(M.cols):
        rs.add(M.apply(basis_vec(F, M.cols, j)))
    return rs.basis()


def _check_coideal(C: FinCoalgebra, basis: list, side: str) -> None:
    """Right blocks need delta(W) <= C (x) W, left blocks W (x) C."""
    F = C.field
    rs = RowSpace(F, C.dim)
    for w in basis:
        rs.add(w)
    for w in basis:
        legs: dict = {}
        for (i, j), v in C.comult_of(w).items():
            outer, inner = (i, j) if side == "right" else (j, i)
            vec = legs.setdefault(outer, [F.zero] * C.dim)
            vec[inner] = F.add(vec[inner], v)
        for vec in legs.values():
            if not rs.contains(tuple(vec)):
                raise ValidationError(
                    f"{side} block is not a coideal on that side")


def decompose_injectives(C: FinCoalgebra, side: str = "right",
                         idempotents=None) -> InjectiveDecomposition:
    """Cut C into indecomposable injective blocks on the given side.

    When idempotents is None a complete primitive family is computed in the
    dual algebra; a supplied family is verified instead of trusted.
    """
    if side not in ("left", "right"):
        raise ValidationError(f"side must be 'left' or 'right', got {side!r}")
    if not C.is_counital():
        raise ValidationError("injective decomposition needs a counit")
    F = C.field
    B = dual_algebra(C)
    if idempotents is None:
        family, certs = complete_primitive_idempotents(B)
    else:
        family = [tuple(e) for e in idempotents]
        certs = verify_family(B, family)
    total = tuple([F.zero] * C.dim)
    for e in family:
        total = vec_add(F, total, e)
    if total != tuple(C.counit):
        raise ValidationError("dual idempotents do not sum to the counit")
    projections = [_hit_matrix(C, e, side) for e in family]
    for M in projections:
        if M @ M != M:
            raise ValidationError("hit operator is not idempotent")
    summed = projections[0]
    for M in projections[1:]:
        ent = dict(summed.entries)
        for pos, v in M.entries.items():
            s = F.add(ent.get(pos, F.zero), v)
            if F.is_zero(s):
                ent.pop(pos, None)
            else:
                ent[pos] = s
        summed = SparseMatrix(F, C.dim, C.dim, ent)
    if summed != SparseMatrix.identity(F, C.dim):
        raise ValidationError("hit operators do not sum to the identity")
    zero = SparseMatrix(F, C.dim, C.dim, {})
    for a, Ma in enumerate(projections):
        for Mb in projections[a + 1:]:
            if Ma @ Mb != zero or Mb @ Ma != zero:
                raise ValidationError("hit operators are not orthogonal")
    blocks = []
    for M in projections:
        basis = _column_space(M)
        _check_coideal(C, basis, side)
        blocks.append(tuple(basis))
    if sum(len(b) for b in blocks) != C.dim:
        raise ValidationError("block dimensions do not sum to dim C")
    return InjectiveDecomposition(C, side, tuple(family), tuple(projections),
                                  tuple(blocks), tuple(certs))


def counit_from_decomposition(dec: InjectiveDecomposition) -> tuple:
    """The counit recovered as the sum of the dual idempotents."""
    F = dec.coalgebra.field
    total = tuple([F.zero] * dec.coalgebra.dim)
    for e in dec.idempotents:
        total = vec_add(F, total, e)
    if total != tuple(dec.coalgebra.counit):
        raise ValidationError("idempotents do not reassemble the counit")
    return total


@dataclass(frozen=True)
class RatDualAlgebra:
    """The dual algebra together with the left ideals B*e_j.

    Each ideal is dual to one injective right block and the verified
    dimension match is the finite shadow of rationality of the dual.
    """

    algebra: FinAlgebra
    decomposition: InjectiveDecomposition
    ideals: tuple

    @property
    def ideal_dims(self) -> tuple:
        return tuple(len(i) for i in self.ideals)


def rat_dual(C: FinCoalgebra,
             decomposition: InjectiveDecomposition | None = None) -> RatDualAlgebra:
    """Left ideals B e_j of the dual algebra, one per injective right block.

    dim(B e_j) must equal the dimension of the block E_j; the functional
    f*e_j acts as f composed with the block projection, so the two match
    exactly or the construction is rejected.
    """
    dec = decomposition if decomposition is not None else decompose_injectives(C, "right")
    if dec.side != "right":
        raise ValidationError("rational dual wants the right decomposition")
    B = dual_algebra(C)
    F = B.field
    ideals = []
    whole = RowSpace(F, B.dim)
    for j, e in enumerate(dec.idempotents):
        rs = RowSpace(F, B.dim)
        for i in range(B.dim):
            rs.add(B.multiply(basis_vec(F, B.dim, i), e))
        if rs.dim != len(dec.blocks[j]):
            raise ValidationError(
                f"ideal B*e_{j} has dim {rs.dim}, block has {len(dec.blocks[j])}")
        for v in rs.basis():
            whole.add(v)
        ideals.append(tuple(rs.basis()))
    if whole.dim != B.dim:
        raise ValidationError("ideals do not span the dual algebra")
    return RatDualAlgebra(B, dec, tuple(ideals))


def phi_l(C: FinCoalgebra, seed: int = 0, samples: int = 25) -> CoalgebraMorphism:
    """Evaluation of C into the finite dual of its dual algebra.

    Over a finite-dimensional coalgebra the matrix is the identity in dual
    bases; the content is that evaluation really is a coalgebra morphism,
    which the constructor checks, plus a seeded independent probe that the
    dual product is honest convolution: (f*g)(c) = sum f(c1) g(c2).
    """
    F = C.field
    B = dual_algebra(C)
    target = dual_coalgebra(B)
    rng = Random(seed)
    for _ in range(samples):
        f = tuple(F.from_int(rng.randint(-4, 4)) for _ in range(C.dim))
        g = tuple(F.from_int(rng.randint(-4, 4)) for _ in range(C.dim))
        k = rng.randrange(C.dim)
        prod = B.multiply(f, g)
        lhs = prod[k]
        rhs = F.zero
        for (i, j), v in C.comult.get(k, {}).items():
            rhs = F.add(rhs, F.mul(v, F.mul(f[i], g[j])))
        if lhs != rhs:
            raise ValidationError("dual product disagrees with convolution")
    return CoalgebraMorphism(C, target, SparseMatrix.identity(F, C.dim),
                             counital=C.is_counital())


@dataclass(frozen=True)
class CoreflexivityReport:
    bijective: bool
    kernel_rank: int
    source_dim: int
    target_dim: int


def left_coreflexive_check(C: FinCoalgebra, seed: int = 0) -> CoreflexivityReport:
    """Injectivity and surjectivity of the evaluation map."""
    m = phi_l(C, seed=seed)
    kernel_rank = len(m.matrix.kernel_basis())
    return CoreflexivityReport(
        bijective=m.is_bijective(),
        kernel_rank=kernel_rank,
        source_dim=m.source.dim,
        target_dim=m.target.dim,
    )


def rat_module_to_comodule(N: FinModule, C: FinCoalgebra) -> FinComodule:
    """Transport a module over the dual algebra back to a C-comodule.

    Needs the evaluation map to be bijective; the module must genuinely be
    over dual_algebra(C) or the tables will not match.
    """
    B = dual_algebra(C)
    if N.algebra.mult != B.mult or N.algebra.unit != B.unit:
        raise ValidationError("module is not over the dual algebra of C")
    rep = left_coreflexive_check(C)
    if not rep.bijective:
        raise NotLeftCoreflexive(
            f"evaluation has kernel rank {rep.kernel_rank}")
    M = module_to_comodule(N)
    return FinComodule(C, M.dim, {t: dict(tbl) for t, tbl in M.coaction.items()})


def hopf_selfdual_check(H) -> dict:
    """Double-dual identity and evaluation bijectivity for a bialgebra.

    Verifies the double transpose reproduces every table on the nose, that
    evaluation is a bijective coalgebra morphism, and that the injective
    blocks of the underlying coalgebra cover it exactly.
    """
    from .finite_dual import bialgebra_dual

    double = bialgebra_dual(bialgebra_dual(H))
    if double.algebra.mult != H.algebra.mult or double.algebra.unit != H.algebra.unit:
        raise ValidationError("double dual algebra differs")
    if double.coalgebra.comult != H.coalgebra.comult or \
            double.coalgebra.counit != H.coalgebra.counit:
        raise ValidationError("double dual coalgebra differs")
    antipode_match = (H.antipode is None and double.antipode is None)
    if H.antipode is not None and double.antipode is not None:
        antipode_match = H.antipode.entries == double.antipode.entries
    if not antipode_match:
        raise ValidationError("double dual antipode differs")
    rep = left_coreflexive_check(H.coalgebra)
    if not rep.bijective:
        raise ValidationError("evaluation is not bijective")
    dec = decompose_injectives(H.coalgebra, "right")
    counit_from_decomposition(dec)
    return {
        "double_dual_identity": True,
        "evaluation_bijective": True,
        "block_dims": dec.block_dims,
        "counit_recovered": True,
    }


def rat_dual_template(template, F: Field, radius: int, ambient_radius: int,
                      bound: int | None = None) -> dict:
    """Vertex blocks of a truncated path coalgebra with completeness flags.

    The coalgebra is built at ambient_radius while blocks are only formed
    for vertices within radius; every path of length <= radius anchored in
    the window then survives intact, which needs ambient >= 2*radius.  A
    block is certified complete when the template walk count is finite and
    equals the truncated block dimension.
    """
    if ambient_radius < 2 * radius:
        raise InsufficientClosureRadius(
            f"ambient radius {ambient_radius} < 2*radius = {2 * radius}")
    Q = template.truncate(ambient_radius)
    C, flat = path_coalgebra(F, Q, max_len=ambient_radius)
    if bound is None:
        bound = C.dim + 1
    anchors = {
        "right": [path_target(Q, p) for p in flat],
        "left": [p[0] for p in flat],
    }
    sides = {}
    for side in ("right", "left"):
        verts = list(template.vertices_within(radius))
        per_vertex = []
        for v in verts:
            members = tuple(n for n, a in enumerate(anchors[side]) if a == v)
            status, count = _count_walks(template, v, side == "left", bound)
            complete = status == "finite" and count == len(members)
            if status == "finite" and count < len(members):
                raise ValidationError(
                    "truncated block larger than the certified total")
            per_vertex.append({
                "vertex": v,
                "members": members,
                "status": status,
                "count": count,
                "complete": complete,
            })
        window = tuple(n for n, a in enumerate(anchors[side]) if a in set(verts))
        covered = sum(len(pv["members"]) for pv in per_vertex if pv["complete"])
        sides[side] = {
            "per_vertex": per_vertex,
            "window_dim": len(window),
            "covered_dim": covered,
            "annihilator_dim": len(window) - covered,
        }
    return {
        "coalgebra": C,
        "paths": flat,
        "radius": radius,
        "ambient_radius": ambient_radius,
        "bound": bound,
        "sides": sides,
    }


def semiperfect_iff_injective_harness(template, F: Field,
                                      radii=(2, 3, 4, 5, 6)) -> dict:
    """Cross-validate bounded semiperfectness against block completeness.

    For each side and radius the bounded walk check must agree with the
    vanishing of the annihilator of the certified-complete blocks inside
    the window of the truncated path coalgebra.
    """
    records = []
    disagreements = 0
    for radius in radii:
        data = rat_dual_template(template, F, radius, 2 * radius)
        for side in ("right", "left"):
            rep = semiperfect_check(template, side, radius, data["bound"])
            ann = data["sides"][side]["annihilator_dim"]
            agree = (rep.status == "holds") == (ann == 0)
            if rep.status == "unknown":
                agree = False
            if not agree:
                disagreements += 1
            records.append({
                "side": side,
                "radius": radius,
                "status": rep.status,
                "annihilator_dim": ann,
                "window_dim": data["sides"][side]["window_dim"],
                "agree": agree,
            })
    return {"records": records, "disagreements": disagreements}

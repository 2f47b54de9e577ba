"""Path and incidence structures, templates, semiperfectness certificates."""

import pytest

from dualis.combinat import (
    LineTemplate,
    LoopTemplate,
    Poset,
    Quiver,
    RayTemplate,
    StarTemplate,
    all_posets_up_to_iso,
    antichain_poset,
    chain_poset,
    incidence_algebra,
    incidence_coalgebra,
    make_template,
    path_algebra,
    path_coalgebra,
    paths_by_length,
    semiperfect_check,
    verify_incidencedual_iso,
    verify_pathdual_iso,
)
from dualis.errors import NotAcyclic, ValidationError
from dualis.fields import GF, QQ

A3 = Quiver((0, 1, 2), ((0, 1), (1, 2)))
LOOP = Quiver(("v",), (("v", "v"),))


def test_quiver_validation():
    with pytest.raises(ValidationError):
        Quiver((0, 0), ())
    with pytest.raises(ValidationError):
        Quiver((0,), ((0, 1),))


def test_acyclicity():
    assert A3.is_acyclic()
    assert not LOOP.is_acyclic()
    assert not Quiver((0, 1), ((0, 1), (1, 0))).is_acyclic()


def test_paths_by_length_a3():
    levels, truncated = paths_by_length(A3, None)
    assert [len(l) for l in levels] == [3, 2, 1]
    assert not truncated
    levels, truncated = paths_by_length(A3, 1)
    assert [len(l) for l in levels] == [3, 2]
    assert truncated


def test_paths_require_acyclic_or_cap():
    with pytest.raises(NotAcyclic):
        paths_by_length(LOOP, None)
    levels, truncated = paths_by_length(LOOP, 3)
    assert [len(l) for l in levels] == [1, 1, 1, 1]
    assert truncated


def test_path_algebra_diagram_order():
    F = QQ
    G, key_of = path_algebra(F, A3)
    assert G.total_dim == 6
    p01 = key_of[(0, (0,))]
    p12 = key_of[(1, (1,))]
    p012 = key_of[(0, (0, 1))]
    # p01 then p12 composes; the other order does not
    assert G.mul_flat({p01: F.one}, {p12: F.one}) == {p012: F.one}
    assert G.mul_flat({p12: F.one}, {p01: F.one}) == {}
    e0 = key_of[(0, ())]
    e1 = key_of[(1, ())]
    assert G.mul_flat({e0: F.one}, {p01: F.one}) == {p01: F.one}
    assert G.mul_flat({p01: F.one}, {e1: F.one}) == {p01: F.one}
    assert G.mul_flat({p01: F.one}, {e0: F.one}) == {}
    assert G.unit is not None


def test_path_coalgebra_a3():
    F = QQ
    C, flat = path_coalgebra(F, A3)
    assert flat == [(0, ()), (1, ()), (2, ()), (0, (0,)), (1, (1,)), (0, (0, 1))]
    assert C.comult[5] == {(0, 5): F.one, (3, 4): F.one, (5, 2): F.one}
    assert C.counit == (F.one, F.one, F.one, F.zero, F.zero, F.zero)


def test_pathdual_iso_a3_and_kronecker():
    for F in (QQ, GF(101)):
        alg, coalg = verify_pathdual_iso(F, A3)
        assert alg.is_bijective() and coalg.is_bijective()
    kron = Quiver((0, 1), ((0, 1), (0, 1)))
    alg, coalg = verify_pathdual_iso(QQ, kron)
    assert alg.source.dim == 4


def test_pathdual_iso_truncated_loop():
    alg, coalg = verify_pathdual_iso(QQ, LOOP, max_len=4)
    assert alg.source.dim == 5
    with pytest.raises(NotAcyclic):
        verify_pathdual_iso(QQ, LOOP)


def test_incidence_chain3():
    F = QQ
    A, ivs = incidence_algebra(F, chain_poset(3))
    assert ivs == [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
    # e_00 * e_01 = e_01, e_01 * e_12 = e_02
    assert A.basis_product(0, 1) == {1: F.one}
    assert A.basis_product(1, 4) == {2: F.one}
    assert A.basis_product(4, 1) == {}
    C, _ = incidence_coalgebra(F, chain_poset(2))
    assert C.comult[1] == {(0, 1): F.one, (1, 2): F.one}
    assert C.counit == (F.one, F.zero, F.one)


def test_incidencedual_iso_assorted():
    # chain, antichain, and the V with one bottom under two tops
    v_poset = Poset((0, 1, 2),
                    frozenset({(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)}))
    for P in (chain_poset(3), antichain_poset(3), v_poset):
        alg, coalg = verify_incidencedual_iso(QQ, P)
        assert alg.is_bijective() and coalg.is_bijective()


def test_poset_validation():
    with pytest.raises(ValidationError):
        Poset((0, 1), frozenset({(0, 0), (1, 1), (0, 1), (1, 0)}))
    with pytest.raises(ValidationError):
        Poset((0, 1, 2), frozenset({(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)}))


def test_poset_counts_up_to_iso():
    assert [len(all_posets_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_templates_truncate():
    line = LineTemplate()
    q = line.truncate(2)
    assert q.vertices == (-2, -1, 0, 1, 2)
    assert len(q.arrows) == 4
    ray = RayTemplate()
    q = ray.truncate(3)
    assert q.vertices == (0, 1, 2, 3)
    assert len(q.arrows) == 3
    star = StarTemplate(2)
    q = star.truncate(2)
    assert len(q.vertices) == 5
    assert len(q.arrows) == 4
    assert q.is_acyclic()
    assert not LoopTemplate().truncate(5).is_acyclic()


def test_make_template():
    assert make_template("star:3").rays == 3
    assert make_template("ray").name == "ray"
    with pytest.raises(ValidationError):
        make_template("moebius")


def test_semiperfect_ray():
    ray = RayTemplate()
    right = semiperfect_check(ray, "right", 3, 64)
    assert right.status == "holds"
    assert right.per_vertex == ((0, 1), (1, 2), (2, 3), (3, 4))
    left = semiperfect_check(ray, "left", 3, 64)
    assert left.status == "fails"
    assert left.vertex == 0


def test_semiperfect_line_fails_both():
    line = LineTemplate()
    for side in ("left", "right"):
        rep = semiperfect_check(line, side, 2, 32)
        assert rep.status == "fails"
        assert rep.count > 32


def test_semiperfect_star_and_loop():
    star = StarTemplate(3)
    assert semiperfect_check(star, "right", 4, 64).status == "holds"
    rep = semiperfect_check(star, "left", 4, 64)
    assert rep.status == "fails" and rep.vertex == "c"
    loop = LoopTemplate()
    assert semiperfect_check(loop, "right", 2, 16).status == "fails"
    assert semiperfect_check(loop, "left", 2, 16).status == "fails"


def test_semiperfect_finite_acyclic_holds_both():
    from dualis.combinat import FiniteTemplate
    t = FiniteTemplate(A3)
    assert semiperfect_check(t, "left", 1, 16).status == "holds"
    assert semiperfect_check(t, "right", 1, 16).status == "holds"

from fractions import Fraction

import pytest

from dualis.algebra import FinAlgebra, matrix_algebra
from dualis.combinat import chain_poset, incidence_algebra
from dualis.errors import DecompositionFailed, ValidationError
from dualis.fields import GF, QQ
from dualis.finite_dual import group_bialgebra
from dualis.idempotents import (
    complete_primitive_idempotents,
    min_poly_in_corner,
    newton_lift,
    split_semisimple_unit,
    verify_family,
)
from dualis.linalg import basis_vec, vec_add


def cyclic_group_algebra(F, n):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    inverses = [(-i) % n for i in range(n)]
    return group_bialgebra(F, table, inverses).algebra


def check_family(A, family):
    F = A.field
    total = tuple([F.zero] * A.dim)
    for e in family:
        assert A.multiply(e, e) == e
        total = vec_add(F, total, e)
    assert total == A.unit
    for i, e in enumerate(family):
        for f in family[i + 1:]:
            assert all(F.is_zero(v) for v in A.multiply(e, f))
            assert all(F.is_zero(v) for v in A.multiply(f, e))


def test_min_poly_of_matrix_unit():
    A = matrix_algebra(QQ, 2)
    e00 = basis_vec(QQ, 4, 0)
    # relative to the local unit e00 itself, e00 satisfies t - 1
    assert min_poly_in_corner(A, e00, e00) == [Fraction(-1), Fraction(1)]
    # relative to the global unit it satisfies t^2 - t
    one = tuple(A.unit)
    assert min_poly_in_corner(A, e00, one) == \
        [Fraction(0), Fraction(-1), Fraction(1)]


def test_matrix_algebra_splits_into_two():
    A = matrix_algebra(QQ, 2)
    family, certs = split_semisimple_unit(A)
    assert len(family) == 2
    assert certs == ["corner-dim-1", "corner-dim-1"]
    check_family(A, family)


def test_cyclic_group_rational():
    # K[Z/4] over the rationals: t^4 - 1 = (t-1)(t+1)(t^2+1)
    A = cyclic_group_algebra(QQ, 4)
    family, certs = complete_primitive_idempotents(A)
    assert len(family) == 3
    assert sorted(certs) == ["corner-dim-1", "corner-dim-1", "corner-field"]
    check_family(A, family)


def test_cyclic_group_split_field():
    # 13 = 1 mod 4, so the fourth roots of unity all exist and we get four blocks
    A = cyclic_group_algebra(GF(13), 4)
    family, certs = complete_primitive_idempotents(A)
    assert len(family) == 4
    assert certs == ["corner-dim-1"] * 4
    check_family(A, family)


def test_incidence_algebra_vertex_idempotents():
    A, ivs = incidence_algebra(QQ, chain_poset(3))
    family, certs = complete_primitive_idempotents(A)
    assert len(family) == 3
    check_family(A, family)
    # each lifted idempotent is a diagonal interval unit up to ordering
    diag = {ivs.index((a, a)) for a in range(3)}
    got = set()
    for e in family:
        support = {i for i, v in enumerate(e) if not QQ.is_zero(v)}
        assert len(support) == 1
        got |= support
    assert got == diag


def test_newton_lift_fixes_radical_error():
    A, ivs = incidence_algebra(QQ, chain_poset(3))
    e00 = basis_vec(QQ, A.dim, ivs.index((0, 0)))
    e12 = basis_vec(QQ, A.dim, ivs.index((1, 2)))
    x = vec_add(QQ, e00, e12)
    assert A.multiply(x, x) != x
    assert newton_lift(A, x) == e00


def test_newton_lift_gives_up_on_garbage():
    A = matrix_algebra(QQ, 2)
    x = vec_add(QQ, basis_vec(QQ, 4, 0), basis_vec(QQ, 4, 3))
    x = tuple(Fraction(2) * v for v in x)  # 2*I, nowhere near idempotent
    with pytest.raises(DecompositionFailed):
        newton_lift(A, x)


def test_verify_family_accepts_interval_units():
    A, ivs = incidence_algebra(GF(101), chain_poset(3))
    F = GF(101)
    family = [basis_vec(F, A.dim, ivs.index((a, a))) for a in range(3)]
    certs = verify_family(A, family)
    assert certs == ["corner-dim-1"] * 3


def test_verify_family_rejects_incomplete_and_nonorthogonal():
    A, ivs = incidence_algebra(QQ, chain_poset(3))
    e0 = basis_vec(QQ, A.dim, ivs.index((0, 0)))
    with pytest.raises(ValidationError):
        verify_family(A, [e0])
    one = tuple(A.unit)
    with pytest.raises(ValidationError):
        verify_family(A, [e0, one])  # sums to 1 + e0, and not orthogonal


def test_verify_family_rejects_imprimitive():
    A = matrix_algebra(QQ, 2)
    with pytest.raises(DecompositionFailed):
        verify_family(A, [tuple(A.unit)])


def test_nonsplit_corner_is_certified_not_split():
    # K[Z/3] over the rationals: t^3 - 1 = (t-1)(t^2+t+1), one quadratic field
    A = cyclic_group_algebra(QQ, 3)
    family, certs = complete_primitive_idempotents(A)
    assert len(family) == 2
    assert sorted(certs) == ["corner-dim-1", "corner-field"]
    check_family(A, family)


def test_symmetric_group_rational():
    # S_3: two linear characters and one 2x2 block, so 3 conjugacy blocks but
    # a complete primitive family has 1 + 1 + 2 = 4 members
    elems = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))
    table = [[elems.index(compose(p, q)) for q in elems] for p in elems]
    inverses = [elems.index(tuple(sorted(range(3), key=lambda i: p[i])))
                for p in elems]
    A = group_bialgebra(QQ, table, inverses).algebra
    family, certs = complete_primitive_idempotents(A)
    assert len(family) == 4
    check_family(A, family)

import random
from fractions import Fraction as F

import pytest

from conftest import class_instance, null_filiform
from oracles import (
    brute_leibniz_residual,
    brute_product,
    brute_rank,
    closure_dims,
)
from leibsuper import (
    GradingError,
    NotNilpotentError,
    Subspace,
    SuperAlgebra,
    abelian,
    build_remark21,
    check_identity,
    derived_square,
    generator_count,
    is_leibniz,
    lower_central_series,
    nilindex,
    right_annihilator,
    series_dims,
)
from leibsuper.algebra import IDENTITY_KINDS, evaluate_product


def test_grading_is_enforced_on_construction():
    with pytest.raises(GradingError):
        SuperAlgebra(1, 1, {(0, 0): {1: 1}})
    with pytest.raises(GradingError):
        SuperAlgebra(1, 1, {(1, 1): {1: 1}})
    SuperAlgebra(1, 1, {(1, 1): {0: 1}})


def test_names_round_trip():
    A = SuperAlgebra(3, 2)
    assert [A.name(i) for i in range(5)] == ["x1", "x2", "x3", "y1", "y2"]
    assert A.index("y2") == 4


def test_evaluate_product_on_basis():
    A = null_filiform(3)
    e = A.basis_vector
    assert evaluate_product(A, e(1), e(0)) == e(2)  # [e2, e1] = e3
    assert not any(evaluate_product(A, [0, 0, 0], [1, 2, 3]))


def test_evaluate_product_dimension_mismatch():
    with pytest.raises(ValueError):
        evaluate_product(null_filiform(3), [1, 0], [1, 0, 0])


def test_evaluate_product_matches_double_loop_oracle():
    rng = random.Random(3)
    A = class_instance("a", 5, (2, 1), rng).algebra
    vals = [F(c) for c in (-2, -1, 0, 1, 3)] + [F(1, 3)]
    for _ in range(1000):
        u = [rng.choice(vals) for _ in range(A.dim)]
        v = [rng.choice(vals) for _ in range(A.dim)]
        assert list(evaluate_product(A, u, v)) == brute_product(A, u, v)


def test_zoo_products_match_oracle(zoo):
    rng = random.Random(8)
    for A in zoo:
        for _ in range(200):
            u = [F(rng.randint(-3, 3)) for _ in range(A.dim)]
            v = [F(rng.randint(-3, 3)) for _ in range(A.dim)]
            assert list(evaluate_product(A, u, v)) == brute_product(A, u, v)


def test_identity_checks_on_known_algebras():
    for n in range(1, 7):
        assert check_identity(null_filiform(n), "leibniz-super").holds
    ab = abelian(2, 2)
    for kind in IDENTITY_KINDS:
        assert check_identity(ab, kind).holds


def test_unknown_identity_kind():
    with pytest.raises(ValueError):
        check_identity(abelian(1, 0), "associativity")


def test_injected_product_violations_match_brute_force():
    base = null_filiform(4)
    # extra [e1, e2] = e3 breaks the identity
    A = base.with_products({(0, 1): {2: 1}})
    rep = check_identity(A, "leibniz-super")
    assert not rep.holds
    assert not is_leibniz(A)
    flagged = {idx for idx, _ in rep.violations}
    for a in range(A.dim):
        for b in range(A.dim):
            for c in range(A.dim):
                res = brute_leibniz_residual(A, a, b, c)
                assert ((a, b, c) in flagged) == any(res)
    for idx, res in rep.violations:
        assert list(res) == brute_leibniz_residual(A, *idx)


def test_zoo_is_leibniz_by_brute_force(zoo):
    for A in zoo:
        assert check_identity(A, "leibniz-super").holds
        assert all(
            not any(brute_leibniz_residual(A, a, b, c))
            for a in range(A.dim) for b in range(A.dim) for c in range(A.dim)
        )


def test_antisymmetric_leibniz_implies_jacobi():
    # a small Lie superalgebra: Heisenberg-like [y1, y1] = x1 with symmetric odd bracket
    A = SuperAlgebra(1, 2, {(1, 1): {0: 1}, (2, 2): {0: 1}})
    assert check_identity(A, "antisymmetry").holds
    assert check_identity(A, "leibniz-super").holds
    assert check_identity(A, "jacobi-super").holds
    # Heisenberg Lie algebra in the even part
    H = SuperAlgebra(3, 0, {(0, 1): {2: 1}, (1, 0): {2: -1}})
    assert all(check_identity(H, k).holds for k in IDENTITY_KINDS)


def test_lie_property_over_zoo(zoo):
    for A in zoo:
        if check_identity(A, "antisymmetry").holds:
            assert check_identity(A, "jacobi-super").holds


def test_series_examples():
    assert series_dims(null_filiform(4)) == [4, 3, 2, 1, 0]
    assert series_dims(abelian(2, 3)) == [5, 0]
    A = class_instance("a", 5, (2, 1), alpha4=F(1, 2), alpha5=3, theta=-1).algebra
    assert series_dims(A) == closure_dims(A)


def test_series_matches_closure_oracle(zoo):
    for A in zoo:
        assert series_dims(A) == closure_dims(A)


def test_series_is_monotone(zoo):
    for A in zoo:
        terms = lower_central_series(A)
        for big, small in zip(terms, terms[1:]):
            assert small <= big and small.dim < big.dim


def test_nilindex_examples():
    assert nilindex(null_filiform(5)) == 6
    assert nilindex(abelian(2, 1)) == 2
    assert nilindex(abelian(0, 0)) == 1
    assert nilindex(build_remark21(3, 4)) == 8


def test_non_nilpotent_detection():
    A = SuperAlgebra(1, 0, {(0, 0): {0: 1}})
    assert nilindex(A) is None
    with pytest.raises(NotNilpotentError):
        generator_count(A)


def test_right_annihilator_examples():
    assert right_annihilator(abelian(2, 1)).dim == 3
    R = right_annihilator(null_filiform(3))
    # [e_i, z] = 0 for all i forces the e1 coordinate to vanish
    assert R == Subspace.span(3, 0, [[0, 1, 0], [0, 0, 1]])


def test_remark_instance_symmetrised_product_in_annihilator():
    A = build_remark21(3, 4)
    x1, y1 = A.index("x1"), A.index("y1")
    v = [a + b for a, b in zip(A.product(x1, y1), A.product(y1, x1))]
    assert v == list(A.vector(y2=F(3, 2)))
    assert right_annihilator(A).contains(v)


def test_symmetrised_products_lie_in_annihilator(zoo):
    for A in zoo:
        R = right_annihilator(A)
        for a in range(A.dim):
            for b in range(A.dim):
                sign = -1 if A.parity(a) and A.parity(b) else 1
                v = [p + sign * q for p, q in zip(A.product(a, b), A.product(b, a))]
                assert R.contains(v)


def test_right_annihilator_is_ideal(zoo):
    for A in zoo:
        R = right_annihilator(A)
        for z in R.basis:
            for i in range(A.dim):
                e = A.basis_vector(i)
                assert R.contains(evaluate_product(A, z, e))
                assert R.contains(evaluate_product(A, e, z))


def test_generator_count_examples():
    assert generator_count(null_filiform(4)) == 1
    assert generator_count(abelian(2, 2)) == 4
    for part in ((2, 1), (2, 2, 1), (3,)):
        A = class_instance("a", 5, part).algebra
        assert generator_count(A) == 2 + len(part)
        # oracle: dim L - dim span of all products
        prods = [A.product(i, j) for i in range(A.dim) for j in range(A.dim)]
        assert generator_count(A) == A.dim - brute_rank(prods)


def test_derived_square_graded_dims():
    A = class_instance("b", 4, (2, 1)).algebra
    sq = derived_square(A)
    assert sq.graded_dims == (2, 1)  # x3, x4 | y2


def test_subspace_canonical_equality():
    a = Subspace.span(2, 1, [[1, 1, 0], [0, 1, 0]])
    b = Subspace.span(2, 1, [[1, 0, 0], [0, 2, 0]])
    assert a == b and a.dim == 2 and a.graded_dims == (2, 0)
    assert Subspace.zero(2, 1) <= a <= Subspace.whole(2, 1)

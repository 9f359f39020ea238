import random
from fractions import Fraction as F

import pytest

from conftest import POOL, class_instance, null_filiform, valid_zoo
from oracles import brute_product, graded_matrix
from leibsuper import (
    BasisChange,
    Lemma31Case,
    abelian,
    change_basis,
    characteristic_sequence,
    check_identity,
    generator_count,
    lemma31_transform,
    lemma31_with_retry,
    nilindex,
    right_annihilator,
    series_dims,
    verify_preserved_products,
)
from leibsuper.basis_change import DependentBasisError
from leibsuper.invariants import SamplingConfig
from leibsuper.linalg import identity
from leibsuper.sampling import draw_lemma31_instance


def test_identity_change_is_a_no_op(zoo):
    for A in zoo:
        assert change_basis(A, BasisChange.identity(A.n, A.m)) == A


def test_doubling_coordinates_halves_constants():
    A = null_filiform(3)
    two = [[2 * x for x in row] for row in identity(3)]
    B = change_basis(A, BasisChange(3, 0, two))
    # new basis vectors are e_i / 2, so [e_i/2, e_1/2] = (1/2)(e_(i+1)/2)
    assert B.product(1, 0) == B.vector(x3=F(1, 2))


def test_doubling_basis_vectors_doubles_constants():
    A = null_filiform(3)
    B = change_basis(A, BasisChange.from_new_basis(3, 0, [[2 * x for x in r] for r in identity(3)]))
    assert B.product(0, 0) == B.vector(x2=2)
    assert B.product(1, 0) == B.vector(x3=2)


def test_change_must_respect_grading():
    with pytest.raises(ValueError):
        BasisChange(1, 1, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        BasisChange(1, 1, [[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        change_basis(null_filiform(2), BasisChange.identity(1, 1))


def test_round_trip_and_transported_products():
    rng = random.Random(21)
    for A in valid_zoo():
        T = BasisChange(A.n, A.m, graded_matrix(rng, A.n, A.m))
        B = change_basis(A, T)
        assert change_basis(B, T.inverse()) == A
        # oracle: T [P u, P v]_A == [u, v]_B for new-coordinate vectors u, v
        P = T.new_basis()
        for _ in range(20):
            u = [F(rng.randint(-2, 2)) for _ in range(A.dim)]
            v = [F(rng.randint(-2, 2)) for _ in range(A.dim)]
            pu = [sum(u[k] * P[k][i] for k in range(A.dim)) for i in range(A.dim)]
            pv = [sum(v[k] * P[k][i] for k in range(A.dim)) for i in range(A.dim)]
            w = brute_product(A, pu, pv)
            expect = [sum(T.matrix[s][r] * w[r] for r in range(A.dim)) for s in range(A.dim)]
            assert brute_product(B, u, v) == expect


def invariants(A):
    return (
        nilindex(A),
        series_dims(A),
        right_annihilator(A).dim,
        generator_count(A),
        check_identity(A, "leibniz-super").holds,
        characteristic_sequence(A, SamplingConfig(seed=3)),
    )


def test_invariants_survive_random_changes():
    rng = random.Random(77)
    zoo = valid_zoo()
    for t in range(100):
        A = zoo[t % len(zoo)]
        T = BasisChange(A.n, A.m, graded_matrix(rng, A.n, A.m))
        assert invariants(change_basis(A, T)) == invariants(A), t


def test_a1_with_plain_driver_keeps_everything():
    A = class_instance("a", 5, (2, 1), random.Random(6)).algebra
    T, B = lemma31_transform(A, Lemma31Case("a1", 1, 0))
    assert verify_preserved_products(A, B, "a").holds
    assert [list(r) for r in T.matrix] == identity(A.dim)


def test_b1_keeps_x2_when_gamma_vanishes():
    A = class_instance("b", 5, (2, 1), gamma=0).algebra
    T, B = lemma31_transform(A, Lemma31Case("b1", 1, 1))
    assert T.new_basis()[1] == list(A.basis_vector(1))


def test_c2_on_zero_parameter_instance_reproduces_the_table():
    A = class_instance("c", 4, (2, 1)).algebra
    _, B = lemma31_transform(A, Lemma31Case("c2", 0, 1, 5))
    assert B == A


def test_swapping_first_two_vectors_breaks_class_a():
    A = class_instance("a", 5, (2, 1)).algebra
    rows = [list(A.basis_vector(i)) for i in range(A.dim)]
    rows[0], rows[1] = rows[1], rows[0]
    B = change_basis(A, BasisChange.from_new_basis(A.n, A.m, rows))
    assert not verify_preserved_products(A, B, "a").holds


def test_case_validation_and_labels():
    assert Lemma31Case.parse("a.1", 1, 0) == Lemma31Case("a1", 1, 0)
    for bad in [("a1", 0, 0), ("a1", 1, -1), ("a2", 1, 1, 2), ("a2", 0, 1),
                ("a2", 0, 1, -1), ("a3", 1, 1, 1), ("b1", 0, 1), ("z9", 1, 0)]:
        with pytest.raises(ValueError):
            Lemma31Case(*bad)


def test_dependent_primed_vectors_are_reported():
    # in an abelian algebra x'_3 = [x'_2, x'_1] vanishes
    with pytest.raises(DependentBasisError):
        lemma31_transform(abelian(4, 1), Lemma31Case("a1", 1, 0))


@pytest.mark.parametrize("case", ["a1", "a3", "b1", "b2", "c1", "c2"])
def test_every_case_normalises_random_instances(case):
    for t in range(15):
        rng = random.Random(f"bc-{case}-{t}")
        A, A1, A2 = draw_lemma31_instance(rng, case, 5, (2, 1), POOL)
        out = lemma31_with_retry(A, case, A1, A2, (2, 1))
        assert not out.exhausted, (case, t)
        assert out.report.holds
        assert check_identity(out.algebra, "leibniz-super").holds


def test_a2_printed_formula_can_exhaust_but_corrected_one_does_not():
    printed = corrected = 0
    for t in range(40):
        rng = random.Random(f"a2-{t}")
        A, A1, A2 = draw_lemma31_instance(rng, "a2", 5, (2, 1), POOL)
        printed += lemma31_with_retry(A, "a2", A1, A2, (2, 1)).exhausted
        corrected += lemma31_with_retry(A, "a2", A1, A2, (2, 1), formula="corrected").exhausted
    assert printed > 0 and corrected == 0

import math
from fractions import Fraction

import numpy as np
import pytest

from schatten_embed.embed import (
    EmbeddingMap,
    Field,
    Kind,
    SpaceSpec,
    apply,
    compose,
    corner_embedding,
    cubature_embedding_2_4_3,
    diag_embedding,
    element_norm,
    first_row_embedding,
    lambda_bound,
    s2_to_sp_embedding,
    sum_diff_embedding,
    vec_embedding,
    verify_isometry,
)
from schatten_embed.errors import NumericalError, PreconditionError
from schatten_embed.matcore import singular_values
from schatten_embed.schatten import schatten_norm, vector_pnorm

from conftest import random_complex

EXPONENTS = [0.5, 1.0, 2.0, 3.0, math.inf]


def test_space_spec_validation():
    with pytest.raises(PreconditionError):
        SpaceSpec(Kind.MATRIX, 2, 2.0, Field.REAL)
    with pytest.raises(PreconditionError):
        SpaceSpec(Kind.VECTOR, 0, 2.0)
    with pytest.raises(PreconditionError):
        SpaceSpec(Kind.VECTOR, 2, -1.0)
    with pytest.raises(PreconditionError):
        SpaceSpec(Kind.VECTOR, 2, 2.0, Field.QUATERNION)
    assert SpaceSpec("MATRIX", 3, "inf").shape == (3, 3)


def test_embedding_map_shape_check():
    dom = SpaceSpec(Kind.VECTOR, 2, 1.0)
    cod = SpaceSpec(Kind.VECTOR, 3, 1.0)
    with pytest.raises(PreconditionError):
        EmbeddingMap(dom, cod, np.zeros((3, 3)))


class TestApply:
    def test_diag(self):
        np.testing.assert_array_equal(apply(diag_embedding(2, 1), [3, 4]), np.diag([3, 4]))

    def test_sum_diff(self):
        np.testing.assert_array_equal(apply(sum_diff_embedding(2), [1, 2]), [-1, 3])

    def test_zero(self):
        for emb in (diag_embedding(3, 2), vec_embedding(2), cubature_embedding_2_4_3()):
            assert not np.any(apply(emb, np.zeros(emb.domain.shape)))

    def test_shape_mismatch(self):
        with pytest.raises(PreconditionError):
            apply(diag_embedding(2, 1), [1, 2, 3])

    def test_complex_into_real_domain(self):
        with pytest.raises(PreconditionError):
            apply(sum_diff_embedding(2), [1j, 0])

    def test_callable(self):
        emb = vec_embedding(2)
        np.testing.assert_array_equal(emb(np.eye(2)), apply(emb, np.eye(2)))


class TestConstructors:
    def test_diag_basis(self):
        emb = diag_embedding(2, 2)
        np.testing.assert_array_equal(emb.basis_images[0], np.diag([1, 0]))

    def test_diag_scalar(self):
        emb = diag_embedding(1, 0.5)
        assert apply(emb, [-2.5]).shape == (1, 1)
        assert element_norm(emb.codomain, apply(emb, [-2.5])) == 2.5

    def test_diag_isometric(self, rng):
        for p in (0.5, 1, 2, math.inf):
            emb = diag_embedding(4, p)
            for _ in range(20):
                x = random_complex(rng, 4, 1).ravel()
                assert schatten_norm(apply(emb, x), p) == pytest.approx(vector_pnorm(x, p), rel=1e-12)

    def test_corner_identity(self, rng):
        A = random_complex(rng, 3, 3)
        np.testing.assert_array_equal(apply(corner_embedding(3, 3, 1), A), A)

    def test_corner_scalar(self):
        np.testing.assert_array_equal(apply(corner_embedding(1, 2, 2), np.array([[5.0]])), np.diag([5, 0]))

    def test_corner_singular_values_padded(self, rng):
        A = random_complex(rng, 2, 2)
        s = singular_values(apply(corner_embedding(2, 4, 1), A))
        np.testing.assert_allclose(s, np.r_[singular_values(A), 0, 0], atol=1e-12)

    def test_corner_bad_dims(self):
        with pytest.raises(PreconditionError):
            corner_embedding(3, 2, 1)

    def test_sum_diff_examples(self):
        emb = sum_diff_embedding(4)
        y = apply(emb, [1.0, 2.0])
        np.testing.assert_array_equal(y, [-1, 3, 0, 0])
        assert vector_pnorm(y, math.inf) == 3 == vector_pnorm([1, 2], 1)
        y = apply(emb, [1.0, -1.0])
        np.testing.assert_array_equal(y, [2, 0, 0, 0])
        with pytest.raises(PreconditionError):
            sum_diff_embedding(1)

    def test_first_row(self):
        emb = first_row_embedding(2, 3)
        y = apply(emb, [3, 4, 0, 0])
        for p in EXPONENTS:
            assert schatten_norm(y, p) == pytest.approx(5.0, rel=1e-14)
        E = apply(emb, [1, 0, 0, 0])
        expected = np.zeros((4, 4))
        expected[0, 0] = 1
        np.testing.assert_array_equal(E, expected)

    def test_first_row_random(self, rng):
        for p in EXPONENTS:
            emb = first_row_embedding(2, p)
            for _ in range(50):
                a = random_complex(rng, 4, 1).ravel()
                assert abs(schatten_norm(apply(emb, a), p) - np.linalg.norm(a)) <= 1e-10 * np.linalg.norm(a)

    def test_vec(self, rng):
        emb = vec_embedding(2)
        y = apply(emb, np.ones((2, 2)))
        np.testing.assert_array_equal(y, [1, 1, 1, 1])
        assert vector_pnorm(y, 2) == schatten_norm(np.ones((2, 2)), 2) == pytest.approx(2.0)
        E12 = np.array([[0, 1], [0, 0]])
        np.testing.assert_array_equal(apply(emb, E12), [0, 1, 0, 0])
        A = random_complex(rng, 3, 3)
        assert vector_pnorm(apply(vec_embedding(3), A), 2) == pytest.approx(schatten_norm(A, 2), rel=1e-12)

    def test_s2sp(self, rng):
        for p in (1, 2, math.inf):
            y = apply(s2_to_sp_embedding(2, p), np.eye(2))
            assert schatten_norm(y, p) == pytest.approx(math.sqrt(2), rel=1e-14)
        assert not np.any(apply(s2_to_sp_embedding(2, 1), np.zeros((2, 2))))

    def test_s2sp_random(self, rng):
        for p in (0.5, 1, 3, math.inf):
            emb = s2_to_sp_embedding(3, p)
            for _ in range(50):
                A = random_complex(rng, 3, 3)
                ref = schatten_norm(A, 2)
                assert abs(schatten_norm(apply(emb, A), p) - ref) <= 1e-10 * ref

    def test_composition_is_exact(self, rng):
        for m in (1, 2, 3):
            outer, inner = first_row_embedding(m, 3), vec_embedding(m)
            composed = s2_to_sp_embedding(m, 3)
            for _ in range(10):
                A = random_complex(rng, m, m)
                np.testing.assert_array_equal(apply(composed, A), apply(outer, apply(inner, A)))

    def test_compose_mismatch(self):
        with pytest.raises(PreconditionError):
            compose(first_row_embedding(2, 1), vec_embedding(3))

    def test_corner_after_diag(self, rng):
        emb = compose(corner_embedding(2, 5, 3), diag_embedding(2, 3))
        assert emb.domain.kind is Kind.VECTOR and emb.codomain.dim == 5
        assert verify_isometry(emb, 50, 1, 1e-10).passed


def test_cubature_trig_identity():
    theta = np.linspace(0, 2 * np.pi, 1000)
    total = sum(np.cos(theta - k * np.pi / 3) ** 4 for k in range(3))
    np.testing.assert_allclose(total, 9 / 8, atol=1e-14)


class TestCubature:
    def test_unit_vector(self):
        c = (8 / 9) ** 0.25
        y = apply(cubature_embedding_2_4_3(), [1.0, 0.0])
        np.testing.assert_allclose(y, c * np.array([1, 0.5, -0.5]), atol=1e-15)
        assert np.sum(y**4) == pytest.approx(1.0, rel=1e-14)

    def test_random(self, rng):
        emb = cubature_embedding_2_4_3()
        for _ in range(100):
            u = rng.standard_normal(2)
            assert abs(vector_pnorm(apply(emb, u), 4) - np.linalg.norm(u)) <= 1e-10 * np.linalg.norm(u)


class TestVerifyIsometry:
    def test_diag(self):
        v = verify_isometry(diag_embedding(3, 1), 100, 0, 1e-10)
        assert v.passed and v.max_relative_residual <= 1e-10

    def test_first_row_quasi(self):
        assert verify_isometry(first_row_embedding(2, 0.5), 100, 0, 1e-9).passed

    def test_non_isometry(self):
        v = verify_isometry(diag_embedding(2, 2, domain_exponent=1), 100, 0, 1e-9)
        assert not v.passed
        assert v.max_relative_residual >= 1 - math.sqrt(2) / 2 - 1e-12
        assert v.max_relative_residual == pytest.approx(1 - math.sqrt(2) / 2, abs=1e-12)

    def test_deterministic(self):
        emb = diag_embedding(3, 0.5, domain_exponent=1)
        assert verify_isometry(emb, 30, 4, 1e-9) == verify_isometry(emb, 30, 4, 1e-9)

    def test_bad_count(self):
        with pytest.raises(PreconditionError):
            verify_isometry(diag_embedding(2, 1), 0, 0, 1e-9)


def oracle_binomial(n, k):
    """Pascal's rule, no factorials or library calls."""
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k]


def oracle_lambda(m, p, field):
    if field == "R":
        return Fraction(oracle_binomial(m + p - 1, m - 1))
    if field == "C":
        return Fraction(oracle_binomial(m + p // 2 - 1, m - 1)) ** 2
    return Fraction(
        oracle_binomial(2 * m + p // 2 - 2, 2 * m - 2) * oracle_binomial(2 * m + p // 2 - 1, 2 * m - 2),
        2 * m - 1,
    )


class TestLambda:
    @pytest.mark.parametrize(
        "m, p, field, expected",
        [(2, 2, "R", 3), (2, 2, "C", 4), (2, 4, "C", 9), (2, 2, "H", 6)],
    )
    def test_table(self, m, p, field, expected):
        assert oracle_lambda(m, p, field) == expected
        assert lambda_bound(m, p, field) == expected

    @pytest.mark.parametrize("field", ["R", "C", "H"])
    def test_against_oracle(self, field):
        for m in range(2, 7):
            for p in range(2, 13, 2):
                ref = oracle_lambda(m, p, field)
                got = lambda_bound(m, p, field)
                assert isinstance(got, int)
                assert ref.denominator == 1 and got == ref.numerator

    @pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX, Field.QUATERNION])
    def test_monotone_in_p(self, field):
        for m in (2, 3):
            values = [lambda_bound(m, p, field) for p in (2, 4, 6, 8)]
            assert values == sorted(values)

    @pytest.mark.parametrize("m, p", [(2, 3), (2, 0), (2, -2), (1, 2), (2, 2.5), (2.5, 2)])
    def test_bad_arguments(self, m, p):
        with pytest.raises(PreconditionError):
            lambda_bound(m, p, "R")

    def test_bad_field(self):
        with pytest.raises(PreconditionError):
            lambda_bound(2, 2, "O")

    def test_long_names(self):
        assert lambda_bound(3, 4, "COMPLEX") == lambda_bound(3, 4, "C") == 36

    def test_quaternion_integrality_check(self, monkeypatch):
        import schatten_embed.embed as mod

        monkeypatch.setattr(mod.math, "comb", lambda n, k: 7)
        with pytest.raises(NumericalError):
            lambda_bound(2, 2, "H")

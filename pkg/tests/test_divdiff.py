import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schatten_embed.divdiff import (
    abs_pow_symbol,
    divided_difference,
    polynomial_symbol,
    snap_nodes,
)
from schatten_embed.errors import PreconditionError


def monomial(d):
    return polynomial_symbol([0.0] * d + [1.0])


def complete_homogeneous(degree, xs):
    """h_degree(xs) by explicit enumeration of monomials."""
    return sum(math.prod(c) for c in itertools.combinations_with_replacement(xs, degree))


def lagrange_form(f, xs):
    """Divided difference at distinct nodes: sum_i f(x_i) / prod_{j != i} (x_i - x_j)."""
    return sum(
        f(xi) / math.prod(xi - xj for j, xj in enumerate(xs) if j != i) for i, xi in enumerate(xs)
    )


class TestSymbols:
    def test_square(self):
        f = abs_pow_symbol(2)
        assert (f(-3), f.derivative(-3, 1), f.derivative(-3, 2)) == (9, -6, 2)
        assert f.derivative(0.0, 2) == 2.0

    def test_abs_cube(self):
        f = abs_pow_symbol(3)
        assert (f(-2), f.derivative(-2, 1), f.derivative(-2, 2)) == (8, -12, 12)

    def test_p_above_two_second_derivative_at_zero(self):
        assert abs_pow_symbol(2.5).derivative(0.0, 2) == 0.0

    @pytest.mark.parametrize("p, order", [(0.5, 0), (1.0, 0), (1.5, 1), (2.0, 2), (7.0, 2)])
    def test_max_order(self, p, order):
        assert abs_pow_symbol(p).max_order == order

    def test_first_derivative_at_zero(self):
        assert abs_pow_symbol(1.5).derivative(0.0, 1) == 0.0

    @pytest.mark.parametrize("p", [0, -1, math.inf])
    def test_bad_p(self, p):
        with pytest.raises(PreconditionError):
            abs_pow_symbol(p)

    def test_order_too_high(self):
        with pytest.raises(PreconditionError):
            abs_pow_symbol(1.5).derivative(1.0, 2)

    def test_polynomials(self):
        assert polynomial_symbol([0, 0, 1])(3) == 9
        assert monomial(3).derivative(1, 1) == 3
        assert monomial(4).derivative(2, 2) == 48
        assert monomial(2).max_order == 3
        assert monomial(2).derivative(5.0, 3) == 0.0

    def test_abs_pow_finite_everywhere(self):
        for p in (0.5, 1.5, 2.0, 2.5, 4.0):
            f = abs_pow_symbol(p)
            for x in (-1e6, -1.0, -1e-300, 0.0, 1e-300, 3.0):
                for k in range(f.max_order + 1):
                    assert math.isfinite(f.derivative(x, k))


class TestDividedDifference:
    def test_cube_distinct(self):
        assert divided_difference(monomial(3), [0, 1, 2]) == pytest.approx(3.0)

    def test_cube_confluent(self):
        assert divided_difference(monomial(3), [1, 1]) == pytest.approx(3.0)

    def test_abs_cube_across_zero(self):
        assert divided_difference(abs_pow_symbol(3), [-1, 0, 1]) == pytest.approx(1.0)

    def test_order_zero(self):
        assert divided_difference(monomial(2), [3.0]) == 9.0

    def test_triple_node(self):
        # f^{[2]}(a, a, a) = f''(a) / 2
        assert divided_difference(monomial(4), [2, 2, 2]) == pytest.approx(24.0)

    def test_third_order_confluent(self):
        # f^{[3]}(a, a, a, a) = f'''(a) / 6 for x^4: 4a
        assert divided_difference(monomial(4), [1.5] * 4) == pytest.approx(6.0)

    def test_requires_derivatives(self):
        with pytest.raises(PreconditionError):
            divided_difference(abs_pow_symbol(1.5), [1.0, 1.0, 1.0])
        with pytest.raises(PreconditionError):
            divided_difference(abs_pow_symbol(0.5), [1.0, 1.0])

    def test_distinct_nodes_need_no_derivatives(self):
        got = divided_difference(abs_pow_symbol(0.5), [0.0, 1.0, 4.0])
        assert got == pytest.approx(lagrange_form(lambda x: abs(x) ** 0.5, [0.0, 1.0, 4.0]))

    def test_empty(self):
        with pytest.raises(PreconditionError):
            divided_difference(monomial(2), [])

    def test_near_coincident_snapped(self):
        f = monomial(3)
        # without snapping, cancellation would leave only a couple of correct digits
        assert divided_difference(f, [1.0, 1.0 + 1e-14]) == pytest.approx(3.0, rel=1e-13)

    def test_snap_preserves_order(self):
        assert snap_nodes([2.0, 1.0, 2.0 + 1e-15]) == [2.0 + 5e-16, 1.0, 2.0 + 5e-16]

    def test_permutation_symmetry(self):
        rng = np.random.default_rng(5)
        f = monomial(4)
        for _ in range(100):
            nodes = rng.uniform(-3, 3, size=3)
            if rng.random() < 0.3:
                nodes[2] = nodes[0]
            values = [divided_difference(f, perm) for perm in itertools.permutations(nodes)]
            ref = values[0]
            assert all(abs(v - ref) <= 1e-9 * (1 + abs(ref)) for v in values)

    def test_matches_lagrange_form(self):
        rng = np.random.default_rng(6)
        f = abs_pow_symbol(2.5)
        for _ in range(50):
            nodes = list(rng.uniform(-2, 2, size=3))
            ref = lagrange_form(f, nodes)
            assert divided_difference(f, nodes) == pytest.approx(ref, rel=1e-8, abs=1e-10)

    @pytest.mark.parametrize("n", range(6))
    def test_polynomial_exactness(self, n):
        rng = np.random.default_rng(100 + n)
        f = monomial(n)
        for _ in range(20):
            nodes = list(rng.uniform(-1, 1, size=n + 2))
            assert abs(divided_difference(f, nodes[: n + 1]) - 1.0) <= 1e-9
            assert abs(divided_difference(f, nodes)) <= 1e-9

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_monomial_identity(self, d):
        rng = np.random.default_rng(d)
        f = monomial(d)
        for _ in range(20):
            nodes = list(rng.uniform(-2, 2, size=3))
            for pattern in ((0, 1, 2), (0, 0, 1), (1, 0, 1), (2, 2, 2)):
                xs = [nodes[i] for i in pattern]
                ref = complete_homogeneous(d - 2, xs)
                assert divided_difference(f, xs) == pytest.approx(ref, rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize("f", [monomial(3), abs_pow_symbol(2.5), abs_pow_symbol(1.5)])
    def test_confluent_limit(self, f):
        for a in (-1.3, 0.4, 2.0):
            d1 = f.derivative(a, 1)
            assert abs(divided_difference(f, [a, a + 1e-6]) - d1) <= 1e-5 * (1 + abs(d1))


@given(
    st.lists(st.floats(-5, 5, allow_nan=False), min_size=3, max_size=3),
    st.permutations(range(3)),
)
def test_symmetry_property(nodes, perm):
    f = abs_pow_symbol(3)
    a = divided_difference(f, nodes)
    b = divided_difference(f, [nodes[i] for i in perm])
    assert a == pytest.approx(b, rel=1e-6, abs=1e-6)

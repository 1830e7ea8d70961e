import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kts import BasisKind, Patch, TensorPoly, evaluate, jacobian, linear_combine, partial_derivative, reparametrize
from kts.polybasis import basis_values, constant, reparametrize_box, to_local
from kts.verify import fixture_nearest_zero, fixture_random

BASES = list(BasisKind)


def to_natural(basis, patch, x):
    return to_local(basis, patch, x)


class TestEvaluate:
    def test_bernstein_partition_of_unity(self, rng):
        p = TensorPoly("bernstein", np.tile([3.0, -1.0], (3, 4, 1)))
        for x in rng.random((10, 2)):
            np.testing.assert_allclose(evaluate(p, x), [3.0, -1.0], atol=1e-14)

    def test_chebyshev_t2(self):
        p = TensorPoly("chebyshev", np.array([[[0.0]], [[0.0]], [[1.0]]]))
        assert evaluate(p, (0.5, 0.3))[0] == pytest.approx(-0.5, abs=1e-15)

    def test_power_border_system(self, border_system):
        np.testing.assert_allclose(evaluate(border_system, (0.5, 0.8)), [0.0, 0.0], atol=1e-15)

    def test_batched_shape(self, reference, rng):
        pts = rng.random((4, 5, 2))
        out = evaluate(reference, pts)
        assert out.shape == (4, 5, 2)
        np.testing.assert_allclose(out[2, 3], evaluate(reference, pts[2, 3]))

    @pytest.mark.parametrize("basis", BASES)
    def test_basis_values_match_numpy(self, basis, rng):
        t = rng.uniform(-1, 1, 7)
        vals = basis_values(basis, 4, t)
        for k in range(5):
            e = np.zeros(5)
            e[k] = 1.0
            if basis is BasisKind.POWER:
                ref = np.polynomial.polynomial.polyval(t, e)
            elif basis is BasisKind.CHEBYSHEV:
                ref = np.polynomial.chebyshev.chebval(t, e)
            else:
                from math import comb
                ref = comb(4, k) * t**k * (1 - t) ** (4 - k)
            np.testing.assert_allclose(vals[..., k], ref, atol=1e-13)

    def test_well_formedness(self):
        assert TensorPoly("power", np.zeros((2, 3))).dim == 1  # 2-D grid is a scalar system
        with pytest.raises(ValueError):
            TensorPoly("power", np.zeros(3))
        with pytest.raises(ValueError):
            TensorPoly("power", np.full((2, 2, 2), np.nan))
        with pytest.raises(ValueError):
            BasisKind.parse("legendre")


class TestDerivatives:
    @pytest.mark.parametrize("basis", BASES)
    def test_constant_has_zero_derivative(self, basis):
        p = constant(basis, [2.0, -1.0], (2, 3))
        for axis in ("u", "v"):
            d = partial_derivative(p, axis)
            np.testing.assert_allclose(evaluate(d, (0.3, 0.7)), 0.0, atol=1e-14)

    def test_power_rule(self):
        p = TensorPoly("power", np.array([[[0.0]], [[0.0]], [[0.0]], [[1.0]]]))
        d = partial_derivative(p, "u")
        assert d.m == 2
        np.testing.assert_allclose(d.coeffs[:, 0, 0], [0.0, 0.0, 3.0])

    def test_chebyshev_t2_derivative(self, rng):
        p = TensorPoly("chebyshev", np.array([[[0.0]], [[0.0]], [[1.0]]]))
        d = partial_derivative(p, "u")
        np.testing.assert_allclose(d.coeffs[:, 0, 0], [0.0, 4.0])
        for u in rng.uniform(-1, 1, 10):
            h = 1e-6
            fd = (evaluate(p, (u + h, 0.0)) - evaluate(p, (u - h, 0.0))) / (2 * h)
            assert abs(fd[0] - evaluate(d, (u, 0.0))[0]) <= 1e-7

    @pytest.mark.parametrize("basis", BASES)
    @pytest.mark.parametrize("axis", [0, 1])
    def test_finite_differences(self, basis, axis, rng):
        p = fixture_random(basis, 3, 4, seed=7)
        d = partial_derivative(p, axis)
        h = 1e-6
        e = np.eye(2)[axis] * h
        for x in rng.uniform(0.1, 0.9, (10, 2)):
            fd = (evaluate(p, x + e) - evaluate(p, x - e)) / (2 * h)
            np.testing.assert_allclose(evaluate(d, x), fd, atol=1e-6)

    def test_jacobian_identity(self, rng):
        f = TensorPoly("power", [[(-0.5, -0.8), (0, 1)], [(1, 0), (0, 0)]])
        for x in rng.random((5, 2)):
            np.testing.assert_allclose(jacobian(f, x), np.eye(2), atol=1e-15)

    def test_jacobian_border(self, border_system):
        np.testing.assert_allclose(jacobian(border_system, (0.5, 0.8)), np.eye(2), atol=1e-15)

    def test_jacobian_fixture_alpha(self):
        alpha = [[0.1, 0.4], [-0.2, 0.3]]
        f = fixture_nearest_zero((0.4, 0.6), alpha, 20.0)
        np.testing.assert_allclose(jacobian(f, (0.4, 0.6)), alpha, atol=1e-12)

    def test_jacobian_batched_rows_are_components(self, reference, rng):
        x = rng.random((6, 2))
        J = jacobian(reference, x)
        assert J.shape == (6, 2, 2)
        du = evaluate(partial_derivative(reference, "u"), x)
        np.testing.assert_allclose(J[:, :, 0], du)


class TestReparametrize:
    @pytest.mark.parametrize("basis", BASES)
    def test_full_domain_is_identity(self, basis):
        p = fixture_random(basis, 3, 2, seed=1)
        lo, hi = basis.domain
        q = reparametrize_box(p, (lo, hi), (lo, hi))
        np.testing.assert_allclose(q.coeffs, p.coeffs, atol=1e-12)

    @pytest.mark.parametrize("basis", BASES)
    def test_evaluates_both_sides(self, basis, rng):
        p = fixture_random(basis, 2, 2, seed=3)
        c = rng.random(2)
        patch = Patch(tuple(c), 0.05 + 0.2 * rng.random())
        q = reparametrize(p, patch)
        for x in np.asarray(patch.center) + patch.radius * rng.uniform(-1, 1, (20, 2)):
            np.testing.assert_allclose(evaluate(q, to_natural(basis, patch, x)), evaluate(p, x),
                                       atol=1e-10)

    def test_bernstein_linear_by_hand(self):
        p = TensorPoly("bernstein", np.array([[[0.0]], [[1.0]]]))
        q = reparametrize(p, Patch((0.25, 0.5), 0.25))
        np.testing.assert_allclose(q.coeffs[:, 0, 0], [0.0, 0.5], atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(basis=st.sampled_from(BASES), seed=st.integers(0, 10**6),
           a=st.floats(-0.5, 1.0), w=st.floats(0.01, 0.7), b=st.floats(-0.5, 1.0))
    def test_box_property(self, basis, seed, a, w, b):
        p = fixture_random(basis, 3, 3, seed)
        q = reparametrize_box(p, (a, a + w), (b, b + 0.5 * w))
        lo, hi = basis.domain
        s = np.random.default_rng(seed).random((5, 2))
        x = np.stack([a + w * s[:, 0], b + 0.5 * w * s[:, 1]], axis=1)
        t = lo + (hi - lo) * s
        scale = np.max(np.abs(p.coeffs)) * 10
        np.testing.assert_allclose(evaluate(q, t), evaluate(p, x), atol=1e-9 * scale)


class TestLinearCombine:
    @pytest.mark.parametrize("basis", BASES)
    def test_identity(self, basis):
        p = fixture_random(basis, 2, 3, seed=2)
        np.testing.assert_array_equal(linear_combine(p, np.eye(2)).coeffs, p.coeffs)

    @pytest.mark.parametrize("basis", BASES)
    def test_zero_matrix_plus_offset(self, basis, rng):
        p = fixture_random(basis, 2, 2, seed=2)
        q = linear_combine(p, np.zeros((1, 2)), [1.5])
        for x in rng.random((5, 2)):
            assert evaluate(q, x)[0] == pytest.approx(1.5, abs=1e-14)

    def test_swap(self, rng):
        f = TensorPoly("power", [[(0, 0), (0, 1)], [(1, 0), (0, 0)]])
        g = linear_combine(f, [[0, 1], [1, 0]])
        for x in rng.random((10, 2)):
            np.testing.assert_allclose(evaluate(g, x), x[::-1])

    @pytest.mark.parametrize("basis", BASES)
    def test_general_affine(self, basis, rng):
        p = fixture_random(basis, 2, 2, seed=4, dim=3)
        A, b = rng.standard_normal((2, 3)), rng.standard_normal(2)
        q = linear_combine(p, A, b)
        for x in rng.random((5, 2)):
            np.testing.assert_allclose(evaluate(q, x), A @ evaluate(p, x) + b, atol=1e-12)


class TestPatch:
    def test_children_tile_parent(self):
        kids = Patch((0.5, 0.5), 0.5).children()
        assert [k.center for k in kids] == [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)]
        assert all(k.radius == 0.25 for k in kids)

    def test_invalid_radius(self):
        with pytest.raises(ValueError):
            Patch((0.5, 0.5), 0.0)

    def test_contains_closed(self):
        assert Patch((0.5, 0.5), 0.25).contains((0.75, 0.25))
        assert not Patch((0.5, 0.5), 0.25).contains((0.76, 0.5))

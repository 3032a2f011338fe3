import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc.errors import EmptySpectrum, NonFinite, SingularMatrix
from slocc.numerics import TolerancePolicy, eig2, inv2, is_degenerate, numerical_rank, svd
from slocc.testkit import RandomSource

finite_complex = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


class TestSvd:
    def test_already_diagonal(self):
        res = svd([[1, 0], [0, 0]])
        assert np.allclose(res.sigma, [1.0, 0.0])

    def test_ghz_coefficient_matrix(self):
        res = svd([[1, 0, 0, 0], [0, 0, 0, 1]])
        assert np.allclose(res.sigma, [1.0, 1.0])
        # right singular vectors span {e1 (x) e1, e2 (x) e2}
        span = res.W[:, :2] @ res.W[:, :2].conj().T
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 1.0
        assert np.allclose(span, expected, atol=1e-12)

    def test_random_reconstruction_and_unitarity(self):
        for trial in range(50):
            g = RandomSource(90 + trial).generator()
            m, n = g.integers(1, 5), g.integers(1, 6)
            a = g.standard_normal((m, n)) + 1j * g.standard_normal((m, n))
            res = svd(a)
            assert res.residual <= 1e-10
            assert np.linalg.norm(res.V.conj().T @ res.V - np.eye(m)) <= 1e-10
            assert np.linalg.norm(res.W.conj().T @ res.W - np.eye(n)) <= 1e-10
            assert np.all(np.diff(res.sigma) <= 1e-14)
            recon = (res.V[:, : min(m, n)] * res.sigma) @ res.W[:, : min(m, n)].conj().T
            assert np.linalg.norm(a - recon) <= 1e-10 * max(1.0, np.linalg.norm(a))

    def test_phase_convention(self):
        g = RandomSource(4).generator()
        a = g.standard_normal((3, 5)) + 1j * g.standard_normal((3, 5))
        res = svd(a)
        for k in range(3):
            col = res.V[:, k]
            lead = col[np.flatnonzero(np.abs(col) > 1e-8)[0]]
            assert abs(lead.imag) <= 1e-12 and lead.real > 0

    def test_deterministic(self):
        g = RandomSource(5).generator()
        a = g.standard_normal((2, 4)) + 1j * g.standard_normal((2, 4))
        r1 = svd(a)
        r2 = svd(a)
        assert np.array_equal(r1.V, r2.V)
        assert np.array_equal(r1.W, r2.W)
        assert np.array_equal(r1.sigma, r2.sigma)

    def test_rejects_non_finite(self):
        with pytest.raises(NonFinite):
            svd([[np.nan, 0], [0, 1]])


class TestNumericalRank:
    def test_two_equal(self):
        assert numerical_rank([1.0, 1.0]) == 2

    def test_below_relative_threshold(self):
        assert numerical_rank([1.0, 1e-15]) == 1

    def test_w_state_pivot_matrix(self):
        res = svd([[0, 1, 1, 0], [1, 0, 0, 0]])
        assert numerical_rank(res.sigma) == 2

    def test_empty_raises(self):
        with pytest.raises(EmptySpectrum):
            numerical_rank([])
        with pytest.raises(EmptySpectrum):
            numerical_rank([0.0, 0.0])

    @given(scale=st.floats(min_value=1e-6, max_value=1e6))
    @settings(max_examples=50, derandomize=True)
    def test_scale_invariant(self, scale):
        sigma = np.array([3.0, 1.2, 1e-13])
        assert numerical_rank(sigma * scale) == numerical_rank(sigma) == 2


class TestEig2:
    def test_nilpotent(self):
        assert eig2([[0, 1], [0, 0]]) == (0, 0)

    def test_diagonal(self):
        assert eig2([[1, 0], [0, 2]]) == (2, 1)

    def test_rotation_generator(self):
        lam1, lam2 = eig2([[0, 1], [-1, 0]])
        assert lam1 == pytest.approx(1j)
        assert lam2 == pytest.approx(-1j)

    @given(entries=st.tuples(finite_complex, finite_complex, finite_complex, finite_complex))
    @settings(max_examples=200, derandomize=True)
    def test_characteristic_polynomial(self, entries):
        m = np.array(entries).reshape(2, 2)
        tr = m[0, 0] + m[1, 1]
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        for lam in eig2(m):
            assert abs(lam * lam - tr * lam + det) <= 1e-10 * (1 + abs(tr) + abs(det))

    def test_ordering(self):
        g = RandomSource(6).generator()
        for _ in range(100):
            m = g.standard_normal((2, 2)) + 1j * g.standard_normal((2, 2))
            lam1, lam2 = eig2(m)
            assert abs(lam1) >= abs(lam2) - 1e-12


class TestDegeneracy:
    def test_both_zero(self):
        assert is_degenerate((0, 0), scale=1.0)

    def test_separated(self):
        assert not is_degenerate((2, 1), scale=1.0)

    def test_tiny_gap(self):
        assert is_degenerate((1, 1 + 1e-12), scale=1.0)


class TestInv2:
    def test_identity(self):
        assert np.allclose(inv2(np.eye(2)), np.eye(2))

    def test_diagonal(self):
        assert np.allclose(inv2([[2, 0], [0, 4]]), [[0.5, 0], [0, 0.25]])

    def test_singular_raises(self):
        with pytest.raises(SingularMatrix):
            inv2([[0, 1], [0, 0]])

    def test_random_inverse(self):
        g = RandomSource(7).generator()
        for _ in range(50):
            m = g.standard_normal((2, 2)) + 1j * g.standard_normal((2, 2))
            assert np.allclose(inv2(m) @ m, np.eye(2), atol=1e-9)


class TestTolerancePolicy:
    @pytest.mark.parametrize("field", ["rank_rel_tol", "deg_tol", "residual_tol"])
    @pytest.mark.parametrize("value", [0.0, -1e-9, 1.0, 2.0])
    def test_validation(self, field, value):
        with pytest.raises(ValueError):
            TolerancePolicy(**{field: value})

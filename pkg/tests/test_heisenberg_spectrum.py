"""Heisenberg lattices, flat Dirac spectra and eta functions"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from heisenberg_spectrum import (
    HeisenbergMetric,
    LatticeType,
    asymmetric_eigenvalue,
    compare_sector_spectra,
    dirac_sq_spectrum,
    eta_closed,
    eta_closed_series,
    eta_cusp_asymptotic,
    eta_series,
    expected_flat_dirac_spectrum,
    flat_dirac_matrix,
    gamma_rep_data,
    hermite_oracle,
    sector_multiplicity,
)


@st.composite
def lattices(draw, n):
    d = [draw(st.integers(min_value=1, max_value=3))]
    for _ in range(n - 1):
        d.append(d[-1] * draw(st.integers(min_value=1, max_value=2)))
    return d


class TestLattice:

    def test_divisibility(self):
        assert LatticeType([1, 2, 4]).order == 8
        with pytest.raises(ValueError, match="divisibility"):
            LatticeType([2, 3])
        with pytest.raises(ValueError):
            LatticeType([0])

    def test_gamma_rep_data(self):
        assert gamma_rep_data([1, 1], 0) == (0, (1, 1), 1)
        assert gamma_rep_data([1, 2], Fraction(1, 2)) == (Fraction(1, 2), (2, 1), 2)
        assert gamma_rep_data([3], Fraction(1, 3)) == (Fraction(1, 3), (1,), 1)

    def test_sector_multiplicity_must_be_integral(self):
        assert sector_multiplicity([3], 1, 2) == 6
        with pytest.raises(ValueError, match="integer"):
            sector_multiplicity([1], 1, Fraction(1, 2))


class TestSpectrum:

    def test_low_eigenvalues(self):
        df = dirac_sq_spectrum(1, [1], 0, cutoff=60.0)
        w1 = df[df['w'] == 1]
        ground = w1[[p == (0,) and e == (-1,) for p, e in zip(w1['p'], w1['eps'])]]
        assert ground['value'].iloc[0] == pytest.approx(4 * math.pi ** 2)
        assert ground['multiplicity'].iloc[0] == 1
        excited = w1[[p == (0,) and e == (1,) for p, e in zip(w1['p'], w1['eps'])]]
        assert excited['value'].iloc[0] == pytest.approx(4 * math.pi ** 2 + 4 * math.pi)

    def test_multiplicity_grows_with_w(self):
        df = dirac_sq_spectrum(1, [3], 0, cutoff=200.0)
        assert set(df[df['w'] == 2]['multiplicity']) == {6}
        assert set(df[df['w'] == -2]['multiplicity']) == {6}

    def test_twisted_frequencies(self):
        df = dirac_sq_spectrum(1, [1], Fraction(1, 3), cutoff=100.0)
        assert all((Fraction(w) - Fraction(1, 3)).denominator == 1 for w in df['w'])
        assert 0 not in set(df['w'])

    def test_sorted_and_bounded(self):
        df = dirac_sq_spectrum(2, [1, 1], 0, HeisenbergMetric([1.0, 0.5], 2.0), cutoff=400.0)
        assert (df['value'].diff().dropna() >= 0).all()
        assert (df['value'] <= 400.0).all()


class TestEtaClosed:

    def test_examples(self):
        assert eta_closed(1, [1], 0, 1, 0) == Fraction(1, 6)
        assert eta_closed(1, [3], 0, 1, 0) == Fraction(1, 2)
        assert eta_closed(2, [1, 1], 0, 1, 0) == 0

    def test_negative_s(self):
        # n odd: -|Gamma| dimV (zeta(s-1) + zeta(s-1)); s=-1 gives -2 zeta(-2) = 0
        assert eta_closed(1, [1], 0, 1, -1) == 0
        assert eta_closed(1, [1], 0, 1, -2) == -2 * Fraction(1, 120)

    @pytest.mark.parametrize("s", [1, Fraction(1, 2), -0.5])
    def test_rejects_bad_s(self, s):
        with pytest.raises(ValueError):
            eta_closed(1, [1], 0, 1, s)

    @seed(7)
    @settings(max_examples=50, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=2, max_value=5),
           c=st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1, 3)]))
    def test_sign_bridge(self, data, n, c):
        d = data.draw(lattices(n - 1))
        dimV = gamma_rep_data(d, c).dimV
        assert eta_cusp_asymptotic(n, d, c, dimV) == -eta_closed(n - 1, d, c, dimV, 0)

    def test_cusp_examples(self):
        assert eta_cusp_asymptotic(2, [1], 0, 1) == Fraction(-1, 6)
        assert eta_cusp_asymptotic(2, [1], Fraction(1, 2), 1) == Fraction(1, 12)
        assert eta_cusp_asymptotic(3, [1, 1], 0, 1) == 0

    def test_cusp_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="n-1"):
            eta_cusp_asymptotic(3, [1], 0, 1)

    @pytest.mark.parametrize("dimV", [0, -2, 1.0, Fraction(1, 2), True, "2"])
    def test_rejects_bad_dimV(self, dimV):
        with pytest.raises(ValueError, match="dimV"):
            eta_closed(1, [1], 0, dimV)
        with pytest.raises(ValueError, match="dimV"):
            eta_cusp_asymptotic(2, [1], 0, dimV)
        with pytest.raises(ValueError, match="dimV"):
            sector_multiplicity([1], dimV, 1)

    def test_accepts_numpy_dimV(self):
        assert eta_closed(1, [1], 0, np.int64(2)) == Fraction(1, 3)


class TestEtaSeries:

    def test_circle_bundle_value(self):
        estimate = eta_series(1, [1], 0, 1, s=4, W_max=2000)
        expected = -2 * float(mpmath.zeta(3)) / (2 * math.pi) ** 4
        assert estimate.value == pytest.approx(expected, abs=1e-9)
        assert estimate.value == pytest.approx(-1.5427e-3, rel=1e-3)

    def test_even_n_cancels(self):
        assert eta_series(2, [1, 1], 0, 1, s=5, W_max=50).value == 0

    def test_half_twist(self):
        estimate = eta_series(1, [1], Fraction(1, 2), 1, s=4, W_max=2000)
        expected = -(2 * math.pi) ** -4 * 2 * float(mpmath.zeta(3, 0.5))
        assert estimate.value == pytest.approx(expected, abs=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("c", [Fraction(0), Fraction(1, 3), Fraction(1, 2)])
    def test_matches_closed_form(self, n, c):
        d = [1] * n
        dimV = gamma_rep_data(d, c).dimV
        estimate = eta_series(n, d, c, dimV, s=n + 3, W_max=2000)
        closed = eta_closed_series(n, d, c, dimV, s=n + 3)
        assert abs(estimate.value - closed) <= 1e-6
        assert abs(estimate.value - closed) <= estimate.tail_bound + 1e-12

    def test_metric_scaling(self):
        unit = eta_series(1, [2], Fraction(1, 2), 2, s=5, W_max=500).value
        scaled = eta_series(1, [2], Fraction(1, 2), 2, HeisenbergMetric([0.3], 2.0), s=5, W_max=500).value
        assert scaled == pytest.approx(unit * 2.0 ** -5, rel=1e-12)

    def test_rejects_divergent(self):
        with pytest.raises(ValueError, match="s > n"):
            eta_series(2, [1, 1], 0, 1, s=3.0)


class TestSectorSpectrum:

    def test_asymmetric_eigenvalue(self):
        assert asymmetric_eigenvalue(1, 1) == pytest.approx(-2 * math.pi)
        assert asymmetric_eigenvalue(1, -1) == pytest.approx(-2 * math.pi)
        assert asymmetric_eigenvalue(2, -1) == pytest.approx(-2 * math.pi)
        assert asymmetric_eigenvalue(2, 1) == pytest.approx(2 * math.pi)

    def test_expected_pairs(self):
        df = expected_flat_dirac_spectrum(1, 1, cutoff=12.0)
        root = math.sqrt(4 * math.pi ** 2 + 4 * math.pi)
        assert np.isclose(df['eigenvalue'], root).any()
        assert np.isclose(df['eigenvalue'], -root).any()
        assert not np.isclose(df['eigenvalue'], 2 * math.pi).any()
        assert np.isclose(df['eigenvalue'], -2 * math.pi).any()

    def test_flat_dirac_is_hermitian(self):
        D = flat_dirac_matrix(2, 1, HeisenbergMetric.unit(2), 6)
        assert np.allclose(D, D.conj().T)

    @pytest.mark.parametrize("w", [1, -1])
    def test_hermite_oracle(self, w):
        cutoff = math.sqrt(4 * math.pi ** 2 + 40 * math.pi)
        oracle = hermite_oracle(1, w, levels=60)
        expected = expected_flat_dirac_spectrum(1, w, cutoff=cutoff)
        comparison = compare_sector_spectra(oracle, expected, cutoff)
        assert comparison['matched'].all()
        assert np.isclose(oracle['eigenvalue'], -2 * math.pi).any()
        assert not np.isclose(oracle['eigenvalue'], 2 * math.pi).any()

    def test_oracle_rejects_zero_sector(self):
        with pytest.raises(ValueError):
            hermite_oracle(1, 0)

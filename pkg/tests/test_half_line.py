"""Constant-coefficient Dirac systems on the half-line"""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from half_line import (
    ConstantDiracSystem,
    SpectralBC,
    check_cindext,
    graded_index_ext,
    index_ext,
    kernel_dims,
    random_constant_system,
)

T2 = np.array([[0, -1], [1, 0]], dtype=complex)


@pytest.fixture
def split_system():
    return ConstantDiracSystem(np.diag([1.0, -1.0]), T2)


@pytest.fixture
def zero_system():
    return ConstantDiracSystem(np.zeros((2, 2)), T2)


class TestSpectralBC:

    def test_adjoint(self):
        assert SpectralBC.below(0.5).adjoint() == SpectralBC.at_most(-0.5)
        assert SpectralBC.at_most(1.0).adjoint().adjoint() == SpectralBC.at_most(1.0)

    def test_admits(self):
        values = np.array([-1.0, 0.0, 1.0])
        assert list(SpectralBC.below(0.0).admits(values)) == [True, False, False]
        assert list(SpectralBC.at_most(0.0).admits(values)) == [True, True, False]


class TestSystem:

    def test_rejects_invalid(self):
        with pytest.raises(ValueError, match="AT = -TA"):
            ConstantDiracSystem(np.eye(2), T2)
        with pytest.raises(ValueError, match="Hermitian"):
            ConstantDiracSystem(np.array([[0, 1], [0, 0]]), T2)
        with pytest.raises(ValueError, match="T\\^2"):
            ConstantDiracSystem(np.zeros((2, 2)), 2 * T2)
        with pytest.raises(ValueError, match="square"):
            ConstantDiracSystem(np.zeros((2, 2)), np.zeros((3, 3)))

    def test_graded(self):
        system = ConstantDiracSystem(np.diag([1.0, -1.0]), T2, grading=[True, False])
        plus, minus = system.graded_eigenvalues()
        assert list(plus) == [1.0]
        assert list(minus) == [-1.0]

    def test_grading_must_be_swapped_by_t(self):
        with pytest.raises(ValueError, match="T\\(H\\+\\) = H-"):
            ConstantDiracSystem(np.zeros((2, 2)), T2, grading=[True, True])


class TestKernels:

    def test_split_system(self, split_system):
        assert kernel_dims(split_system, SpectralBC.below(0.0)) == (0, 0)
        assert kernel_dims(split_system, SpectralBC.at_most(1.0)) == (1, 1)

    def test_constant_solutions_are_extended(self, zero_system):
        assert kernel_dims(zero_system, SpectralBC.at_most(0.0)) == (0, 2)

    def test_index(self, split_system, zero_system):
        assert index_ext(split_system, SpectralBC.below(0.0)) == 0
        assert index_ext(split_system, SpectralBC.at_most(1.0)) == 1
        assert index_ext(zero_system, SpectralBC.at_most(0.0)) == 2

    def test_check_cindext_examples(self, split_system, zero_system):
        report = check_cindext(split_system, 1.0)
        assert (report.index, report.window_count, report.l2_kernel) == (0, 1, 1)
        assert report.holds and report.rhs == 0

        wide = ConstantDiracSystem(np.diag([2.0, -2.0]), T2)
        report = check_cindext(wide, 1.0)
        assert (report.index, report.window_count, report.l2_kernel) == (0, 0, 0)

        assert check_cindext(zero_system, 0.0).holds

    def test_rejects_negative_lambda(self, split_system):
        with pytest.raises(ValueError):
            check_cindext(split_system, -1.0)


class TestRandomSystems:

    @seed(8)
    @settings(max_examples=100, deadline=None)
    @given(half_rank=st.integers(min_value=1, max_value=6), lam=st.integers(min_value=0, max_value=8),
           zero_modes=st.integers(min_value=0, max_value=2), graded=st.booleans(),
           draw_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_index_formula(self, half_rank, lam, zero_modes, graded, draw_seed):
        rng = np.random.default_rng(draw_seed)
        system = random_constant_system(half_rank, rng, graded=graded, zero_modes=zero_modes)
        report = check_cindext(system, lam / 2, graded=graded)
        assert report.holds
        below_zero = SpectralBC.below(0.0)
        assert index_ext(system, below_zero) == 0
        assert kernel_dims(system, below_zero).ext_kernel == 0
        assert kernel_dims(system, below_zero.adjoint()).l2_kernel == 0
        if graded:
            assert graded_index_ext(system, below_zero) == 0

    def test_unconjugated(self, rng):
        system = random_constant_system(3, rng, conjugate=False, zero_modes=1)
        diagonal = np.diag(system.A).real
        assert np.allclose(system.A, np.diag(diagonal))
        assert np.allclose(diagonal[3:], -diagonal[:3])
        assert diagonal[0] == 0.0
        assert check_cindext(system, 1.5).holds

    def test_rejects_empty(self, rng):
        with pytest.raises(ValueError):
            random_constant_system(0, rng)

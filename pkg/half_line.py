"""
Constant-coefficient Dirac systems on the half-line

A system T (d/dt + A) on [0, inf) with finite-rank A has solutions
sigma(t) = exp(-tA) sigma(0). They are
- L^2 when sigma(0) lies in H_{>0}(A)
- extended (bounded) when sigma(0) lies in H_{>=0}(A)

Spectral boundary conditions sigma(0) in H_{<a}(A) or H_{<=a}(A) cut these
spaces down; all dimensions are eigenvalue counts.
"""

from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag, eigvalsh
from scipy.stats import unitary_group

import config


class SpectralBC:
    """
    Boundary condition sigma(0) in H_{<a}(A) (strict) or H_{<=a}(A) (inclusive)

    The adjoint of (a, strict) is (-a, inclusive) and vice versa.
    """

    def __init__(self, threshold, inclusive):
        self.threshold = float(threshold)
        self.inclusive = bool(inclusive)

    @classmethod
    def below(cls, a):
        """H_{<a}"""
        return cls(a, inclusive=False)

    @classmethod
    def at_most(cls, a):
        """H_{<=a}"""
        return cls(a, inclusive=True)

    def adjoint(self):
        return SpectralBC(-self.threshold, not self.inclusive)

    def admits(self, eigenvalues, tol=config.SPECTRAL_WINDOW_TOL):
        """Mask of eigenvalues whose eigenvectors lie in the boundary subspace."""
        if self.inclusive:
            return eigenvalues <= self.threshold + tol
        return eigenvalues < self.threshold - tol

    def __eq__(self, other):
        if not isinstance(other, SpectralBC):
            return NotImplemented
        return self.threshold == other.threshold and self.inclusive == other.inclusive

    def __hash__(self):
        return hash((self.threshold, self.inclusive))

    def __repr__(self):
        op = "<=" if self.inclusive else "<"
        return f"H_{{{op}{self.threshold:g}}}"


class ConstantDiracSystem:
    """
    Finite-rank model (A, T) of a Dirac system near an end

    Requires A Hermitian, T* = -T, T^2 = -1 and AT = -TA. An optional grading
    (mask of H^+ basis vectors) must be swapped by T and preserved by A.
    """

    def __init__(self, A, T, grading=None, tol=config.SYSTEM_TOL):
        """
        Args:
            A: Hermitian k x k matrix
            T: k x k matrix
            grading: Optional boolean mask of the H^+ basis vectors
            tol: Tolerance for the axioms
        """
        A = np.asarray(A, dtype=complex)
        T = np.asarray(T, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != T.shape:
            raise ValueError(f"A and T must be square of equal size, got {A.shape} and {T.shape}")
        k = A.shape[0]
        identity = np.eye(k)
        checks = {
            "A Hermitian": np.abs(A - A.conj().T),
            "T* = -T": np.abs(T.conj().T + T),
            "T^2 = -1": np.abs(T @ T + identity),
            "AT = -TA": np.abs(A @ T + T @ A),
        }
        for rule, residual in checks.items():
            worst = float(np.max(residual, initial=0.0))
            if worst > tol:
                raise ValueError(f"constant Dirac system violates {rule} (residual {worst:.2e})")

        if grading is not None:
            grading = np.asarray(grading, dtype=bool)
            if grading.shape != (k,):
                raise ValueError(f"grading mask must have length {k}")
            plus, minus = grading, ~grading
            if np.max(np.abs(T[np.ix_(plus, plus)]), initial=0.0) > tol or \
                    np.max(np.abs(T[np.ix_(minus, minus)]), initial=0.0) > tol:
                raise ValueError("graded system violates T(H+) = H-")
            if np.max(np.abs(A[np.ix_(plus, minus)]), initial=0.0) > tol:
                raise ValueError("graded system violates A(H+/-) = H+/-")

        self.A = A
        self.T = T
        self.grading = grading
        self.eigenvalues = eigvalsh(A)

    @property
    def k(self):
        return self.A.shape[0]

    def graded_eigenvalues(self):
        """Spectra of A^+ = A|H^+ and A^- = A|H^- (A^- = -T A^+ T^{-1})."""
        if self.grading is None:
            raise ValueError("system has no grading")
        plus, minus = self.grading, ~self.grading
        return eigvalsh(self.A[np.ix_(plus, plus)]), eigvalsh(self.A[np.ix_(minus, minus)])

    def __repr__(self):
        graded = ", graded" if self.grading is not None else ""
        return f"ConstantDiracSystem(k={self.k}{graded})"


class KernelDims(NamedTuple):
    l2_kernel: int
    ext_kernel: int


class CindextReport(NamedTuple):
    """Both sides of ind D_{<0,ext} = dim H_{[-lambda,0)} - dim ker D_{<=lambda,max}"""
    lam: float
    index: int
    window_count: int
    l2_kernel: int
    holds: bool

    @property
    def rhs(self):
        return self.window_count - self.l2_kernel


def _kernel_counts(eigenvalues, bc, tol):
    admitted = bc.admits(eigenvalues, tol)
    l2 = int(np.sum(admitted & (eigenvalues > tol)))
    ext = int(np.sum(admitted & (eigenvalues >= -tol)))
    return KernelDims(l2, ext)


def kernel_dims(sys, bc, tol=config.SPECTRAL_WINDOW_TOL):
    """
    Kernel dimensions under a spectral boundary condition.

    Returns:
        KernelDims(l2_kernel = dim H_{>0} n B, ext_kernel = dim H_{>=0} n B)
    """
    return _kernel_counts(sys.eigenvalues, bc, tol)


def index_ext(sys, bc, tol=config.SPECTRAL_WINDOW_TOL):
    """Extended kernel minus the L^2 kernel under the adjoint condition (the cokernel)."""
    return kernel_dims(sys, bc, tol).ext_kernel - kernel_dims(sys, bc.adjoint(), tol).l2_kernel


def graded_index_ext(sys, bc, tol=config.SPECTRAL_WINDOW_TOL):
    """Index of D^+ = T(d/dt + A^+): extended kernel on H^+, cokernel from D^- on H^- with the adjoint condition."""
    plus, minus = sys.graded_eigenvalues()
    return _kernel_counts(plus, bc, tol).ext_kernel - _kernel_counts(minus, bc.adjoint(), tol).l2_kernel


def check_cindext(sys, lam, graded=False, tol=config.SPECTRAL_WINDOW_TOL):
    """
    Evaluate both sides of the index formula for the extended operator.

        index_ext(H_{<0}) = #eigenvalues in [-lam, 0) - l2_kernel(H_{<=lam})

    With graded=True the left side is the index of D^+ and the right side uses
    the spectrum of A^+ and the L^2 kernel of D^- = T(d/dt + A^-).
    """
    if lam < 0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    if graded:
        plus, minus = sys.graded_eigenvalues()
        index = graded_index_ext(sys, SpectralBC.below(0.0), tol)
        window_source = plus
        l2 = _kernel_counts(minus, SpectralBC.at_most(lam), tol).l2_kernel
    else:
        index = index_ext(sys, SpectralBC.below(0.0), tol)
        window_source = sys.eigenvalues
        l2 = kernel_dims(sys, SpectralBC.at_most(lam), tol).l2_kernel
    window = int(np.sum((window_source >= -lam - tol) & (window_source < -tol)))
    return CindextReport(lam, index, window, l2, index == window - l2)


def random_constant_system(half_rank, rng, graded=False, conjugate=True, zero_modes=None):
    """
    Random valid system A = diag(M, -M), T = [[0, -1], [1, 0]].

    M has eigenvalues on a half-integer grid (optionally with zero modes) and
    is diagonal unless conjugate=True. Then M is rotated into a random basis and
    both A and T are conjugated by a Haar unitary, block-diagonal when graded so
    that H^+ stays the first half.
    """
    if half_rank < 1:
        raise ValueError(f"half_rank must be >= 1, got {half_rank}")
    spectrum = rng.integers(-6, 7, size=half_rank) / 2.0
    if zero_modes:
        spectrum[:min(zero_modes, half_rank)] = 0.0
    M = np.diag(spectrum).astype(complex)
    if conjugate and half_rank > 1:
        basis = unitary_group.rvs(half_rank, random_state=rng)
        M = basis @ M @ basis.conj().T
        M = (M + M.conj().T) / 2

    identity = np.eye(half_rank)
    zeros = np.zeros((half_rank, half_rank))
    A = block_diag(M, -M)
    T = np.block([[zeros, -identity], [identity, zeros]])

    if conjugate:
        if graded:
            U = block_diag(unitary_group.rvs(half_rank, random_state=rng) if half_rank > 1 else np.eye(1),
                           unitary_group.rvs(half_rank, random_state=rng) if half_rank > 1 else np.eye(1))
        else:
            U = unitary_group.rvs(2 * half_rank, random_state=rng)
        A = U @ A @ U.conj().T
        A = (A + A.conj().T) / 2
        T = U @ T @ U.conj().T

    grading = np.arange(2 * half_rank) < half_rank if graded else None
    return ConstantDiracSystem(A, T, grading=grading)

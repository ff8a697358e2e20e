"""
Low-energy model operator of a complex hyperbolic cusp

Builds D^le = D_Z + D_X on Sigma^+ (x) V from an explicit representation
pi of u(n), decomposes ker D_X into the graded pieces H^k and reads off the
D_Z values there. This is the brute-force counterpart of kostant_data.

Clifford pairs: pair 1 carries (T, Z), pairs 2..n carry (X_j, Y_j).
  D_X = sum_{j>=2} T X_j (x) pi(E_1j - E_j1) + T Y_j (x) pi(-i(E_1j + E_j1))
  D_Z = 1/2 sum_{j>=2} T Z X_j Y_j (x) 1 + T Z (x) pi(-i E_11)
Cusp formulas consume A^le = -D^le.

Catalog representations have small-denominator rational entries; for those the
kernel and the D_Z values are computed exactly over the Gaussian rationals.
"""

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import pandas as pd
from scipy.linalg import eigvalsh, svd
from sympy import I, Rational
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

import config
from clifford_module import GeneratorKind, SpinorModule, clifford_generator
from unitary_reps import LieRep, highest_weights, kostant_data


class HarmonicBlock(NamedTuple):
    """Harmonic cocycles H^k: dimension and D_Z eigenvalues (with repetition)"""
    k: int
    dimension: int
    z_values: tuple


class LowEnergyOperator:
    """
    Explicit D_X, D_Z and D^le = D_Z + D_X on Sigma^+ (x) V

    Basis index = (position in Sigma^+) * dim V + (index in V).
    """

    def __init__(self, n, rep, dx, dz, grading, exact_entries):
        self.n = n
        self.rep = rep
        self.dx = dx
        self.dz = dz
        self.dle = dz + dx
        self.a_le = -self.dle
        self.grading = grading
        # (dx, dz) as {(i, j): (re, im)} Fractions, or None on the float path
        self.exact_entries = exact_entries

    @property
    def exact(self):
        return self.exact_entries is not None

    @property
    def dim(self):
        return self.dle.shape[0]

    def __repr__(self):
        path = "exact" if self.exact else "float"
        return f"LowEnergyOperator(n={self.n}, rep={self.rep.label}, dim={self.dim}, {path})"


class HarmonicDecomposition:
    """ker D_X split by the Sigma^+_k (x) V grading, with D_Z eigenvalues on each block"""

    def __init__(self, blocks, exact):
        self.blocks = blocks
        self.exact = exact

    @property
    def b(self):
        return tuple(block.dimension for block in self.blocks)

    @property
    def kernel_dim(self):
        return sum(self.b)

    @property
    def z_values(self):
        return [z for block in self.blocks for z in block.z_values]

    def low_energy_eta(self):
        """eta(A^le) = eta(-D_Z restricted to ker D_X)"""
        return -sum(_sign(z) for z in self.z_values)

    def low_energy_kernel(self):
        return sum(1 for z in self.z_values if z == 0)

    def to_frame(self):
        rows = [{'k': b.k, 'b_k': b.dimension, 'z_values': list(b.z_values)} for b in self.blocks]
        return pd.DataFrame(rows, columns=['k', 'b_k', 'z_values'])

    def __repr__(self):
        return f"HarmonicDecomposition(b={self.b}, exact={self.exact})"


def _sign(value):
    return (value > 0) - (value < 0)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _elementary(n, j, k):
    E = np.zeros((n, n), dtype=complex)
    E[j - 1, k - 1] = 1
    return E


def spinor_grading(n):
    """Degree k of each Sigma^+ state: number of occupied modes among 2..n."""
    module = SpinorModule(n)
    return np.array([bin(s >> 1).count("1") for s in module.plus_indices])


def build_lowenergy(n, rep):
    """
    Assemble the low-energy operator for the representation pi.

    Args:
        n: Complex dimension, n >= 2
        rep: Representation of u(n)

    Returns:
        LowEnergyOperator; {D_Z, D_X} = 0 is checked exactly when the entries are
        exact rationals, otherwise to HERMITIAN_TOL
    """
    if n < 2:
        raise ValueError(f"low-energy operator needs n >= 2, got {n}")
    if rep.n != n:
        raise ValueError(f"representation is for u({rep.n}) but n={n}")

    spinors = SpinorModule(n)
    gamma_t = clifford_generator(n, 1, GeneratorKind.X)
    gamma_z = clifford_generator(n, 1, GeneratorKind.Y)
    identity = np.eye(rep.dim)

    def plus(op):
        return spinors.restrict_plus(op)

    dx = np.zeros((2 ** (n - 1) * rep.dim,) * 2, dtype=complex)
    dz = np.kron(plus(gamma_t @ gamma_z), rep.act(-1j * _elementary(n, 1, 1)))
    for j in range(2, n + 1):
        gamma_x = clifford_generator(n, j, GeneratorKind.X)
        gamma_y = clifford_generator(n, j, GeneratorKind.Y)
        dx += np.kron(plus(gamma_t @ gamma_x), rep.act(_elementary(n, 1, j) - _elementary(n, j, 1)))
        dx += np.kron(plus(gamma_t @ gamma_y), rep.act(-1j * (_elementary(n, 1, j) + _elementary(n, j, 1))))
        dz += 0.5 * np.kron(plus(gamma_t @ gamma_z @ gamma_x @ gamma_y), identity)

    grading = np.repeat(spinor_grading(n), rep.dim)

    exact_dx = _snap_entries(dx)
    exact_dz = _snap_entries(dz)
    exact_entries = (exact_dx, exact_dz) if exact_dx is not None and exact_dz is not None else None

    op = LowEnergyOperator(n, rep, dx, dz, grading, exact_entries)
    _check_anticommutator(op)
    return op


def _snap_entries(M):
    """Nonzero entries as exact Gaussian rationals, or None if some entry is not a small rational."""
    entries = {}
    for i, j in zip(*np.nonzero(np.abs(M) > 1e-14)):
        parts = []
        for part in (M[i, j].real, M[i, j].imag):
            snapped = Fraction(part).limit_denominator(config.WEIGHT_DENOMINATOR_LIMIT)
            if abs(float(snapped) - part) > 1e-12 * max(1.0, abs(part)):
                return None
            parts.append(snapped)
        entries[(int(i), int(j))] = tuple(parts)
    return entries


@lru_cache(maxsize=4096)
def _gaussian(re, im):
    return QQ_I.from_sympy(Rational(re.numerator, re.denominator) + I * Rational(im.numerator, im.denominator))


def _domain_matrix(entries, shape, rows=None, cols=None):
    """Sparse DomainMatrix over QQ_I, optionally restricted to row/column index lists."""
    row_pos = {r: a for a, r in enumerate(rows)} if rows is not None else None
    col_pos = {c: b for b, c in enumerate(cols)} if cols is not None else None
    data = {}
    for (i, j), (re, im) in entries.items():
        a = row_pos.get(i) if row_pos is not None else i
        b = col_pos.get(j) if col_pos is not None else j
        if a is None or b is None:
            continue
        data.setdefault(a, {})[b] = _gaussian(re, im)
    return DomainMatrix(data, shape, QQ_I)


def _check_anticommutator(op):
    if op.exact:
        shape = op.dx.shape
        dx = _domain_matrix(op.exact_entries[0], shape)
        dz = _domain_matrix(op.exact_entries[1], shape)
        anticommutator = dz * dx + dx * dz
        if not anticommutator.is_zero_matrix:
            raise RuntimeError(f"{op!r}: {{D_Z, D_X}} != 0 exactly (construction bug)")
        return
    residual = np.max(np.abs(op.dz @ op.dx + op.dx @ op.dz), initial=0.0)
    if residual > config.HERMITIAN_TOL:
        raise RuntimeError(f"{op!r}: {{D_Z, D_X}} residual {residual:.2e} exceeds tolerance")


# ---------------------------------------------------------------------------
# Harmonic decomposition
# ---------------------------------------------------------------------------

def kernel_dimension(M, tol=config.KERNEL_TOL):
    """Number of singular values below tol * ||M||."""
    if M.size == 0:
        return M.shape[1] if M.ndim == 2 else 0
    singular = svd(M, compute_uv=False)
    norm = singular.max(initial=0.0)
    if norm == 0:
        return M.shape[1]
    return M.shape[1] - int(np.sum(singular > tol * norm))


def _exact_block(op, cols):
    shape = op.dx.shape
    dx_block = _domain_matrix(op.exact_entries[0], (shape[0], len(cols)), cols=cols).to_dense()
    kernel = dx_block.nullspace()  # rows span the kernel
    r = kernel.shape[0]
    if r == 0:
        return HarmonicBlock(0, 0, ())

    basis, pivots = kernel.rref()
    dz_block = _domain_matrix(op.exact_entries[1], (len(cols), len(cols)), rows=cols, cols=cols).to_dense()
    image = basis * dz_block.transpose()
    restricted = image.extract(list(range(r)), list(pivots))
    if restricted * basis != image:
        raise RuntimeError(f"{op!r}: ker D_X in this degree is not D_Z-invariant")

    # eigenvalues of the restricted D_Z, located numerically and confirmed exactly
    numeric = np.array([[complex(QQ_I.to_sympy(e)) for e in row] for row in restricted.to_list()])
    candidates = sorted({Fraction(float(v.real)).limit_denominator(config.WEIGHT_DENOMINATOR_LIMIT)
                         for v in np.linalg.eigvals(numeric)})
    identity = DomainMatrix.eye(r, QQ_I).to_dense()
    z_values = []
    for mu in candidates:
        shifted = restricted - identity * _gaussian(mu, Fraction(0))
        z_values.extend([mu] * (r - shifted.rank()))
    if len(z_values) != r:
        raise RuntimeError(f"{op!r}: D_Z on ker D_X has non-rational or defective spectrum")
    return HarmonicBlock(0, r, tuple(z_values))


def _float_block(op, cols, norm, tol):
    dx_block = op.dx[:, cols]
    if norm == 0:
        kernel = np.eye(len(cols), dtype=complex)
    else:
        _, singular, vh = svd(dx_block)
        rank = int(np.sum(singular > tol * norm))
        kernel = vh[rank:].conj().T
    r = kernel.shape[1]
    if r == 0:
        return HarmonicBlock(0, 0, ())
    dz_block = op.dz[np.ix_(cols, cols)]
    restricted = kernel.conj().T @ dz_block @ kernel
    if np.max(np.abs(dz_block @ kernel - kernel @ restricted)) > config.EIGEN_MATCH_TOL:
        raise RuntimeError(f"{op!r}: ker D_X in this degree is not D_Z-invariant")
    return HarmonicBlock(0, r, tuple(float(v) for v in eigvalsh(restricted)))


def harmonic_decompose(op, tol=config.KERNEL_TOL):
    """
    Compute ker D_X per degree k and the D_Z eigenvalues on each H^k.

    Exact over QQ_I when the operator entries are exact, singular values below
    tol * ||D_X|| otherwise. The total kernel dimension is cross-checked against
    a float SVD of the full D_X.
    """
    norm = float(svd(op.dx, compute_uv=False).max(initial=0.0))
    blocks = []
    for k in range(op.n):
        cols = [int(i) for i in np.flatnonzero(op.grading == k)]
        if op.exact:
            block = _exact_block(op, cols)
        else:
            block = _float_block(op, cols, norm, tol)
        blocks.append(block._replace(k=k))

    decomposition = HarmonicDecomposition(blocks, op.exact)
    total = kernel_dimension(op.dx, tol)
    if total != decomposition.kernel_dim:
        raise RuntimeError(
            f"{op!r}: graded kernels add up to {decomposition.kernel_dim} "
            f"but ker D_X has dimension {total} (kernel vector straddles degrees)"
        )
    return decomposition


def eta_finite(M, tol=config.KERNEL_TOL):
    """
    Finite-dimensional eta invariant: #positive - #negative eigenvalues.

    Eigenvalues with |mu| <= tol * ||M|| count as zero.
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0
    values = eigvalsh(M)
    norm = np.max(np.abs(values), initial=0.0)
    if norm == 0:
        return 0
    threshold = tol * norm
    return int(np.sum(values > threshold) - np.sum(values < -threshold))


def eta_of_values(values):
    """Exact eta of a list of (rational) eigenvalues."""
    return sum(_sign(v) for v in values)


# ---------------------------------------------------------------------------
# Oracle comparison against the closed form
# ---------------------------------------------------------------------------

def kostant_prediction(n, rep):
    """Closed-form harmonic data of pi, summed over its irreducible components."""
    z_by_degree = {k: [] for k in range(n)}
    for weight in highest_weights(rep):
        for datum in kostant_data(weight, n):
            z_by_degree[datum.k].extend([datum.z_value] * datum.b_k)
    blocks = [HarmonicBlock(k, len(z), tuple(sorted(z))) for k, z in z_by_degree.items()]
    return HarmonicDecomposition(blocks, exact=True)


def compare_with_kostant(op, tol=config.EIGEN_MATCH_TOL):
    """
    Per-degree comparison of the brute-force decomposition with Kostant's formula.

    Returns:
        DataFrame with columns k, b_brute, b_closed, z_brute, z_closed, matched
    """
    brute = harmonic_decompose(op)
    closed = kostant_prediction(op.n, op.rep)
    rows = []
    for found, predicted in zip(brute.blocks, closed.blocks):
        z_found = sorted(found.z_values)
        z_predicted = sorted(predicted.z_values)
        if brute.exact:
            z_match = [Fraction(z) for z in z_found] == z_predicted
        else:
            z_match = len(z_found) == len(z_predicted) and all(
                abs(float(a) - float(b)) <= tol for a, b in zip(z_found, z_predicted))
        rows.append({
            'k': found.k,
            'b_brute': found.dimension,
            'b_closed': predicted.dimension,
            'z_brute': z_found,
            'z_closed': z_predicted,
            'matched': found.dimension == predicted.dimension and z_match,
        })
    return pd.DataFrame(rows, columns=['k', 'b_brute', 'b_closed', 'z_brute', 'z_closed', 'matched'])

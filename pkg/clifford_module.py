"""
Complex Clifford module Sigma_{2n} in the fermionic Fock model

Basis states are subsets I of {1..n}, stored as bitmasks (mode j <-> bit j-1).
Sign convention:
- F_j acts as the creation operator a_j^dagger, Fbar_j as -a_j
- X_j = a_j^dagger - a_j, Y_j = i (a_j^dagger + a_j)
- omega_j = i X_j Y_j = 1 - 2 n_j  (+1 on states without mode j)

The opposite global sign of omega_C (the other orientation) is not supported.
"""

from enum import Enum

import numpy as np


class GeneratorKind(Enum):
    """Real (X) or imaginary (Y) unit vector of a Clifford pair"""
    X = "X"
    Y = "Y"


def _occupied(state, j):
    return bool((state >> (j - 1)) & 1)


def _phase_below(state, j):
    """(-1)^(number of occupied modes with index < j)"""
    mask = (1 << (j - 1)) - 1
    return -1 if bin(state & mask).count("1") % 2 else 1


class SpinorModule:
    """
    Fock basis of Sigma_{2n}

    States are ordered by bitmask value, so index == bitmask.
    """

    def __init__(self, n):
        """
        Args:
            n: Number of Clifford pairs (complex dimension), n >= 1
        """
        if n < 1:
            raise ValueError(f"spinor module needs n >= 1, got {n}")
        self.n = n
        self.dim = 2 ** n
        self.states = list(range(self.dim))
        self.plus_mask = np.array([bin(s).count("1") % 2 == 0 for s in self.states])

    @property
    def basis(self):
        """Basis states as sorted tuples of occupied modes"""
        return [self.modes(s) for s in self.states]

    def modes(self, state):
        return tuple(j for j in range(1, self.n + 1) if _occupied(state, j))

    @property
    def plus_indices(self):
        return np.flatnonzero(self.plus_mask)

    @property
    def minus_indices(self):
        return np.flatnonzero(~self.plus_mask)

    def restrict_plus(self, operator):
        """Restrict an even operator to Sigma^+."""
        idx = self.plus_indices
        return operator[np.ix_(idx, idx)]

    def __repr__(self):
        return f"SpinorModule(n={self.n}, dim={self.dim})"


def _check_index(n, j):
    if not 1 <= j <= n:
        raise ValueError(f"Clifford pair index must satisfy 1 <= j <= n={n}, got j={j}")


def creation_operator(n, j):
    """Matrix of a_j^dagger on the 2^n Fock states."""
    _check_index(n, j)
    dim = 2 ** n
    op = np.zeros((dim, dim), dtype=complex)
    for state in range(dim):
        if not _occupied(state, j):
            op[state | (1 << (j - 1)), state] = _phase_below(state, j)
    return op


def clifford_generator(n, j, kind):
    """
    Clifford multiplication by the j-th pair's unit vector.

    Args:
        n: Number of pairs
        j: Pair index, 1 <= j <= n
        kind: GeneratorKind.X (real unit) or GeneratorKind.Y (imaginary unit)

    Returns:
        Skew-Hermitian 2^n x 2^n matrix squaring to -identity
    """
    kind = GeneratorKind(kind.value if isinstance(kind, GeneratorKind) else str(kind).upper())
    create = creation_operator(n, j)
    annihilate = create.conj().T
    if kind is GeneratorKind.X:
        return create - annihilate
    return 1j * (create + annihilate)


def frame_generator(n, index):
    """Clifford multiplication by e_index of R^{2n}: e_{2j-1} = X_j, e_{2j} = Y_j."""
    if not 1 <= index <= 2 * n:
        raise ValueError(f"frame index must satisfy 1 <= index <= 2n={2 * n}, got {index}")
    j = (index + 1) // 2
    kind = GeneratorKind.X if index % 2 == 1 else GeneratorKind.Y
    return clifford_generator(n, j, kind)


def clifford_multiplication(n, vector):
    """gamma(v) = sum_a v_a e_a for a real vector v in R^{2n}."""
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (2 * n,):
        raise ValueError(f"vector must have length 2n={2 * n}, got shape {vector.shape}")
    result = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for a, coefficient in enumerate(vector, start=1):
        if coefficient != 0:
            result += coefficient * frame_generator(n, a)
    return result


def omega(n, j):
    """Involution omega_j = i X_j Y_j: +1 without mode j, -1 with it."""
    _check_index(n, j)
    return np.diag([(-1.0 if _occupied(s, j) else 1.0) for s in range(2 ** n)]).astype(complex)


def volume_grading(n):
    """omega_C = omega_1 ... omega_n"""
    grading = np.eye(2 ** n, dtype=complex)
    for j in range(1, n + 1):
        grading = grading @ omega(n, j)
    return grading


def plus_projection(n):
    """
    Split the Fock basis by the omega_C eigenvalue.

    Returns:
        (Sigma^+ states, Sigma^- states), each as tuples of occupied modes;
        Sigma^+ holds the states with an even number of occupied modes
    """
    module = SpinorModule(n)
    basis = module.basis
    plus = [basis[i] for i in module.plus_indices]
    minus = [basis[i] for i in module.minus_indices]
    return plus, minus


def spin_lift(n, B):
    """
    Spinor action of B in so(2n).

    rho(B) = 1/4 sum_{j,k} B_kj e_j e_k, so that [rho(B), gamma(v)] = gamma(Bv).

    Args:
        n: Number of pairs
        B: Real antisymmetric 2n x 2n matrix (checked exactly)

    Returns:
        2^n x 2^n skew-Hermitian matrix
    """
    B = np.asarray(B)
    if B.shape != (2 * n, 2 * n):
        raise ValueError(f"spin_lift needs a {2 * n}x{2 * n} matrix, got shape {B.shape}")
    if np.iscomplexobj(B):
        if np.any(B.imag != 0):
            raise ValueError("spin_lift needs a real matrix")
        B = B.real
    if not np.array_equal(B, -B.T):
        raise ValueError("spin_lift needs an antisymmetric matrix (B^T = -B exactly)")

    generators = [frame_generator(n, a) for a in range(1, 2 * n + 1)]
    result = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j in range(2 * n):
        for k in range(2 * n):
            if B[k, j] != 0:
                result += B[k, j] * (generators[j] @ generators[k])
    return result / 4

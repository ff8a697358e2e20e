"""
Representation data for u(n)

- DominantWeight: highest weights with integral differences
- weyl_dim: Weyl dimension formula
- LieRep: explicit matrices pi(E_jk) for a catalog of representations
  (trivial, defining, exterior powers, spin, trace shifts, sums, tensors)
- highest_weights: numerical decomposition of a catalog rep
- kostant_data: closed-form harmonic cocycle dimensions b_k and D_Z values
"""

import itertools
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag, eigh

import config
from clifford_module import spin_lift
from hurwitz_zeta import as_rational, format_weight


class DominantWeight:
    """
    Highest weight lambda = (lambda_1, ..., lambda_n) of u(n)

    Entries are exact rationals with lambda_1 >= ... >= lambda_n and all
    differences integral.
    """

    def __init__(self, entries):
        values = tuple(as_rational(x) for x in entries)
        if not values:
            raise ValueError("a weight needs at least one entry")
        for a, b in zip(values, values[1:]):
            if a < b:
                raise ValueError(f"weight {format_weight(values)} is not dominant (entries must be non-increasing)")
            if (a - b).denominator != 1:
                raise ValueError(f"weight {format_weight(values)} is not algebraically integral (differences must be integers)")
        self.entries = values

    @property
    def n(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if isinstance(other, DominantWeight):
            return self.entries == other.entries
        if isinstance(other, (tuple, list)):
            return self.entries == tuple(as_rational(x) for x in other)
        return NotImplemented

    def __lt__(self, other):
        return self.entries < other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"DominantWeight({', '.join(format_weight(self.entries))})"

    def to_strings(self):
        return format_weight(self.entries)

    def shifted(self, s):
        """Weight of the rep tensored with the character s * tr."""
        s = as_rational(s)
        return DominantWeight(x + s for x in self.entries)


class KostantDatum(NamedTuple):
    """Harmonic cocycles in degree k: dimension b_k and the D_Z scalar on them"""
    k: int
    b_k: int
    z_value: Fraction
    kernel_flag: bool


def as_weight(weight):
    if isinstance(weight, DominantWeight):
        return weight
    return DominantWeight(weight)


def weyl_dim(weight):
    """
    Dimension of the irreducible u(n) representation with highest weight lambda.

    prod_{j<k} (k - j + lambda_j - lambda_k) / (k - j)
    """
    lam = as_weight(weight)
    dim = Fraction(1)
    for j, k in itertools.combinations(range(lam.n), 2):
        dim *= Fraction(k - j) + lam[j] - lam[k]
        dim /= k - j
    if dim.denominator != 1 or dim < 1:
        raise RuntimeError(f"Weyl dimension {dim} is not a positive integer for {lam!r}")
    return int(dim)


def kostant_data(weight, n=None):
    """
    Closed-form Kostant data for the low-energy operator twisted by V_lambda.

    Args:
        weight: Dominant weight of u(n)
        n: Complex dimension (defaults to the length of the weight), n >= 2

    Returns:
        One KostantDatum per degree k = 0..n-1 with
        b_k = (n-1)! dim V prod_{j != k+1} |lambda_j - lambda_{k+1} + k + 1 - j|^{-1}
        z_value = (-1)^k (2k - 2 lambda_{k+1} - n + 1) / 2
    """
    lam = as_weight(weight)
    if n is None:
        n = lam.n
    if lam.n != n:
        raise ValueError(f"weight has {lam.n} entries but n={n}")
    if n < 2:
        raise ValueError(f"Kostant data needs n >= 2, got {n}")

    dim_v = weyl_dim(lam)
    data = []
    for k in range(n):
        # 1-based: lambda_{k+1} is lam[k]
        denominator = Fraction(1)
        for j in range(1, n + 1):
            if j == k + 1:
                continue
            factor = lam[j - 1] - lam[k] + (k + 1) - j
            # dominance keeps every factor away from zero
            assert factor != 0, f"vanishing Kostant factor at k={k}, j={j}"
            denominator *= abs(factor)
        b_k = math.factorial(n - 1) * dim_v / denominator
        if b_k.denominator != 1:
            raise RuntimeError(f"non-integral b_{k} = {b_k} for {lam!r}")
        sign = 1 if k % 2 == 0 else -1
        z_value = sign * (2 * k - 2 * lam[k] - n + 1) / Fraction(2)
        kernel_flag = 2 * lam[k] == 2 * k + 1 - n
        data.append(KostantDatum(k, int(b_k), z_value, kernel_flag))
    return data


def kostant_data_for_weights(weights, n):
    """Kostant rows of every irreducible component, concatenated in component order."""
    rows = []
    for weight in weights:
        rows.extend(kostant_data(weight, n))
    return rows


# ---------------------------------------------------------------------------
# Highest weights of named bundles
# ---------------------------------------------------------------------------

def spin_component_weight(n, l):
    """Highest weight of V_l in the spin representation: l - (n-1)/2 (l times), l - (n+1)/2."""
    if not 0 <= l <= n:
        raise ValueError(f"spin component index must satisfy 0 <= l <= n, got {l}")
    high = Fraction(2 * l - n + 1, 2)
    return DominantWeight([high] * l + [high - 1] * (n - l))


def holomorphic_form_weight(n, p):
    """Highest weight of the (p,0)-forms: -p (n-p times) > -(p+1) (p times)."""
    if not 0 <= p <= n:
        raise ValueError(f"form degree must satisfy 0 <= p <= n, got {p}")
    return DominantWeight([-p] * (n - p) + [-(p + 1)] * p)


def antiholomorphic_form_weight(n, q):
    """Highest weight of the (0,q)-forms: q+1 (q times) > q (n-q times)."""
    if not 0 <= q <= n:
        raise ValueError(f"form degree must satisfy 0 <= q <= n, got {q}")
    return DominantWeight([q + 1] * q + [q] * (n - q))


def dolbeault_weight(n):
    """One-dimensional coefficient of Sigma (x) V_n: lambda_j = (n+1)/2."""
    return DominantWeight([Fraction(n + 1, 2)] * n)


# ---------------------------------------------------------------------------
# Explicit representations
# ---------------------------------------------------------------------------

class LieRep:
    """
    Explicit representation of gl(n, C) = u(n) (x) C

    Stores pi(E_jk) for all 1 <= j, k <= n. On u(n) the action is
    skew-Hermitian; pi(E_jj) is Hermitian with the weights as eigenvalues.
    """

    def __init__(self, n, generators, label="rep"):
        """
        Args:
            n: Rank of u(n)
            generators: Map (j, k) -> pi(E_jk), 1-based, all square of equal size
            label: Human-readable catalog description
        """
        if n < 1:
            raise ValueError(f"representation rank must be >= 1, got {n}")
        sizes = {m.shape for m in generators.values()}
        if len(generators) != n * n or len(sizes) != 1:
            raise ValueError("a LieRep needs pi(E_jk) for every 1 <= j, k <= n, all of one size")
        self.n = n
        self.generators = {key: np.asarray(value, dtype=complex) for key, value in generators.items()}
        self.dim = next(iter(sizes))[0]
        self.label = label

    def __call__(self, j, k):
        return self.generators[(j, k)]

    def act(self, A):
        """pi(A) = sum_jk A_jk pi(E_jk), complex-linear."""
        A = np.asarray(A, dtype=complex)
        result = np.zeros((self.dim, self.dim), dtype=complex)
        for (j, k), matrix in self.generators.items():
            if A[j - 1, k - 1] != 0:
                result += A[j - 1, k - 1] * matrix
        return result

    def bracket_residual(self, A, B):
        """|| [pi(A), pi(B)] - pi([A, B]) ||_max"""
        A = np.asarray(A, dtype=complex)
        B = np.asarray(B, dtype=complex)
        pa, pb = self.act(A), self.act(B)
        return float(np.max(np.abs(pa @ pb - pb @ pa - self.act(A @ B - B @ A)), initial=0.0))

    def __repr__(self):
        return f"LieRep({self.label}, n={self.n}, dim={self.dim})"


def _elementary(n, j, k):
    E = np.zeros((n, n), dtype=complex)
    E[j - 1, k - 1] = 1
    return E


def _keys(n):
    return [(j, k) for j in range(1, n + 1) for k in range(1, n + 1)]


def trivial_rep(n):
    return LieRep(n, {key: np.zeros((1, 1)) for key in _keys(n)}, label=f"trivial({n})")


def defining_rep(n):
    return LieRep(n, {(j, k): _elementary(n, j, k) for j, k in _keys(n)}, label=f"defining({n})")


def exterior_rep(n, q):
    """
    Lambda^q of the defining representation, basis e_I for sorted q-subsets I.

    E_jk acts as a derivation: e_k -> e_j in each slot.
    """
    if not 0 <= q <= n:
        raise ValueError(f"exterior power needs 0 <= q <= n={n}, got q={q}")
    subsets = list(itertools.combinations(range(1, n + 1), q))
    position = {subset: i for i, subset in enumerate(subsets)}
    generators = {}
    for j, k in _keys(n):
        matrix = np.zeros((len(subsets), len(subsets)), dtype=complex)
        for subset in subsets:
            if k not in subset:
                continue
            if j == k:
                matrix[position[subset], position[subset]] += 1
                continue
            if j in subset:
                continue
            rest = [i for i in subset if i != k]
            # e_j lands in the slot of e_k; sorting past the entries strictly between costs a sign each
            between = sum(1 for i in rest if min(j, k) < i < max(j, k))
            target = tuple(sorted(rest + [j]))
            matrix[position[target], position[subset]] += (-1) ** between
        generators[(j, k)] = matrix
    return LieRep(n, generators, label=f"exterior({n},{q})")


def _realify(M):
    """Real 2n x 2n matrix of a complex-linear map, basis e_{2j-1} = u_j, e_{2j} = i u_j."""
    n = M.shape[0]
    R = np.zeros((2 * n, 2 * n))
    for a in range(n):
        for b in range(n):
            p, q = M[a, b].real, M[a, b].imag
            R[2 * a, 2 * b] = p
            R[2 * a, 2 * b + 1] = -q
            R[2 * a + 1, 2 * b] = q
            R[2 * a + 1, 2 * b + 1] = p
    return R


def _spin_on_unitary(n, A):
    # alpha(A) x = A x + tr(A) x on C^n, then lifted to spinors
    alpha = A + np.trace(A) * np.eye(n)
    return spin_lift(n, _realify(alpha))


def spin_rep(n):
    """
    Spin representation on Sigma_{2n}, from alpha(A) = A + tr(A) composed with spin_lift.

    Complex extension: pi(E_jk) = 1/2 pi(E_jk - E_kj) - i/2 pi(i(E_jk + E_kj)),
    pi(E_jj) = -i pi(i E_jj).
    """
    generators = {}
    for j, k in _keys(n):
        if j == k:
            generators[(j, k)] = -1j * _spin_on_unitary(n, 1j * _elementary(n, j, j))
        else:
            antisym = _elementary(n, j, k) - _elementary(n, k, j)
            sym = 1j * (_elementary(n, j, k) + _elementary(n, k, j))
            generators[(j, k)] = 0.5 * _spin_on_unitary(n, antisym) - 0.5j * _spin_on_unitary(n, sym)
    return LieRep(n, generators, label=f"spin({n})")


def trace_shift(rep, s):
    """A -> rep(A) + s tr(A) identity; shifts every weight by s."""
    s = as_rational(s)
    identity = np.eye(rep.dim, dtype=complex)
    generators = {
        (j, k): rep(j, k) + (float(s) * identity if j == k else 0)
        for j, k in _keys(rep.n)
    }
    return LieRep(rep.n, generators, label=f"trace_shift({rep.label},{s})")


def direct_sum(*reps):
    _check_same_rank(reps)
    n = reps[0].n
    generators = {key: block_diag(*[rep(*key) for rep in reps]) for key in _keys(n)}
    return LieRep(n, generators, label="direct_sum(" + ",".join(r.label for r in reps) + ")")


def tensor_rep(first, second):
    _check_same_rank((first, second))
    eye_first = np.eye(first.dim)
    eye_second = np.eye(second.dim)
    generators = {
        key: np.kron(first(*key), eye_second) + np.kron(eye_first, second(*key))
        for key in _keys(first.n)
    }
    return LieRep(first.n, generators, label=f"tensor({first.label},{second.label})")


def _check_same_rank(reps):
    if not reps:
        raise ValueError("need at least one representation")
    ranks = {rep.n for rep in reps}
    if len(ranks) != 1:
        raise ValueError(f"component representations must share n, got {sorted(ranks)}")


def build_rep(spec):
    """
    Build a catalog representation from a nested spec.

    Spec forms (tuples or lists):
        ("trivial", n), ("defining", n), ("exterior", n, q), ("spin", n),
        ("direct_sum", spec, spec, ...), ("tensor", spec, spec),
        ("trace_shift", spec, s)
    """
    if isinstance(spec, LieRep):
        return spec
    if not isinstance(spec, (tuple, list)) or not spec:
        raise ValueError(f"representation spec must be a non-empty tuple, got {spec!r}")
    kind, *args = spec
    if kind == "trivial":
        return trivial_rep(int(args[0]))
    if kind == "defining":
        return defining_rep(int(args[0]))
    if kind == "exterior":
        return exterior_rep(int(args[0]), int(args[1]))
    if kind == "spin":
        return spin_rep(int(args[0]))
    if kind == "direct_sum":
        return direct_sum(*[build_rep(a) for a in args])
    if kind == "tensor":
        if len(args) != 2:
            raise ValueError("tensor takes exactly two component specs")
        return tensor_rep(build_rep(args[0]), build_rep(args[1]))
    if kind == "trace_shift":
        return trace_shift(build_rep(args[0]), args[1])
    raise ValueError(f"unknown representation kind {kind!r}")


def highest_weights(rep, tol=config.EIGEN_MATCH_TOL):
    """
    Decompose a representation into irreducibles by their highest weights.

    The Hermitian operators pi(E_jj) are diagonalized jointly through a generic
    real combination; highest-weight vectors are the joint kernel of the raising
    operators pi(E_{j,j+1}) inside each weight space.

    Returns:
        Sorted list of highest weights, repeated by multiplicity
    """
    n = rep.n
    diagonal = [rep(j, j) for j in range(1, n + 1)]
    coefficients = [math.pi ** (-j) + math.sqrt(j + 1) for j in range(n)]
    combined = sum(c * h for c, h in zip(coefficients, diagonal))
    values, vectors = eigh(combined)

    # cluster by combined eigenvalue; each cluster is one weight space
    clusters = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > 1e-6:
            clusters.append(vectors[:, start:i])
            start = i

    found = []
    for block in clusters:
        weight = []
        for h in diagonal:
            image = h @ block
            mu = np.real(np.trace(block.conj().T @ image)) / block.shape[1]
            if np.max(np.abs(image - mu * block), initial=0.0) > 1e-6:
                raise RuntimeError(f"{rep!r}: weight operators are not jointly diagonal (not a representation?)")
            snapped = Fraction(mu).limit_denominator(config.WEIGHT_DENOMINATOR_LIMIT)
            if abs(float(snapped) - mu) > tol:
                raise RuntimeError(f"{rep!r}: weight entry {mu} is not a small rational")
            weight.append(snapped)

        if n > 1:
            raising = np.vstack([rep(j, j + 1) @ block for j in range(1, n)])
            singular = np.linalg.svd(raising, compute_uv=False)
            multiplicity = block.shape[1] - int(np.sum(singular > 1e-8))
        else:
            multiplicity = block.shape[1]
        if multiplicity > 0:
            found.extend([DominantWeight(weight)] * multiplicity)

    total = sum(weyl_dim(w) for w in found)
    if total != rep.dim:
        raise RuntimeError(f"{rep!r}: highest weights account for dimension {total}, expected {rep.dim}")
    return sorted(found, reverse=True)

"""
Heisenberg nilmanifold spectra and eta invariants

Covers lattices Gamma_d in the Heisenberg group G_n, the data (c, m, dim V) of
their irreducible unitary representations, the flat Dirac spectrum with
multiplicities, exact and truncated eta functions, and an independent
Hermite-truncation oracle for one irreducible sector rho_w.

The w = 0 sector is never enumerated: its eta function vanishes identically.
Only Heisenberg groups are handled; for two-step nilpotent groups with a center
of dimension >= 2 the eta invariant vanishes and nothing is computed.
"""

import itertools
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import pandas as pd
from scipy.linalg import eigh

import config
from clifford_module import GeneratorKind, SpinorModule, clifford_generator
from hurwitz_zeta import (
    as_rational,
    as_twist,
    complementary_twist,
    format_rational,
    hurwitz_zeta_neg,
    hurwitz_zeta_series,
)


class LatticeType:
    """
    Lattice type d = (d_1, ..., d_n) of a uniform lattice in G_n

    Positive integers with d_i dividing d_{i+1}; |Gamma| = d_1 ... d_n.
    """

    def __init__(self, d):
        values = tuple(d)
        if not values:
            raise ValueError("lattice type needs at least one entry")
        for value in values:
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"lattice type entries must be positive integers, got {values}")
        for a, b in zip(values, values[1:]):
            if b % a != 0:
                raise ValueError(f"lattice type {values} violates the divisibility chain: {a} does not divide {b}")
        self.d = tuple(int(v) for v in values)

    @property
    def n(self):
        return len(self.d)

    @property
    def order(self):
        """|Gamma|"""
        return math.prod(self.d)

    def __iter__(self):
        return iter(self.d)

    def __eq__(self, other):
        if isinstance(other, LatticeType):
            return self.d == other.d
        return NotImplemented

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"LatticeType{self.d}"


def as_lattice(d):
    return d if isinstance(d, LatticeType) else LatticeType(d)


class GammaRepData(NamedTuple):
    """Irreducible Gamma-representation: twist c, denominators m_j of c d_j, dim V = prod m_j"""
    c: Fraction
    m: tuple
    dimV: int


class SeriesEstimate(NamedTuple):
    """Truncated lattice sum with a rigorous bound on the omitted tail"""
    value: float
    tail_bound: float


class HeisenbergMetric:
    """
    Normal-form metric: r_1 X_1, r_1 Y_1, ..., r_n Y_n, r Z orthonormal

    with [X_j, Y_j] = Z, so [X_j', Y_j'] = r_j^2 Z and |Z| = 1/r.
    """

    def __init__(self, r_j, r):
        r_j = [float(x) for x in r_j]
        if not r_j or any(x <= 0 for x in r_j) or not float(r) > 0:
            raise ValueError(f"metric parameters must be positive, got r_j={r_j}, r={r}")
        self.r_j = tuple(r_j)
        self.r = float(r)

    @classmethod
    def unit(cls, n):
        return cls([1.0] * n, 1.0)

    @property
    def n(self):
        return len(self.r_j)

    def __repr__(self):
        return f"HeisenbergMetric(r_j={list(self.r_j)}, r={self.r})"


def _check_metric(metric, n):
    if metric is None:
        return HeisenbergMetric.unit(n)
    if metric.n != n:
        raise ValueError(f"metric has {metric.n} parameters r_j but n={n}")
    return metric


def gamma_rep_data(d, c):
    """
    Data of an irreducible unitary Gamma-representation with central twist c.

    Args:
        d: Lattice type
        c: Twist parameter, 0 <= c < 1

    Returns:
        GammaRepData with m_j = denominator of c * d_j and dimV = prod m_j
    """
    lattice = as_lattice(d)
    c = as_twist(c)
    m = tuple((c * dj).denominator for dj in lattice)
    return GammaRepData(c, m, math.prod(m))


def _positive_start(c):
    # smallest positive w = c mod 1
    return c if c > 0 else Fraction(1)


def _negative_start(c):
    # smallest |w| among negative w = c mod 1
    return 1 - c


def sector_multiplicity(d, dimV, w):
    """Number of copies of rho_w: |Gamma| dim V |w|^n."""
    lattice = as_lattice(d)
    count = lattice.order * _check_dimV(dimV) * abs(as_rational(w)) ** lattice.n
    if count.denominator != 1:
        raise ValueError(
            f"|Gamma| dimV |w|^n = {format_rational(count)} is not an integer; "
            "dimV must include the Gamma-representation dimension"
        )
    return int(count)


def dirac_sq_eigenvalue(w, p, eps, metric):
    """4 pi^2 w^2 r^2 + 2 pi |w| sum_j (2 p_j + 1 + eps_j sign w) r_j^2"""
    w = float(w)
    sign = 1.0 if w > 0 else -1.0
    transverse = sum((2 * pj + 1 + ej * sign) * rj ** 2 for pj, ej, rj in zip(p, eps, metric.r_j))
    return 4 * math.pi ** 2 * w ** 2 * metric.r ** 2 + 2 * math.pi * abs(w) * transverse


def _sector_items(n, w, metric, cutoff):
    """All (p, eps, value) in the sector rho_w with value <= cutoff."""
    abs_w = abs(float(w))
    # (2 p_j + 1 + eps) >= 2 p_j bounds each p_j
    bounds = [int(cutoff / (4 * math.pi * abs_w * rj ** 2)) + 1 for rj in metric.r_j]
    for p in itertools.product(*[range(b + 1) for b in bounds]):
        for eps in itertools.product((-1, 1), repeat=n):
            value = dirac_sq_eigenvalue(w, p, eps, metric)
            if value <= cutoff:
                yield p, eps, value


def _twisted_frequencies(c, max_abs):
    """Nonzero w = c mod 1 with |w| <= max_abs, positive then negative."""
    result = []
    w = _positive_start(c)
    while w <= max_abs:
        result.append(w)
        w += 1
    w = _negative_start(c)
    while w <= max_abs:
        result.append(-w)
        w += 1
    return result


def dirac_sq_spectrum(n, d, c, metric=None, cutoff=100.0, dimV=None):
    """
    Spectrum of the squared flat Dirac operator on Gamma_d \\ G_n below a cutoff.

    Args:
        n: Heisenberg dimension parameter (G_n has dimension 2n+1)
        d: Lattice type of length n
        c: Twist parameter of the Gamma-representation
        metric: Normal-form metric (unit metric when omitted)
        cutoff: Largest eigenvalue of Dbar^2 to list
        dimV: Total coefficient dimension (defaults to the Gamma-representation dimension)

    Returns:
        DataFrame with columns w, p, eps, value, multiplicity sorted by value;
        multiplicity = |Gamma| dimV |w|^n
    """
    lattice = as_lattice(d)
    if lattice.n != n:
        raise ValueError(f"lattice type has length {lattice.n} but n={n}")
    if not cutoff > 0:
        raise ValueError(f"cutoff must be positive, got {cutoff}")
    metric = _check_metric(metric, n)
    c = as_twist(c)
    if dimV is None:
        dimV = gamma_rep_data(lattice, c).dimV

    max_abs_w = math.sqrt(cutoff) / (2 * math.pi * metric.r)
    rows = []
    for w in _twisted_frequencies(c, max_abs_w):
        multiplicity = sector_multiplicity(lattice, dimV, w)
        for p, eps, value in _sector_items(n, w, metric, cutoff):
            rows.append({'w': w, 'p': p, 'eps': eps, 'value': value, 'multiplicity': multiplicity})

    df = pd.DataFrame(rows, columns=['w', 'p', 'eps', 'value', 'multiplicity'])
    return df.sort_values('value', kind='stable').reset_index(drop=True)


def _check_dimV(dimV):
    if isinstance(dimV, bool) or not isinstance(dimV, (int, np.integer)) or dimV < 1:
        raise ValueError(f"dimV must be a positive integer, got {dimV!r}")
    return int(dimV)


def _check_nonpositive_integer(s):
    if isinstance(s, bool):
        raise ValueError("s must be an integer")
    if isinstance(s, Fraction):
        if s.denominator != 1:
            raise ValueError(f"closed-form eta needs an integer s <= 0, got {format_rational(s)}")
        s = int(s)
    if not isinstance(s, (int, np.integer)) or s > 0:
        raise ValueError(f"closed-form eta needs an integer s <= 0, got {s!r}")
    return int(s)


def eta_closed(n, d, c, dimV_rep, s=0):
    """
    Exact eta function of the flat Dirac operator at an integer s <= 0.

    eta(Dbar, s) = C_s (2 pi r)^{-s}; the rational coefficient C_s is returned.
    At s = 0 this is the eta invariant itself.

        n even: C_s =  |Gamma| dimV (zeta_c(s-n) - zeta_{1-c}(s-n))
        n odd:  C_s = -|Gamma| dimV (zeta_c(s-n) + zeta_{1-c}(s-n))

    dimV_rep is the Gamma-representation dimension times the coefficient dimension.
    """
    lattice = as_lattice(d)
    if n < 1 or lattice.n != n:
        raise ValueError(f"need n >= 1 and a lattice type of length n, got n={n}, d={lattice.d}")
    s = _check_nonpositive_integer(s)
    c = as_twist(c)
    order = n - s + 1  # zeta(s - n) = zeta(1 - order)
    zeta_c = hurwitz_zeta_neg(order, c)
    zeta_other = hurwitz_zeta_neg(order, complementary_twist(c))
    scale = lattice.order * _check_dimV(dimV_rep)
    if n % 2 == 0:
        return scale * (zeta_c - zeta_other)
    return -scale * (zeta_c + zeta_other)


def eta_closed_series(n, d, c, dimV_rep, metric=None, s=None, tol=config.SERIES_TOL):
    """Closed form of eta(Dbar, s) at real s > n + 1, with Hurwitz zeta from the series."""
    lattice = as_lattice(d)
    metric = _check_metric(metric, n)
    if s is None or not s > n + 1:
        raise ValueError(f"eta closed form by series needs s > n + 1 = {n + 1}, got s={s}")
    c = as_twist(c)
    prefactor = lattice.order * _check_dimV(dimV_rep) * (2 * math.pi * metric.r) ** (-s)
    zeta_c = hurwitz_zeta_series(s - n, c, tol)
    zeta_other = hurwitz_zeta_series(s - n, complementary_twist(c), tol)
    if n % 2 == 0:
        return prefactor * (zeta_c - zeta_other)
    return -prefactor * (zeta_c + zeta_other)


def eta_series(n, d, c, dimV_rep, metric=None, s=None, W_max=config.DEFAULT_W_MAX):
    """
    Truncated lattice sum for eta(Dbar, s), s > n + 1.

    |Gamma| dimV (2 pi r)^{-s} times
        n even: sum_{0<|w|<=W_max} sign(w) |w|^{n-s}
        n odd:  -sum_{0<|w|<=W_max} |w|^{n-s}

    Returns:
        SeriesEstimate(value, tail_bound) where the omitted tail is at most tail_bound
    """
    lattice = as_lattice(d)
    if lattice.n != n:
        raise ValueError(f"lattice type has length {lattice.n} but n={n}")
    metric = _check_metric(metric, n)
    if s is None or not s > n + 1:
        raise ValueError(f"eta series converges only for s > n + 1 = {n + 1}, got s={s}")
    if W_max < 1:
        raise ValueError(f"W_max must be >= 1, got {W_max}")
    c = as_twist(c)
    sigma = s - n

    positive = float(_positive_start(c)) + np.arange(0, W_max + 1, dtype=np.float64)
    positive = positive[positive <= W_max]
    negative = float(_negative_start(c)) + np.arange(0, W_max + 1, dtype=np.float64)
    negative = negative[negative <= W_max]
    sum_positive = math.fsum(positive[::-1] ** (-sigma))
    sum_negative = math.fsum(negative[::-1] ** (-sigma))

    prefactor = lattice.order * _check_dimV(dimV_rep) * (2 * math.pi * metric.r) ** (-s)
    if n % 2 == 0:
        value = prefactor * (sum_positive - sum_negative)
    else:
        value = -prefactor * (sum_positive + sum_negative)

    tail = W_max ** (-sigma) + W_max ** (1 - sigma) / (sigma - 1)
    return SeriesEstimate(value, 2 * abs(prefactor) * tail)


def eta_cusp_asymptotic(n_complex, d, c, dimV_rep):
    """
    Limit of the high-energy eta invariant along a complex hyperbolic cusp.

    (-1)^n |Gamma| dimV (zeta_c(1-n) + (-1)^n zeta_{1-c}(1-n)), where the cusp
    cross section is a quotient of G_{n-1} by a lattice of type d.
    """
    lattice = as_lattice(d)
    if n_complex < 2:
        raise ValueError(f"cusps need complex dimension n >= 2, got {n_complex}")
    if lattice.n != n_complex - 1:
        raise ValueError(f"lattice type must have length n-1={n_complex - 1}, got {lattice.n}")
    c = as_twist(c)
    sign = 1 if n_complex % 2 == 0 else -1
    zeta_c = hurwitz_zeta_neg(n_complex, c)
    zeta_other = hurwitz_zeta_neg(n_complex, complementary_twist(c))
    return sign * lattice.order * _check_dimV(dimV_rep) * (zeta_c + sign * zeta_other)


# ---------------------------------------------------------------------------
# Single-sector spectra: closed form and Hermite oracle
# ---------------------------------------------------------------------------

def asymmetric_eigenvalue(n, w, metric=None):
    """The unpaired Dirac eigenvalue of rho_w: 2 pi w r (n even), -2 pi |w| r (n odd)."""
    metric = _check_metric(metric, n)
    if n % 2 == 0:
        return 2 * math.pi * float(w) * metric.r
    return -2 * math.pi * abs(float(w)) * metric.r


def _cluster(values, tol):
    """Group sorted eigenvalues closer than tol into (eigenvalue, multiplicity) rows."""
    rows = []
    group = []
    for value in np.sort(values):
        if group and value - group[-1] > tol:
            rows.append({'eigenvalue': float(np.mean(group)), 'multiplicity': len(group)})
            group = []
        group.append(value)
    if group:
        rows.append({'eigenvalue': float(np.mean(group)), 'multiplicity': len(group)})
    return pd.DataFrame(rows, columns=['eigenvalue', 'multiplicity'])


def expected_flat_dirac_spectrum(n, w, metric=None, cutoff=15.0, sector_multiplicity=1,
                                 tol=config.HERMITE_MATCH_TOL):
    """
    Dirac spectrum of one sector rho_w from the closed-form Dbar^2 eigenvalues.

    Apart from the state p = 0, eps_j = -sign w (the asymmetric eigenvalue), the
    Dbar^2 eigenvectors at each value lambda split evenly into +sqrt(lambda) and
    -sqrt(lambda).

    Args:
        cutoff: Largest |eigenvalue| of Dbar to list
    """
    metric = _check_metric(metric, n)
    if float(w) == 0:
        raise ValueError("the w = 0 sector is excluded")
    w = float(w)
    sign = 1 if w > 0 else -1
    asymmetric_state = ((0,) * n, (-sign,) * n)

    squares = []
    for p, eps, value in _sector_items(n, w, metric, cutoff ** 2 * (1 + 1e-9)):
        if (p, eps) != asymmetric_state:
            squares.append(value)

    rows = []
    for row in _cluster(np.array(squares), tol).itertuples(index=False):
        if row.multiplicity % 2:
            raise RuntimeError(f"unpaired Dbar^2 eigenvalue {row.eigenvalue} in sector w={w}")
        root = math.sqrt(row.eigenvalue)
        half = row.multiplicity // 2
        rows.append({'eigenvalue': root, 'multiplicity': half})
        rows.append({'eigenvalue': -root, 'multiplicity': half})
    rows.append({'eigenvalue': asymmetric_eigenvalue(n, w, metric), 'multiplicity': 1})

    df = pd.DataFrame(rows, columns=['eigenvalue', 'multiplicity'])
    df = df[df["eigenvalue"].abs() <= cutoff].copy()
    df['multiplicity'] = df['multiplicity'] * sector_multiplicity
    return df.sort_values('eigenvalue').reset_index(drop=True)


def _ladder(levels):
    """Annihilation operator a on the first `levels` Hermite functions."""
    return np.diag(np.sqrt(np.arange(1, levels, dtype=float)), k=1)


def _embed(factors):
    result = factors[0]
    for factor in factors[1:]:
        result = np.kron(result, factor)
    return result


def flat_dirac_matrix(n, w, metric, levels):
    """
    Truncated flat Dirac operator on rho_w (x) Sigma, basis Sigma^+_{2n+2} (x) Hermite^n.

    rho_w: X_j = d/dx_j, Y_j = 2 pi i w x_j, Z = 2 pi i w, in the Hermite basis
    f_p(x) = h_p(alpha x), alpha = sqrt(2 pi |w|):
        X_j -> alpha (a_j - a_j^dagger)/sqrt 2,  Y_j -> i sign(w) alpha (a_j + a_j^dagger)/sqrt 2.
    Clifford multiplication c(v) = gamma(T) gamma(v); pair 1 carries (T, Z).
    """
    w = float(w)
    sign = 1.0 if w > 0 else -1.0
    alpha = math.sqrt(2 * math.pi * abs(w))
    spinors = SpinorModule(n + 1)
    gamma_t = clifford_generator(n + 1, 1, GeneratorKind.X)

    def clifford(j, kind):
        return spinors.restrict_plus(gamma_t @ clifford_generator(n + 1, j, kind))

    a = _ladder(levels)
    identity = np.eye(levels)
    dim_osc = levels ** n
    spin_dim = 2 ** n

    dirac = 2j * math.pi * w * metric.r * np.kron(clifford(1, GeneratorKind.Y), np.eye(dim_osc))
    for j in range(1, n + 1):
        lowered = _embed([a if i == j else identity for i in range(1, n + 1)])
        raised = lowered.conj().T
        derivative = alpha * (lowered - raised) / math.sqrt(2)
        position = 1j * sign * alpha * (lowered + raised) / math.sqrt(2)
        rj = metric.r_j[j - 1]
        dirac = dirac + rj * np.kron(clifford(j + 1, GeneratorKind.X), derivative)
        dirac = dirac + rj * np.kron(clifford(j + 1, GeneratorKind.Y), position)
    assert dirac.shape == (spin_dim * dim_osc, spin_dim * dim_osc)
    return dirac


def hermite_oracle(n, w, metric=None, levels=config.DEFAULT_HERMITE_LEVELS, sector_multiplicity=1,
                   boundary_tol=config.BOUNDARY_WEIGHT_TOL, tol=config.HERMITE_MATCH_TOL):
    """
    Brute-force Dirac spectrum of one sector rho_w by Hermite truncation.

    Eigenvectors carrying weight >= boundary_tol on the top two Hermite levels of
    any coordinate are discarded as truncation artefacts.

    Returns:
        DataFrame (eigenvalue, multiplicity) sorted by eigenvalue
    """
    metric = _check_metric(metric, n)
    if levels < 4:
        raise ValueError(f"Hermite oracle needs levels >= 4, got {levels}")
    if float(w) == 0:
        raise ValueError("the w = 0 sector is excluded")

    dirac = flat_dirac_matrix(n, w, metric, levels)
    asymmetry = np.max(np.abs(dirac - dirac.conj().T))
    if asymmetry > config.HERMITIAN_TOL:
        raise RuntimeError(f"flat Dirac matrix is not Hermitian (residual {asymmetry:.2e})")

    values, vectors = eigh(dirac)

    # mask of basis states touching the top two levels of some coordinate
    grid = np.indices((levels,) * n).reshape(n, -1)
    boundary = np.any(grid >= levels - 2, axis=0)
    boundary = np.tile(boundary, 2 ** n)
    weights = np.sum(np.abs(vectors[boundary, :]) ** 2, axis=0)

    trusted = values[weights < boundary_tol]
    df = _cluster(trusted, tol)
    df['multiplicity'] = df['multiplicity'] * sector_multiplicity
    return df


def compare_sector_spectra(oracle, expected, cutoff, tol=config.HERMITE_MATCH_TOL):
    """
    Match oracle and closed-form sector spectra for |eigenvalue| <= cutoff.

    Returns:
        DataFrame with columns eigenvalue, expected, found, matched
    """
    oracle = oracle[oracle['eigenvalue'].abs() <= cutoff + tol]
    expected = expected[expected['eigenvalue'].abs() <= cutoff]
    rows = []
    used = set()
    for row in expected.itertuples(index=False):
        close = oracle[(oracle['eigenvalue'] - row.eigenvalue).abs() <= tol]
        found = int(close['multiplicity'].sum())
        used.update(close.index)
        rows.append({'eigenvalue': row.eigenvalue, 'expected': row.multiplicity,
                     'found': found, 'matched': found == row.multiplicity})
    for index, row in oracle.iterrows():
        if index not in used and abs(row["eigenvalue"]) <= cutoff - tol:
            rows.append({'eigenvalue': row['eigenvalue'], 'expected': 0,
                         'found': int(row['multiplicity']), 'matched': False})
    return pd.DataFrame(rows, columns=['eigenvalue', 'expected', 'found', 'matched'])

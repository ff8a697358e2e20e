"""
Cusp corrections and index assembly for complex hyperbolic manifolds

Each cusp contributes
    Corr(C) = 1/2 (lim eta(A^{he,+}) + eta(A^{le,+}) + dim ker A^{le,+})
and the extended index is the bulk term plus the sum of corrections. The L^2
index replaces the kernel term by -1/2 (h^+ - h^-), which has no local formula
and is taken as input unless it is forced (Fredholm case, spinors in odd n).

Bulk terms are inputs: a raw integral, or a volume ratio vol X / vol CP^n for
the named bundles ((-1)^n v for Dolbeault, v for the signature operator).
"""

from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

import pandas as pd

from heisenberg_spectrum import as_lattice, eta_cusp_asymptotic, gamma_rep_data
from hurwitz_zeta import as_rational, as_twist, binomial, format_rational, hurwitz_zeta_neg
from unitary_reps import (
    DominantWeight,
    as_weight,
    dolbeault_weight,
    kostant_data,
    spin_component_weight,
    weyl_dim,
)


class BundleKind(Enum):
    """Dirac bundles with closed-form cusp data"""
    DOLBEAULT = "dolbeault"
    SIGNATURE = "signature"
    SPINOR = "spinor"
    CUSTOM = "custom"


class BundleSpec:
    """
    Coefficient bundle along the cusps

    - dolbeault: pi = ((n+1)/2, ..., (n+1)/2), trivial twist
    - signature: pi = spin representation (components V_0..V_n), trivial twist, n even
    - spinor: pi = 0, twist c in {0, 1/2}
    - custom: explicit highest weights, any rational twist, optional dimV override
    """

    def __init__(self, kind, twist=0, weights=None, dimV_override=None):
        self.kind = kind if isinstance(kind, BundleKind) else BundleKind(str(kind).lower())
        self.twist = as_twist(twist)
        self.weights = [as_weight(w) for w in weights] if weights else []
        self.dimV_override = dimV_override

        if self.kind in (BundleKind.DOLBEAULT, BundleKind.SIGNATURE) and self.twist != 0:
            raise ValueError(f"{self.kind.value} bundles have trivial twist")
        if self.kind is BundleKind.SPINOR and self.twist not in (0, Fraction(1, 2)):
            raise ValueError("spinor bundles need twist 0 or 1/2 (spin structures); use kind=custom otherwise")
        if self.kind is BundleKind.CUSTOM and not self.weights:
            raise ValueError("custom bundles need at least one highest weight")
        if self.kind is not BundleKind.CUSTOM and (self.weights or dimV_override is not None):
            raise ValueError("weights and dimV_override apply to custom bundles only")
        if dimV_override is not None and (isinstance(dimV_override, bool) or int(dimV_override) < 1):
            raise ValueError(f"dimV_override must be a positive integer, got {dimV_override!r}")

    @classmethod
    def dolbeault(cls):
        return cls(BundleKind.DOLBEAULT)

    @classmethod
    def signature(cls):
        return cls(BundleKind.SIGNATURE)

    @classmethod
    def spinor(cls, twist=0):
        return cls(BundleKind.SPINOR, twist)

    @classmethod
    def custom(cls, weights, twist=0, dimV_override=None):
        return cls(BundleKind.CUSTOM, twist, weights, dimV_override)

    def components(self, n):
        """Highest weights of the irreducible summands of pi."""
        if self.kind is BundleKind.DOLBEAULT:
            return [dolbeault_weight(n)]
        if self.kind is BundleKind.SIGNATURE:
            return [spin_component_weight(n, l) for l in range(n + 1)]
        if self.kind is BundleKind.SPINOR:
            return [DominantWeight([0] * n)]
        for weight in self.weights:
            if weight.n != n:
                raise ValueError(f"custom weight {weight!r} has {weight.n} entries but n={n}")
        return list(self.weights)

    def pi_dim(self, n):
        return sum(weyl_dim(w) for w in self.components(n))

    def check(self, n):
        if self.kind is BundleKind.SIGNATURE and n % 2:
            raise ValueError(f"the signature operator needs n even, got n={n}")
        self.components(n)

    def __eq__(self, other):
        if not isinstance(other, BundleSpec):
            return NotImplemented
        return (self.kind, self.twist, self.weights, self.dimV_override) == \
            (other.kind, other.twist, other.weights, other.dimV_override)

    def __repr__(self):
        extra = f", twist={format_rational(self.twist)}" if self.twist else ""
        if self.kind is BundleKind.CUSTOM:
            extra += f", weights={self.weights}"
        return f"BundleSpec({self.kind.value}{extra})"


class CuspDescription:
    """Cusp with cross section Gamma_d \\ G_{n-1} carrying the bundle `bundle`"""

    def __init__(self, n, d, bundle):
        if n < 2:
            raise ValueError(f"cusps need complex dimension n >= 2, got {n}")
        lattice = as_lattice(d)
        if lattice.n != n - 1:
            raise ValueError(f"lattice type must have length n-1={n - 1}, got {lattice.d}")
        bundle.check(n)
        if bundle.kind is BundleKind.SPINOR and bundle.twist and any(dj % 2 for dj in lattice):
            raise ValueError(
                f"spinor twist 1/2 needs every d_j even (a character with tau(zeta) = -1), got d={lattice.d}"
            )
        self.n = n
        self.d = lattice
        self.bundle = bundle

    @property
    def gamma_order(self):
        return self.d.order

    def dimV(self):
        """Gamma-representation dimension times pi dimension (or the custom override)."""
        if self.bundle.dimV_override is not None:
            return int(self.bundle.dimV_override)
        return gamma_rep_data(self.d, self.bundle.twist).dimV * self.bundle.pi_dim(self.n)

    def __repr__(self):
        return f"CuspDescription(n={self.n}, d={self.d.d}, {self.bundle!r})"


class CorrectionReport(NamedTuple):
    he_eta: Fraction
    le_eta: int
    ker_dim: int
    corr: Fraction


class BulkTerm(NamedTuple):
    """Either the raw integral of the index form or the volume ratio vol X / vol CP^n"""
    kind: str
    value: Fraction


class ManifoldDescription:
    """Complete manifold data: bulk term, cusps, optional h^+ - h^-"""

    def __init__(self, n, bundle, bulk, cusps, h_diff=None):
        bundle.check(n)
        self.n = n
        self.bundle = bundle
        self.cusps = list(cusps)
        for cusp in self.cusps:
            # twists (spin structures) may differ from cusp to cusp
            if cusp.n != n or cusp.bundle.kind is not bundle.kind or cusp.bundle.weights != bundle.weights:
                raise ValueError(f"all cusps must share n={n} and the bundle kind {bundle.kind.value}, got {cusp!r}")
        if bulk is not None and bulk.kind not in ("integral", "volume_ratio"):
            raise ValueError(f"bulk kind must be 'integral' or 'volume_ratio', got {bulk.kind!r}")
        self.bulk = None if bulk is None else BulkTerm(bulk.kind, as_rational(bulk.value))
        self.h_diff = None if h_diff is None else as_rational(h_diff)

    @property
    def ends(self):
        return len(self.cusps)

    def gammas(self):
        return [cusp.gamma_order for cusp in self.cusps]

    def bulk_value(self):
        """Integral of the index form, from the input or by proportionality."""
        kind = self.bundle.kind
        if self.bulk is not None and self.bulk.kind == "integral":
            return self.bulk.value
        if kind is BundleKind.SPINOR and self.n % 2:
            # index density vanishes for spinors in odd complex dimension
            return Fraction(0)
        if self.bulk is None:
            raise ValueError(f"missing bulk term for the {kind.value} bundle (give 'integral' or 'volume_ratio')")
        if kind is BundleKind.DOLBEAULT:
            return (-1) ** self.n * self.bulk.value
        if kind is BundleKind.SIGNATURE:
            return self.bulk.value
        raise ValueError(f"a volume ratio does not determine the bulk term of a {kind.value} bundle; give 'integral'")

    def __repr__(self):
        return f"ManifoldDescription(n={self.n}, {self.bundle!r}, ends={self.ends})"


# ---------------------------------------------------------------------------
# Corrections
# ---------------------------------------------------------------------------

def _sign(value):
    return (value > 0) - (value < 0)


def low_energy_invariants(n, weights):
    """(eta(A^le,+), dim ker A^le,+) summed over irreducible components, by Kostant's formula."""
    eta = 0
    kernel = 0
    for weight in weights:
        for datum in kostant_data(weight, n):
            # A^le = -D^le, so A acts by -z_value on H^k
            eta += datum.b_k * _sign(-datum.z_value)
            if datum.kernel_flag:
                kernel += datum.b_k
    return eta, kernel


def correction(cusp):
    """
    Correction term of one cusp.

    Nontrivial twist: only the high-energy term survives.
    Trivial twist: low-energy eta and kernel from Kostant data of every component.
    """
    he = eta_cusp_asymptotic(cusp.n, cusp.d, cusp.bundle.twist, cusp.dimV())
    if cusp.bundle.twist != 0:
        le, ker = 0, 0
    else:
        le, ker = low_energy_invariants(cusp.n, cusp.bundle.components(cusp.n))
    corr = (he + le + ker) / 2
    return CorrectionReport(he, le, ker, corr)


def correction_table(M):
    """Per-cusp correction reports as a DataFrame."""
    rows = []
    for i, cusp in enumerate(M.cusps, start=1):
        report = correction(cusp)
        rows.append({
            'cusp': i,
            'd': list(cusp.d.d),
            'gamma_order': cusp.gamma_order,
            'dimV': cusp.dimV(),
            'he_eta': report.he_eta,
            'le_eta': report.le_eta,
            'ker_dim': report.ker_dim,
            'corr': report.corr,
        })
    return pd.DataFrame(rows, columns=['cusp', 'd', 'gamma_order', 'dimV', 'he_eta', 'le_eta', 'ker_dim', 'corr'])


def extended_index(M):
    """ind D^+_ext = bulk + sum of corrections"""
    return M.bulk_value() + sum((correction(c).corr for c in M.cusps), Fraction(0))


def fredholm_type(M):
    """True iff every low-energy kernel vanishes."""
    return all(correction(c).ker_dim == 0 for c in M.cusps)


def resolve_h_diff(M, h_diff=None):
    """
    h^+ - h^- from the argument, the manifold data, or the forced cases.

    Fredholm type gives 0 (both vanish); spinors in odd n give 0 (h^+ = h^-).
    """
    if h_diff is not None:
        return as_rational(h_diff)
    if M.h_diff is not None:
        return M.h_diff
    if fredholm_type(M):
        return Fraction(0)
    if M.bundle.kind is BundleKind.SPINOR and M.n % 2:
        return Fraction(0)
    raise ValueError(
        "h+ - h- is non-local and not forced here (operator is not of Fredholm type); supply h_diff"
    )


def l2_index(M, h_diff=None):
    """ind_{L^2} D^+ = bulk + 1/2 sum (he + le) - 1/2 (h^+ - h^-)"""
    h = resolve_h_diff(M, h_diff)
    local = sum((Fraction(r.he_eta + r.le_eta) for r in map(correction, M.cusps)), Fraction(0))
    return M.bulk_value() + local / 2 - h / 2


def h_split(M, h_diff=None):
    """(h^+, h^-) from h^+ + h^- = sum of low-energy kernels and the resolved difference."""
    kernel_total = sum(correction(c).ker_dim for c in M.cusps)
    h = resolve_h_diff(M, h_diff)
    return (kernel_total + h) / 2, (kernel_total - h) / 2


class IndexReport(NamedTuple):
    extended: Fraction
    l2: Optional[Fraction]
    fredholm: bool
    kernel_total: int
    h_plus: Optional[Fraction]
    h_minus: Optional[Fraction]


def index_report(M, h_diff=None):
    """Extended and L^2 indices; the L^2 side is None when h^+ - h^- is unknown."""
    extended = extended_index(M)
    fredholm = fredholm_type(M)
    kernel_total = sum(correction(c).ker_dim for c in M.cusps)
    try:
        l2 = l2_index(M, h_diff)
        h_plus, h_minus = h_split(M, h_diff)
    except ValueError:
        l2, h_plus, h_minus = None, None, None
    return IndexReport(extended, l2, fredholm, kernel_total, h_plus, h_minus)


# ---------------------------------------------------------------------------
# Closed-form index theorems and worked examples
# ---------------------------------------------------------------------------

def dolbeault_index(n, v, gammas):
    """L^2 Euler characteristic of O: (-1)^n v + zeta(1-n) sum |Gamma| for even n."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    v = as_rational(v)
    value = (-1) ** n * v
    if n % 2 == 0:
        value += hurwitz_zeta_neg(n, 0) * sum(gammas)
    return value


def signature_index(n, v, gammas, ends):
    """v + 2^n zeta(1-n) sum |Gamma| + nu (-1)^{n/2} (C(n-2, n/2) - C(n-2, n/2-1))"""
    if n < 2 or n % 2:
        raise ValueError(f"the signature formula needs n even and >= 2, got n={n}")
    half = n // 2
    low_energy = (-1) ** half * (binomial(n - 2, half) - binomial(n - 2, half - 1))
    return as_rational(v) + 2 ** n * hurwitz_zeta_neg(n, 0) * sum(gammas) + ends * low_energy


def spinor_extended_index_odd(n, ends):
    """nu/2 * C(n-1, (n-1)/2) for spinors with periodic spin structure, n odd"""
    if n % 2 == 0:
        raise ValueError(f"spinor extended index formula needs n odd, got n={n}")
    return Fraction(ends, 2) * binomial(n - 1, (n - 1) // 2)


def harder_check(n, v, chi):
    """(n+1) vol X / vol CP^n = (-1)^n chi(X)"""
    return (n + 1) * as_rational(v) == (-1) ** n * chi


def volume_integrality_check(n, v, gammas=()):
    """The Dolbeault L^2 index is an integer (for odd n: v itself is integral)."""
    return dolbeault_index(n, v, gammas).denominator == 1


def dolbeault_low_energy(n):
    """b_k = C(n-1, k), D_Z = (-1)^k (k - n), eta = 0, ker = 0"""
    return {
        'b': tuple(binomial(n - 1, k) for k in range(n)),
        'z_values': tuple(Fraction((-1) ** k * (k - n)) for k in range(n)),
        'le_eta': 0,
        'ker_dim': 0,
    }


def signature_low_energy_eta(n):
    """0 for odd n, 2 (-1)^{n/2} (C(n-2, n/2) - C(n-2, n/2-1)) for even n"""
    if n % 2:
        return 0
    half = n // 2
    return 2 * (-1) ** half * (binomial(n - 2, half) - binomial(n - 2, half - 1))


def spinor_low_energy(n):
    """(eta, ker) for lambda = 0: even n gives (2 (-1)^{(n-2)/2} C(n-2, (n-2)/2), 0), odd n gives (0, C(n-1, (n-1)/2))."""
    if n % 2 == 0:
        half = (n - 2) // 2
        return 2 * (-1) ** half * binomial(n - 2, half), 0
    return 0, binomial(n - 1, (n - 1) // 2)


def signature_component_table(n):
    """
    Harmonic data of the spin components V_l, closed form against Kostant's formula.

        b_{k,l} = C(n,l) C(n,k) (l-k)/n        and D_Z = (-1)^k (k - l)      for k < l
        b_{k,l} = C(n,l) C(n,k+1) (k+1-l)/n    and D_Z = (-1)^k (k + 1 - l)  for k >= l
    """
    rows = []
    for l in range(n + 1):
        kostant = kostant_data(spin_component_weight(n, l), n)
        for k in range(n):
            if k < l:
                b = Fraction(binomial(n, l) * binomial(n, k) * (l - k), n)
                z = Fraction((-1) ** k * (k - l))
            else:
                b = Fraction(binomial(n, l) * binomial(n, k + 1) * (k + 1 - l), n)
                z = Fraction((-1) ** k * (k + 1 - l))
            rows.append({
                'l': l,
                'k': k,
                'b_closed': int(b),
                'z_closed': z,
                'b_kostant': kostant[k].b_k,
                'z_kostant': kostant[k].z_value,
                'matched': b == kostant[k].b_k and z == kostant[k].z_value,
            })
    return pd.DataFrame(rows, columns=['l', 'k', 'b_closed', 'z_closed', 'b_kostant', 'z_kostant', 'matched'])

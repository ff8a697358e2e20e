"""
Self-verification suite

Runs every oracle against its closed form:
1. Low-energy brute force vs Kostant data (catalog reps, n = 2..4)
2. Worked examples: Dolbeault, signature and spinor low-energy data
3. Truncated eta series vs the Hurwitz zeta closed form
4. Hermite truncation vs the closed-form sector spectrum
5. Exact Hurwitz zeta identities
6. Sign bridge between cusp asymptotics and nilmanifold eta
7. Index pipeline vs the Dolbeault and signature theorems
8. Half-line index identities on random constant systems
9. {D_Z, D_X} = 0 and the eta split of the low-energy operator
10. Fredholm predicate of the named bundles
"""

import math
import time
from fractions import Fraction

import numpy as np
import pandas as pd

import config
from cusp_index import (
    BulkTerm,
    BundleSpec,
    CuspDescription,
    ManifoldDescription,
    dolbeault_index,
    dolbeault_low_energy,
    extended_index,
    fredholm_type,
    low_energy_invariants,
    signature_component_table,
    signature_index,
    signature_low_energy_eta,
    spinor_low_energy,
)
from half_line import SpectralBC, check_cindext, index_ext, kernel_dims, random_constant_system
from heisenberg_spectrum import (
    eta_closed,
    eta_closed_series,
    eta_cusp_asymptotic,
    eta_series,
    expected_flat_dirac_spectrum,
    compare_sector_spectra,
    gamma_rep_data,
    hermite_oracle,
)
from hurwitz_zeta import hurwitz_zeta_neg
from low_energy import build_lowenergy, compare_with_kostant, eta_finite, eta_of_values, harmonic_decompose
from unitary_reps import build_rep, dolbeault_weight, kostant_data, spin_component_weight


def catalog_specs(n):
    """Representations checked against Kostant's formula for u(n)."""
    specs = [("trivial", n), ("trace_shift", ("trivial", n), Fraction(n + 1, 2))]
    specs += [("exterior", n, q) for q in range(n + 1)]
    specs.append(("spin", n))
    return specs


def random_lattice(rng, length):
    """Random divisibility chain d_1 | d_2 | ... of the given length."""
    d = [int(rng.integers(1, 4))]
    for _ in range(length - 1):
        d.append(d[-1] * int(rng.integers(1, 3)))
    return d


def random_volume(rng):
    return Fraction(int(rng.integers(-40, 41)), int(rng.integers(1, 13)))


class VerificationSuite:
    """
    Runs the oracle checks and collects pass/fail results
    """

    def __init__(self, seed=config.VERIFY_SEED, random_systems=config.VERIFY_RANDOM_SYSTEMS,
                 pipeline_draws=config.VERIFY_PIPELINE_DRAWS, max_n=4, verbose=True):
        """
        Initialize the suite

        Args:
            seed: Seed for the randomized checks
            random_systems: Number of random half-line systems
            pipeline_draws: Number of random (v, lattice list) draws per bundle and n
            max_n: Largest complex dimension for the low-energy checks
            verbose: Print progress while running
        """
        self.seed = seed
        self.random_systems = random_systems
        self.pipeline_draws = pipeline_draws
        self.max_n = max_n
        self.verbose = verbose

        # Results storage
        self.results = None
        self.metrics = None

    def _checks(self):
        return [
            (1, "Kostant oracle equivalence", self.check_kostant_oracle),
            (2, "Worked example regression", self.check_worked_examples),
            (3, "Eta series vs closed form", self.check_eta_series),
            (4, "Hermite oracle", self.check_hermite_oracle),
            (5, "Exact zeta identities", self.check_zeta_identities),
            (6, "Sign bridge", self.check_sign_bridge),
            (7, "Pipeline consistency", self.check_pipeline),
            (8, "Half-line identities", self.check_half_line),
            (9, "Anticommutator and eta split", self.check_eta_split),
            (10, "Fredholm predicate", self.check_fredholm),
        ]

    def run(self, only=None):
        """
        Run the suite

        Args:
            only: Optional collection of criterion numbers to run

        Returns:
            DataFrame with one row per criterion
        """
        rows = []
        for number, name, check in self._checks():
            if only is not None and number not in only:
                continue
            if self.verbose:
                print(f"  [{number:>2}] {name}...")
            start = time.perf_counter()
            try:
                checks, failures, detail = check()
            except (ValueError, RuntimeError, AssertionError) as e:
                checks, failures, detail = 1, 1, f"raised {type(e).__name__}: {e}"
            elapsed = time.perf_counter() - start
            rows.append({
                'criterion': number,
                'name': name,
                'checks': checks,
                'failures': failures,
                'seconds': elapsed,
                'passed': failures == 0,
                'detail': detail,
            })
            if self.verbose:
                mark = "✓" if failures == 0 else "✗"
                print(f"       {mark} {checks - failures}/{checks} ({elapsed:.1f}s) {detail}")

        self.results = pd.DataFrame(
            rows, columns=['criterion', 'name', 'checks', 'failures', 'seconds', 'passed', 'detail'])
        self._calculate_metrics()
        return self.results

    def _calculate_metrics(self):
        if self.results is None:
            return
        df = self.results
        self.metrics = {
            'criteria': len(df),
            'passed': int(df['passed'].sum()),
            'failed': int((~df['passed']).sum()),
            'checks': int(df['checks'].sum()),
            'failures': int(df['failures'].sum()),
            'seconds': float(df['seconds'].sum()),
        }

    @property
    def passed(self):
        return self.metrics is not None and self.metrics['failed'] == 0

    # ------------------------------------------------------------------
    # Criteria
    # ------------------------------------------------------------------

    def check_kostant_oracle(self):
        checks = failures = 0
        bad = []
        for n in range(2, self.max_n + 1):
            for spec in catalog_specs(n):
                comparison = compare_with_kostant(build_lowenergy(n, build_rep(spec)))
                checks += 1
                if not comparison['matched'].all():
                    failures += 1
                    bad.append(str(spec))
        return checks, failures, ("mismatch: " + "; ".join(bad)) if bad else "b_k and D_Z exact"

    def check_worked_examples(self):
        checks = failures = 0
        bad = []

        def record(ok, label):
            nonlocal checks, failures
            checks += 1
            if not ok:
                failures += 1
                bad.append(label)

        for n in range(2, 6):
            data = kostant_data(dolbeault_weight(n), n)
            expected = dolbeault_low_energy(n)
            record(tuple(d.b_k for d in data) == expected['b'], f"dolbeault b n={n}")
            record(tuple(d.z_value for d in data) == expected['z_values'], f"dolbeault z n={n}")
            record(low_energy_invariants(n, [dolbeault_weight(n)]) == (0, 0), f"dolbeault eta/ker n={n}")

        for n in range(2, 6):
            weights = [spin_component_weight(n, l) for l in range(n + 1)]
            eta, ker = low_energy_invariants(n, weights)
            record(eta == signature_low_energy_eta(n) and ker == 0, f"signature n={n}")
            record(bool(signature_component_table(n)['matched'].all()), f"signature table n={n}")

        for n in range(2, 6):
            record(low_energy_invariants(n, [[0] * n]) == spinor_low_energy(n), f"spinor n={n}")

        return checks, failures, ("mismatch: " + ", ".join(bad)) if bad else "all closed forms reproduced"

    def check_eta_series(self):
        checks = failures = 0
        worst = 0.0
        for n in (1, 2, 3):
            d = [1] * n
            for c in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
                dimV = gamma_rep_data(d, c).dimV
                s = n + 3
                estimate = eta_series(n, d, c, dimV, s=s, W_max=config.DEFAULT_W_MAX)
                closed = eta_closed_series(n, d, c, dimV, s=s)
                error = abs(estimate.value - closed)
                worst = max(worst, error)
                checks += 1
                if error > 1e-6 or error > estimate.tail_bound + 1e-12:
                    failures += 1
        return checks, failures, f"max deviation {worst:.2e}"

    def check_hermite_oracle(self):
        cutoff = math.sqrt(4 * math.pi ** 2 + 40 * math.pi)
        oracle = hermite_oracle(1, 1, levels=config.DEFAULT_HERMITE_LEVELS)
        expected = expected_flat_dirac_spectrum(1, 1, cutoff=cutoff)
        comparison = compare_sector_spectra(oracle, expected, cutoff)
        failures = int((~comparison['matched']).sum())
        asymmetric = comparison[(comparison['eigenvalue'] + 2 * math.pi).abs() <= config.HERMITE_MATCH_TOL]
        checks = len(comparison) + 1
        if len(asymmetric) != 1 or int(asymmetric['found'].iloc[0]) != 1:
            failures += 1
        return checks, failures, f"{len(comparison)} eigenvalues up to {cutoff:.4f}"

    def check_zeta_identities(self):
        checks = failures = 0
        for n in range(1, 9):
            checks += 1
            if hurwitz_zeta_neg(n, Fraction(1, 2)) != (Fraction(2) ** (1 - n) - 1) * hurwitz_zeta_neg(n, 0):
                failures += 1
            for c in (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
                checks += 1
                if hurwitz_zeta_neg(n, 1 - c) != (-1) ** n * hurwitz_zeta_neg(n, c):
                    failures += 1
        return checks, failures, "exact rational equality"

    def check_sign_bridge(self):
        rng = np.random.default_rng(self.seed)
        checks = failures = 0
        for n in range(2, 6):
            for c in (Fraction(0), Fraction(1, 2), Fraction(1, 3)):
                for _ in range(5):
                    d = random_lattice(rng, n - 1)
                    dimV = gamma_rep_data(d, c).dimV * int(rng.integers(1, 4))
                    checks += 1
                    if eta_cusp_asymptotic(n, d, c, dimV) != -eta_closed(n - 1, d, c, dimV, 0):
                        failures += 1
        return checks, failures, "exact rational equality"

    def check_pipeline(self):
        rng = np.random.default_rng(self.seed + 1)
        checks = failures = 0
        cases = [("dolbeault", n) for n in (2, 3, 4)] + [("signature", n) for n in (2, 4)]
        for kind, n in cases:
            bundle = BundleSpec(kind)
            for _ in range(self.pipeline_draws):
                v = random_volume(rng)
                lattices = [random_lattice(rng, n - 1) for _ in range(int(rng.integers(0, 4)))]
                cusps = [CuspDescription(n, d, bundle) for d in lattices]
                M = ManifoldDescription(n, bundle, BulkTerm("volume_ratio", v), cusps)
                gammas = [math.prod(d) for d in lattices]
                if kind == "dolbeault":
                    expected = dolbeault_index(n, v, gammas)
                else:
                    expected = signature_index(n, v, gammas, len(cusps))
                checks += 1
                if extended_index(M) != expected:
                    failures += 1
        return checks, failures, f"{len(cases)} bundle/dimension cases"

    def check_half_line(self):
        rng = np.random.default_rng(self.seed + 2)
        checks = failures = 0
        below_zero = SpectralBC.below(0.0)
        for i in range(self.random_systems):
            graded = i % 2 == 1
            system = random_constant_system(int(rng.integers(1, 7)), rng, graded=graded,
                                            zero_modes=int(rng.integers(0, 2)))
            lam = float(rng.integers(0, 8)) / 2
            report = check_cindext(system, lam, graded=graded)
            dims = kernel_dims(system, below_zero)
            cokernel = kernel_dims(system, below_zero.adjoint()).l2_kernel
            checks += 1
            if not report.holds or index_ext(system, below_zero) != 0 or dims.ext_kernel != 0 or cokernel != 0:
                failures += 1
        return checks, failures, "check_cindext and H_{<0} index"

    def check_eta_split(self):
        checks = failures = 0
        for n in range(2, self.max_n + 1):
            for spec in catalog_specs(n):
                op = build_lowenergy(n, build_rep(spec))
                decomposition = harmonic_decompose(op)
                checks += 1
                if eta_finite(op.dle) != eta_of_values(decomposition.z_values) or eta_finite(op.dx) != 0:
                    failures += 1
        return checks, failures, "anticommutator checked at construction"

    def check_fredholm(self):
        checks = failures = 0
        cases = [
            (BundleSpec.dolbeault(), n, True) for n in (2, 3, 4)
        ] + [
            (BundleSpec.signature(), n, True) for n in (2, 4)
        ] + [
            (BundleSpec.spinor(), n, False) for n in (3, 5)
        ]
        for bundle, n, expected in cases:
            cusps = [CuspDescription(n, [1] * (n - 1), bundle)]
            M = ManifoldDescription(n, bundle, BulkTerm("integral", Fraction(0)), cusps)
            checks += 1
            if fredholm_type(M) != expected:
                failures += 1
        return checks, failures, "dolbeault/signature Fredholm, odd spinors not"

    def print_summary(self):
        """Print verification summary"""
        if self.metrics is None:
            print("No verification results available. Run run() first.")
            return

        print("=" * 70)
        print("VERIFICATION SUMMARY")
        print("=" * 70)
        print()

        print(f"{'Criterion':<40} {'Checks':>8} {'Failures':>9} {'Time':>8}  ")
        print("-" * 70)
        for row in self.results.itertuples(index=False):
            mark = "✓" if row.passed else "✗"
            label = f"{row.criterion:>2}. {row.name}"
            print(f"{label:<40} {row.checks:>8} {row.failures:>9} {row.seconds:>7.1f}s {mark}")

        print()
        print(f"Criteria passed: {self.metrics['passed']}/{self.metrics['criteria']}")
        print(f"Total checks: {self.metrics['checks']} ({self.metrics['failures']} failures)")
        print(f"Total time: {self.metrics['seconds']:.1f}s")

        failed = self.results[~self.results['passed']]
        if len(failed) > 0:
            print()
            print("FAILURES")
            print("-" * 70)
            for row in failed.itertuples(index=False):
                print(f"{row.criterion:>2}. {row.name}: {row.detail}")

        print()
        print("=" * 70)

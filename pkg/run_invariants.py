"""
Command-line front end for the cusp invariant toolkit

Subcommands:
- eta:      exact eta function of a Heisenberg nilmanifold (optional series check)
- corr:     per-cusp correction terms
- index:    extended and L^2 indices of a manifold description
- spectrum: squared Dirac spectrum below a cutoff, or one sector's Dirac spectrum
- verify:   run the self-verification suite
- kostant:  Kostant data (b_k, D_Z values) of a highest weight

Exit codes: 0 success, 1 invalid input, 2 verification failure or an internal
consistency check that did not hold.
"""

import argparse
import json
import sys
from fractions import Fraction

import pandas as pd

import config
from cusp_index import BundleSpec, CuspDescription, ManifoldDescription, correction_table, index_report
from heisenberg_spectrum import (
    HeisenbergMetric,
    as_lattice,
    compare_sector_spectra,
    dirac_sq_spectrum,
    eta_closed,
    eta_closed_series,
    eta_series,
    expected_flat_dirac_spectrum,
    gamma_rep_data,
    hermite_oracle,
    sector_multiplicity,
)
from hurwitz_zeta import format_rational, format_weight, parse_rational
from manifold_config import load_manifold
from unitary_reps import DominantWeight, kostant_data
from verification import VerificationSuite


class InputError(Exception):
    """Invalid command-line input (exit code 1)"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def format_float(value):
    return f"{value:.{config.SIGNIFICANT_DIGITS}g}"


def _json_float(value):
    return float(format_float(value))


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return _json_float(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def dump_json(payload):
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False)


def _frame_records(df):
    return [dict(zip(df.columns, row)) for row in df.itertuples(index=False)]


def _cell(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_cell(v) for v in value) + ")"
    return str(value)


def render_table(df):
    """Fixed-width text table of a DataFrame with exact rationals as strings."""
    cells = [[_cell(v) for v in row] for row in df.itertuples(index=False)]
    widths = [max([len(str(c))] + [len(r[i]) for r in cells]) for i, c in enumerate(df.columns)]
    lines = [" ".join(f"{str(c):>{w}}" for c, w in zip(df.columns, widths))]
    lines.append("-" * len(lines[0]))
    lines += [" ".join(f"{v:>{w}}" for v, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def parse_float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated numbers, got {text!r}") from None


def parse_rational_list(text):
    return [parse_rational(x) for x in text.split(",") if x.strip()]


def _lattice(args, length):
    d = parse_int_list(args.type) if args.type else [1] * length
    lattice = as_lattice(d)
    if lattice.n != length:
        raise ValueError(f"--type must have {length} entries, got {lattice.d}")
    return lattice


def _metric(args, n):
    if not args.metric:
        return None
    values = parse_float_list(args.metric)
    if len(values) != n + 1:
        raise ValueError(f"--metric needs n+1={n + 1} values r_1,...,r_n,r, got {len(values)}")
    return HeisenbergMetric(values[:-1], values[-1])


def _dimV(args, lattice, twist):
    if args.pi_dim < 1:
        raise ValueError(f"--pi-dim must be a positive integer, got {args.pi_dim}")
    return gamma_rep_data(lattice, twist).dimV * args.pi_dim


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_eta(args):
    n = args.heis_dim
    lattice = _lattice(args, n)
    twist = parse_rational(args.twist)
    metric = _metric(args, n)
    dimV = _dimV(args, lattice, twist)
    s = int(args.at_s)
    value = eta_closed(n, lattice, twist, dimV, s)

    payload = {'n': n, 'd': list(lattice.d), 'twist': twist, 'dimV': dimV, 's': s, 'eta': value}
    if args.series_check:
        s_check, w_max = float(args.series_check[0]), int(args.series_check[1])
        estimate = eta_series(n, lattice, twist, dimV, metric, s_check, w_max)
        closed = eta_closed_series(n, lattice, twist, dimV, metric, s_check)
        payload['series_check'] = {
            's': s_check,
            'W_max': w_max,
            'series': estimate.value,
            'tail_bound': estimate.tail_bound,
            'closed': closed,
            'deviation': abs(estimate.value - closed),
        }

    if args.json:
        print(dump_json(payload))
        return 0
    print(format_rational(value))
    if args.series_check:
        check = payload['series_check']
        print(f"{'series (W_max=' + str(check['W_max']) + ')':<24} {format_float(check['series'])}")
        print(f"{'closed form':<24} {format_float(check['closed'])}")
        print(f"{'tail bound':<24} {format_float(check['tail_bound'])}")
        print(f"{'deviation':<24} {format_float(check['deviation'])}")
    return 0


def _inline_cusp(args):
    if args.n is None:
        raise ValueError("corr needs --config FILE or --n with --type and --bundle")
    weights = [parse_rational_list(w) for w in args.weight] if args.weight else None
    bundle = BundleSpec(args.bundle, args.twist, weights, args.dimV)
    return CuspDescription(args.n, _lattice(args, args.n - 1), bundle)


def cmd_corr(args):
    if args.config:
        table = correction_table(load_manifold(args.config))
    else:
        cusp = _inline_cusp(args)
        table = correction_table(ManifoldDescription(cusp.n, cusp.bundle, None, [cusp]))
    if args.json:
        print(dump_json(_frame_records(table)))
    else:
        print(render_table(table))
    return 0


def cmd_index(args):
    M = load_manifold(args.config)
    h_diff = parse_rational(args.h_diff) if args.h_diff is not None else None
    report = index_report(M, h_diff)
    payload = {
        'n': M.n,
        'bundle': M.bundle.kind.value,
        'ends': M.ends,
        'extended': report.extended,
        'l2': report.l2,
        'fredholm': report.fredholm,
        'kernel_total': report.kernel_total,
        'h_plus': report.h_plus,
        'h_minus': report.h_minus,
    }
    if args.json:
        print(dump_json(payload))
        return 0

    def show(value):
        return "unknown (supply --h-diff)" if value is None else format_rational(value)

    print(f"{'Extended index':<24} {format_rational(report.extended)}")
    print(f"{'L2 index':<24} {show(report.l2)}")
    print(f"{'Fredholm type':<24} {str(report.fredholm).lower()}")
    print(f"{'Low-energy kernels':<24} {report.kernel_total}")
    print(f"{'h+ / h-':<24} {show(report.h_plus)} / {show(report.h_minus)}")
    return 0


def cmd_spectrum(args):
    n = args.heis_dim
    lattice = _lattice(args, n)
    twist = parse_rational(args.twist)
    metric = _metric(args, n)
    dimV = _dimV(args, lattice, twist)

    if args.sector is not None:
        w = parse_rational(args.sector)
        if (w - twist).denominator != 1:
            raise ValueError(f"sector w={format_rational(w)} is not congruent to the twist mod 1")
        multiplicity = sector_multiplicity(lattice, dimV, w)
        df = expected_flat_dirac_spectrum(n, w, metric, args.cutoff, multiplicity)
        if args.oracle:
            oracle = hermite_oracle(n, w, metric, args.levels, multiplicity)
            df = compare_sector_spectra(oracle, df, args.cutoff)
    else:
        df = dirac_sq_spectrum(n, lattice, twist, metric, args.cutoff, dimV)
        df = df.assign(w=[format_rational(w) for w in df['w']])

    if args.csv:
        out = df.copy()
        for column in out.columns:
            if out[column].dtype == float:
                out[column] = out[column].map(format_float)
        out.to_csv(sys.stdout, index=False)
    elif args.json:
        print(dump_json(_frame_records(df)))
    else:
        print(render_table(df))
    if args.sector is not None and args.oracle and not df['matched'].all():
        print("error: Hermite oracle disagrees with the closed-form spectrum", file=sys.stderr)
        return 2
    return 0


def cmd_verify(args):
    only = set(parse_int_list(args.only)) if args.only else None
    suite = VerificationSuite(seed=args.seed, verbose=not args.json)
    if args.quick:
        suite.random_systems = 40
        suite.pipeline_draws = 20
        suite.max_n = 3
    results = suite.run(only=only)
    if args.json:
        print(dump_json(_frame_records(results.drop(columns=['seconds']))))
    else:
        print()
        suite.print_summary()
    return 0 if suite.passed else 2


def cmd_kostant(args):
    weight = DominantWeight(parse_rational_list(args.weight))
    data = kostant_data(weight, args.n)
    table = pd.DataFrame([d._asdict() for d in data], columns=['k', 'b_k', 'z_value', 'kernel_flag'])
    if args.json:
        print(dump_json({'weight': format_weight(weight), 'n': args.n, 'rows': _frame_records(table)}))
    else:
        print(render_table(table))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="run_invariants", description="Eta invariants and cusp index corrections")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def heisenberg_flags(p):
        p.add_argument("--heis-dim", type=int, required=True, dest="heis_dim",
                       help="Heisenberg dimension parameter n (G_n has dimension 2n+1)")
        p.add_argument("--type", default=None, help="Lattice type d_1,...,d_n (default all ones)")
        p.add_argument("--twist", default="0", help="Twist parameter c as p/q, 0 <= c < 1")
        p.add_argument("--metric", default=None, help="Metric r_1,...,r_n,r (default unit)")
        p.add_argument("--pi-dim", type=int, default=1, dest="pi_dim",
                       help="Coefficient dimension multiplying the Gamma-representation dimension")

    p = sub.add_parser("eta", help="Exact eta function at an integer s <= 0")
    heisenberg_flags(p)
    p.add_argument("--at-s", type=int, default=0, dest="at_s", help="Integer s <= 0 (default 0)")
    p.add_argument("--series-check", nargs=2, metavar=("S", "WMAX"), dest="series_check",
                   help="Compare the lattice sum with the closed form at real s > n + 1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("corr", help="Per-cusp correction terms")
    p.add_argument("--config", default=None, help="Manifold JSON config")
    p.add_argument("--n", type=int, default=None, help="Complex dimension (inline cusp)")
    p.add_argument("--type", default=None, help="Lattice type d_1,...,d_{n-1} (inline cusp)")
    p.add_argument("--bundle", default="spinor", choices=["dolbeault", "signature", "spinor", "custom"])
    p.add_argument("--twist", default="0")
    p.add_argument("--weight", action="append", default=None,
                   help="Highest weight of a custom component, comma-separated (repeatable)")
    p.add_argument("--dimV", type=int, default=None, help="dimV override for custom bundles")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_corr)

    p = sub.add_parser("index", help="Extended and L^2 indices")
    p.add_argument("--config", required=True, help="Manifold JSON config")
    p.add_argument("--h-diff", default=None, dest="h_diff", help="h+ - h- as p/q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("spectrum", help="Dirac spectra below a cutoff")
    heisenberg_flags(p)
    p.add_argument("--cutoff", type=float, default=100.0,
                   help="Largest Dbar^2 eigenvalue (or |Dirac eigenvalue| with --sector)")
    p.add_argument("--sector", default=None, help="List the Dirac spectrum of the sector rho_w only")
    p.add_argument("--oracle", action="store_true", help="With --sector: compare against Hermite truncation")
    p.add_argument("--levels", type=int, default=config.DEFAULT_HERMITE_LEVELS)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="Run the self-verification suite")
    p.add_argument("--seed", type=int, default=config.VERIFY_SEED)
    p.add_argument("--only", default=None, help="Comma-separated criterion numbers")
    p.add_argument("--quick", action="store_true", help="Smaller random samples, n <= 3")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kostant", help="Kostant data of a highest weight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", required=True, help="Highest weight, comma-separated rationals")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kostant)

    return parser


def main(argv=None):
    """Run the CLI and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (InputError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except RuntimeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())

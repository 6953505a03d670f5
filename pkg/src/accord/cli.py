"""``accord`` command-line front end.

Exit codes: 0 success, 2 invalid input state, 3 optimizer did not
converge, 4 a verification check failed.
"""

import argparse
import csv
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .auto import HeuristicOptimumWarning, detect_family, dominant_pure_state, omcp
from .errors import NoConvergence, StateError
from .exact import Method, accord_from_omcp
from .game import GameConfig, simulate_game
from .io import load_state
from .measures import (
    DiscordConfig,
    chsh_parameter,
    chsh_violated,
    concurrence,
    discord_isotropic,
    discord_min_side,
    discord_numerical,
    j_function,
    mutual_information,
    singlet_fraction_numerical,
    singlet_fraction_pure,
)
from .minimax import OptimizerConfig
from .sampling import sample_states
from .states import make_isotropic, schmidt_decompose
from .verify import run_suite

EXIT_OK, EXIT_BAD_STATE, EXIT_NO_CONVERGENCE, EXIT_VERIFY_FAILED = 0, 2, 3, 4

SCAN_COLUMNS = ("p", "accord", "concurrence", "singlet_fraction", "discord", "chsh_violated")
SCATTER_COLUMNS = ("accord", "concurrence", "discord", "j_of_accord", "accord_minus_concurrence")


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    return f"{float(x):.12g}"


def write_csv(rows, columns, out=None):
    """Header plus rows, LF line endings, 12 significant digits; blank for not applicable."""
    fh = open(out, "w", newline="") if out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
    finally:
        if out:
            fh.close()


def _emit_json(obj, out=None):
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(path):
    try:
        return load_state(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise StateError(f"cannot read state file {path}: {exc}") from exc


def _discord(rho, side, seed):
    if side == "min":
        return discord_min_side(rho, DiscordConfig(seed=seed))
    return discord_numerical(rho, DiscordConfig(measured_side=side, seed=seed))


# -------------------------------------------------------------------------
# commands


def _entry(result):
    return {"value": float(result.value), "method": Method(result.method).value}


def _closed(value):
    return {"value": float(value), "method": Method.CLOSED_FORM.value}


def cmd_compute(args):
    rho = _load(args.state)
    cfg = OptimizerConfig(seed=args.seed)
    side = args.measured_side
    family = detect_family(rho)
    o = omcp(rho, "auto", cfg)
    report = {
        "d": rho.d,
        "family": family,
        "omcp": _entry(o),
        "accord": {"value": accord_from_omcp(o.value, rho.d), "method": Method(o.method).value},
        "concurrence": None,
        "discord": None,
        "singlet_fraction": None,
        "chsh": None,
        "mutual_information": _closed(mutual_information(rho)),
    }
    if family == "pure":
        report["singlet_fraction"] = _closed(singlet_fraction_pure(schmidt_decompose(dominant_pure_state(rho))))
    else:
        report["singlet_fraction"] = _entry(singlet_fraction_numerical(rho, cfg))
    if rho.d == 2:
        report["concurrence"] = _closed(concurrence(rho))
        report["discord"] = {**_entry(_discord(rho, side, args.seed)), "measured_side": side}
        report["chsh"] = {**_closed(chsh_parameter(rho)), "violated": chsh_violated(rho)}
    _emit_json(report, args.out)
    return EXIT_OK


def scan_isotropic_rows(d, steps):
    if steps < 2:
        raise ValueError("steps must be at least 2")
    cfg = OptimizerConfig()
    rows = []
    for p in np.linspace(0.0, 1.0, steps):
        rho = make_isotropic(p, d)
        row = dict.fromkeys(SCAN_COLUMNS)
        row["p"] = p
        row["accord"] = accord_from_omcp(omcp(rho, "closed_form").value, d)
        row["singlet_fraction"] = singlet_fraction_numerical(rho, cfg).value
        if d == 2:
            row["concurrence"] = concurrence(rho)
            row["discord"] = discord_isotropic(p)
            row["chsh_violated"] = chsh_violated(rho)
        rows.append(row)
    return rows


def cmd_scan_isotropic(args):
    write_csv(scan_isotropic_rows(args.d, args.steps), SCAN_COLUMNS, args.out)
    return EXIT_OK


def scatter_row(rho, side="min", seed=0):
    a = accord_from_omcp(omcp(rho, "closed_form").value, 2)
    c = concurrence(rho)
    return {
        "accord": a,
        "concurrence": c,
        "discord": _discord(rho, side, seed).value,
        "j_of_accord": j_function(a),
        "accord_minus_concurrence": a - c,
    }


def scatter_rows(family, count, seed=0, side="min", jobs=1):
    """One row per sampled state, in index order whatever the pool's completion order."""
    states = sample_states(family, count, seed)
    work = partial(scatter_row, side=side, seed=seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(work, states, chunksize=max(1, count // (4 * jobs))))
    return [work(s) for s in states]


def cmd_scatter(args):
    rows = scatter_rows(args.family, args.count, args.seed, args.measured_side, args.jobs)
    write_csv(rows, SCATTER_COLUMNS, args.out)
    return EXIT_OK


def cmd_game(args):
    rho = _load(args.state)
    result = simulate_game(rho, GameConfig(n_b=args.nb, n_a=args.na, shots=args.shots, seed=args.seed))
    _emit_json(
        {
            "estimate": result.estimate,
            "accord_estimate": accord_from_omcp(result.estimate, rho.d),
            "per_b_maxima": result.per_b_maxima,
            "empirical_distribution": result.empirical_distribution,
        },
        args.out,
    )
    return EXIT_OK


def cmd_verify(args):
    checks = run_suite(args.suite, args.seed)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


# -------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="accord", description="Accord and companion correlation measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--seed", type=int, default=0)
        return p

    p = add("compute", cmd_compute, "all measures of one state, as JSON")
    p.add_argument("--state", required=True, help="JSON state file")
    p.add_argument("--measured-side", choices=("A", "B", "min"), default="A")
    p.add_argument("--out")

    p = add("scan-isotropic", cmd_scan_isotropic, "measures along the isotropic family, as CSV")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out")

    p = add("scatter", cmd_scatter, "accord, concurrence and discord of random two-qubit states, as CSV")
    p.add_argument("--family", choices=("bell_diagonal", "general_i", "general_ii"), required=True)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--measured-side", choices=("A", "B", "min"), default="min")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out")

    p = add("game", cmd_game, "Monte Carlo measurement game, as JSON")
    p.add_argument("--state", required=True)
    p.add_argument("--na", type=int, default=64)
    p.add_argument("--nb", type=int, default=64)
    p.add_argument("--shots", type=int, default=1000, help="0 uses exact coincidence probabilities")
    p.add_argument("--out")

    p = add("verify", cmd_verify, "run a self-check suite")
    p.add_argument("--suite", choices=("bounds", "bell", "oracle", "identities", "all"), default="all")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", HeuristicOptimumWarning)
            return args.func(args)
    except NoConvergence as exc:
        best = getattr(exc.result, "value", exc.result)
        print(f"error: optimizer did not converge: {exc} (best value {best})", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except StateError as exc:
        print(f"error: invalid input state: {exc}", file=sys.stderr)
        return EXIT_BAD_STATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_STATE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Commands: ``theory``, ``simulate``, ``compare``, ``oracle``, ``fit``.

Effective settings are resolved as built-in defaults, then the JSON file
given by ``--config``, then explicit flags.  Every output starts with the
resolved configuration (a ``# config: {...}`` line in CSV, a ``"config"``
member in JSON), so a run can be repeated from its output alone.  The
thread count is an execution detail that cannot change results and is not
echoed.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import io
import json
import os
import sys

import numpy as np

from .errors import ConvergenceError, DomainError, RegimeError
from .experiments import MCSummary, compare_theory, default_ranks, degree_histogram, run_monte_carlo
from .graphsim import GraphConfig, Source
from .oracle import oracle_order_stat_moment
from .powerlaw import beta_decay_curve, fit_shifted_power_law
from .sampling import BetaParams, SeedSpec
from .theory import RankSpec, Side, predict_extreme

EXIT_USAGE = 2
EXIT_NUMERIC = 3

DEFAULTS = {
    "theory": {"a": None, "b": None, "n": None, "side": "max", "ranks": "1..10", "format": "csv"},
    "simulate": {
        "a": None, "b": None, "n": None, "trials": 100, "seed": 0, "source": "graph",
        "side": "max", "ranks": None, "format": "csv", "threads": None,
    },
    "compare": {"format": "csv"},
    "oracle": {"a": None, "b": None, "n": None, "j": None, "m": 1, "format": "csv"},
    "fit": {"format": "json", "s_max": None, "allow_degenerate": False},
}

# keys that never appear in the echoed configuration
_EXECUTION_ONLY = {"threads", "out", "config", "format", "histogram"}


class UsageError(Exception):
    pass


def fmt_real(x):
    """17 significant digits, enough to round-trip a double."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def parse_ranks(text):
    """Parse ``"1..10,20,50"`` into a sorted list of unique positive ints."""
    out = set()
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo, hi = int(lo), int(hi)
            if lo > hi:
                raise ValueError(f"empty range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            out.add(int(part))
    if not out or min(out) < 1:
        raise ValueError("ranks must be positive integers")
    return sorted(out)


# --- argument handling -------------------------------------------------------


def _common(p, *names):
    flags = {
        "a": dict(type=float, help="left-tail Beta shape a > 0"),
        "b": dict(type=float, help="right-tail Beta shape b > 0"),
        "n": dict(type=int, help="number of nodes"),
        "seed": dict(type=int, help="base seed (64-bit unsigned)"),
        "trials": dict(type=int, help="number of Monte Carlo trials"),
        "ranks": dict(help="rank list, e.g. '1..10,20,50'"),
        "side": dict(choices=["max", "min"], help="rank from the largest or the smallest"),
        "source": dict(choices=["graph", "weights"], help="graph degrees or raw weights"),
        "threads": dict(type=int, help="worker threads (default: $DEGX_THREADS or 1)"),
    }
    for name in names:
        p.add_argument(f"--{name}", default=None, **flags[name])
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--config", default=None, help="JSON file of settings; flags override it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="degx", description="Extreme normalized degrees of Beta/Chung-Lu random graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("theory", help="asymptotic means/variances of extreme ranks")
    _common(p, "a", "b", "n", "side", "ranks")

    p = sub.add_parser("simulate", help="Monte Carlo order statistics")
    _common(p, "a", "b", "n", "seed", "trials", "ranks", "side", "source", "threads")
    p.add_argument("--histogram", default=None, help="also write a 50-bin degree histogram CSV here")

    p = sub.add_parser("compare", help="join a simulate summary with the theory")
    p.add_argument("summary", help="summary file written by 'simulate'")
    _common(p, "a", "b", "n", "side")

    p = sub.add_parser("oracle", help="quadrature moment of an exact order statistic")
    _common(p, "a", "b", "n")
    p.add_argument("--j", type=int, default=None, help="rank counted from the smallest")
    p.add_argument("--m", type=int, default=None, help="moment order (default 1)")

    p = sub.add_parser("fit", help="fit c/(s+k)^gamma to a rank,mean CSV")
    p.add_argument("input", help="CSV with columns rank,mean")
    p.add_argument("--s-max", dest="s_max", type=float, default=None)
    p.add_argument("--allow-degenerate", dest="allow_degenerate", action="store_true", default=None)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    return parser


def resolve(args):
    """Merge defaults, ``--config`` file and explicit flags."""
    cmd = args.command
    eff = dict(DEFAULTS[cmd])
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"argument --config: cannot read {args.config!r}: {exc}")
        if not isinstance(loaded, dict):
            raise UsageError("argument --config: file must hold a JSON object")
        eff.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        eff[key] = value
    eff["command"] = cmd
    return eff


def _require(eff, *names):
    for name in names:
        if eff.get(name) is None:
            raise UsageError(f"argument --{name}: required (flag or --config)")


def _params(eff):
    _require(eff, "a", "b")
    for name in ("a", "b"):
        try:
            v = float(eff[name])
        except (TypeError, ValueError):
            raise UsageError(f"argument --{name}: not a number: {eff[name]!r}")
        if not v > 0 or v == float("inf"):
            raise UsageError(f"argument --{name}: must be finite and > 0, got {eff[name]!r}")
        eff[name] = v
    return BetaParams(eff["a"], eff["b"])


def _positive_int(eff, name, minimum=1):
    _require(eff, name)
    try:
        v = int(eff[name])
    except (TypeError, ValueError):
        raise UsageError(f"argument --{name}: not an integer: {eff[name]!r}")
    if v != eff[name] or v < minimum:
        raise UsageError(f"argument --{name}: must be an integer >= {minimum}, got {eff[name]!r}")
    eff[name] = v
    return v


def _ranks(eff, n):
    text = eff.get("ranks")
    if text is None:
        ranks = default_ranks(n)
        eff["ranks"] = ",".join(map(str, ranks))
        return ranks
    try:
        ranks = parse_ranks(text)
    except ValueError as exc:
        raise UsageError(f"argument --ranks: {exc}")
    if ranks[-1] > n:
        raise UsageError(f"argument --ranks: rank {ranks[-1]} exceeds n={n}")
    return ranks


def _side(eff):
    if eff.get("side") not in ("max", "min"):
        raise UsageError(f"argument --side: must be 'max' or 'min', got {eff.get('side')!r}")
    return Side(eff["side"])


def _echo(eff):
    return {k: eff[k] for k in sorted(eff) if k not in _EXECUTION_ONLY}


# --- output ------------------------------------------------------------------


def _write_table(eff, columns, rows, extra=None):
    buf = io.StringIO(newline="")
    if eff["format"] == "json":
        doc = {"config": _echo(eff)}
        if extra:
            doc.update(extra)
        doc["rows"] = [dict(zip(columns, r)) for r in rows]
        buf.write(json.dumps(doc, indent=2, sort_keys=False))
        buf.write("\n")
    else:
        buf.write("# config: " + json.dumps(_echo(eff), sort_keys=True) + "\n")
        if extra:
            buf.write("# diagnostics: " + json.dumps(extra, sort_keys=True) + "\n")
        buf.write(",".join(columns) + "\n")
        for r in rows:
            buf.write(",".join(_cell(v) for v in r) + "\n")
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_real(v)
    return str(v)


def _emit(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------


def cmd_theory(eff):
    params = _params(eff)
    n = _positive_int(eff, "n", 2)
    side = _side(eff)
    ranks = _ranks(eff, n)
    rows = []
    for k in ranks:
        try:
            pred = predict_extreme(RankSpec(k, side), n, params)
        except DomainError as exc:
            raise UsageError(f"argument --ranks: {exc}")
        decay = beta_decay_curve(k, n, params) if side is Side.MAX else None
        rows.append((
            k, side.value, n, params.a, params.b, pred.mean_beta_ratio, pred.mean_simplified,
            pred.var_beta_ratio, pred.var_simplified, decay,
        ))
    cols = ["rank", "side", "n", "a", "b", "mean_beta_ratio", "mean_simplified",
            "var_beta_ratio", "var_simplified", "beta_decay"]
    return _write_table(eff, cols, rows)


SUMMARY_COLUMNS = ["rank", "empirical_mean", "empirical_var", "empirical_stderr"]


def cmd_simulate(eff):
    params = _params(eff)
    n = _positive_int(eff, "n", 2)
    trials = _positive_int(eff, "trials", 2)
    side = _side(eff)
    ranks = _ranks(eff, n)
    if eff.get("source") not in ("graph", "weights"):
        raise UsageError(f"argument --source: must be 'graph' or 'weights', got {eff.get('source')!r}")
    seed = eff.get("seed")
    try:
        seed_spec = SeedSpec(int(seed))
    except (TypeError, ValueError, DomainError) as exc:
        raise UsageError(f"argument --seed: {exc}")
    eff["seed"] = seed_spec.base_seed
    threads = eff.get("threads")
    if threads is None:
        env = os.environ.get("DEGX_THREADS")
        try:
            threads = int(env) if env else 1
        except ValueError:
            raise UsageError(f"environment DEGX_THREADS: not an integer: {env!r}")
    if threads < 1:
        raise UsageError(f"argument --threads: must be >= 1, got {threads}")

    config = GraphConfig(n=n, params=params, seed=seed_spec)
    summary = run_monte_carlo(config, trials, ranks, side, Source(eff["source"]), threads=threads)
    extra = None
    if summary.mean_clamp_fraction is not None:
        extra = {"mean_clamp_fraction": summary.mean_clamp_fraction}
    rows = list(zip(summary.ranks, summary.empirical_mean, summary.empirical_var, summary.empirical_stderr))
    if eff.get("histogram"):
        edges, dens, beta = degree_histogram(config, trials, eff["source"])
        hist_rows = list(zip(edges[:-1], edges[1:], dens, beta))
        _emit(
            _write_table(dict(eff, format="csv"), ["bin_lo", "bin_hi", "density", "beta_density"], hist_rows),
            eff["histogram"],
        )
    return _write_table(eff, SUMMARY_COLUMNS, rows, extra)


def load_summary(path):
    """Read a summary written by ``simulate`` (CSV or JSON) back into an :class:`MCSummary`."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        cfg = doc["config"]
        rows = [[r[c] for c in SUMMARY_COLUMNS] for r in doc["rows"]]
    else:
        cfg = None
        rows = []
        header = None
        for line in text.splitlines():
            if line.startswith("# config: "):
                cfg = json.loads(line[len("# config: "):])
            elif line.startswith("#") or not line.strip():
                continue
            elif header is None:
                header = line.split(",")
            else:
                rec = dict(zip(header, line.split(",")))
                rows.append([rec[c] for c in SUMMARY_COLUMNS])
        if cfg is None:
            raise ValueError("summary CSV lacks its '# config:' line")
    arr = np.array(rows, dtype=float).reshape(-1, 4)
    return cfg, MCSummary(
        trials=int(cfg["trials"]),
        n=int(cfg["n"]),
        params=BetaParams(cfg["a"], cfg["b"]),
        side=Side(cfg["side"]),
        ranks=tuple(int(k) for k in arr[:, 0]),
        empirical_mean=arr[:, 1],
        empirical_var=arr[:, 2],
        empirical_stderr=arr[:, 3],
        source=Source(cfg["source"]),
        base_seed=int(cfg["seed"]),
    )


def cmd_compare(eff):
    try:
        cfg, summary = load_summary(eff["summary"])
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"argument summary: cannot read {eff['summary']!r}: {exc}")
    merged = dict(cfg)
    for key in ("a", "b", "n", "side"):
        if eff.get(key) is not None:
            merged[key] = eff[key]
    merged.update(command="compare", summary=eff["summary"], format=eff["format"])
    params = _params(merged)
    n = _positive_int(merged, "n", 2)
    side = _side(merged)
    summary = MCSummary(**{**summary.__dict__, "params": params, "n": n, "side": side})
    try:
        rows = compare_theory(summary)
    except DomainError as exc:
        raise UsageError(f"argument --ranks: {exc}")
    cols = ["rank", "empirical_mean", "predicted_mean_beta_ratio", "predicted_mean_simplified",
            "abs_error", "rel_tail_error", "abs_error_beta_ratio", "rel_tail_error_beta_ratio"]
    return _write_table(merged, cols, [tuple(getattr(r, c) for c in cols) for r in rows])


def cmd_oracle(eff):
    params = _params(eff)
    n = _positive_int(eff, "n", 1)
    j = _positive_int(eff, "j", 1)
    m = _positive_int(eff, "m", 1)
    if j > n:
        raise UsageError(f"argument --j: must be <= n={n}, got {j}")
    try:
        value = oracle_order_stat_moment(j, n, params, m)
    except DomainError as exc:
        raise UsageError(f"argument --n: {exc}")
    return _write_table(eff, ["j", "n", "m", "value"], [(j, n, m, value)])


def _read_rank_means(path):
    ranks, means = [], []
    with open(path) as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cells = [c.strip() for c in line.split(",")]
            if header is None:
                header = cells
                if "rank" not in header or "mean" not in header:
                    raise ValueError("header must name columns 'rank' and 'mean'")
                continue
            rec = dict(zip(header, cells))
            ranks.append(float(rec["rank"]))
            means.append(float(rec["mean"]))
    return ranks, means


def cmd_fit(eff):
    try:
        ranks, means = _read_rank_means(eff["input"])
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"argument input: cannot read {eff['input']!r}: {exc}")
    try:
        fit = fit_shifted_power_law(ranks, means, s_max=eff.get("s_max"))
    except DomainError as exc:
        raise UsageError(f"argument input: {exc}")
    if fit.degenerate and not eff.get("allow_degenerate"):
        raise ConvergenceError(
            "degenerate fit (exponent unidentifiable); pass --allow-degenerate to accept it"
        )
    cols = ["c", "s", "gamma", "sse", "degenerate"]
    vals = (fit.c, fit.s, fit.gamma, fit.sse, fit.degenerate)
    if eff["format"] == "json":
        doc = {"config": _echo(eff), **dict(zip(cols, vals))}
        return json.dumps(doc, indent=2) + "\n"
    return _write_table(eff, cols, [vals])


COMMANDS = {
    "theory": cmd_theory,
    "simulate": cmd_simulate,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
    "fit": cmd_fit,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        eff = resolve(args)
        text = COMMANDS[args.command](eff)
        _emit(text, eff.get("out"))
    except UsageError as exc:
        parser.error(str(exc))
    except (ConvergenceError, RegimeError) as exc:
        print(f"degx: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())

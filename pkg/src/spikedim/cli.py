"""Command-line frontend.

Commands
--------
estimate     estimate the signal dimension of a CSV data matrix
test         run a single subsphericity test at a chosen dimension
simulate     run Monte Carlo studies driven by a config file
feasibility  classify growth exponents; optionally rasterize the region

Exit codes: 0 success, 2 input error (CSV/config/flags), 3 numerical
degeneracy.  Every command accepts ``--config FILE`` with flat ``key=value``
lines (or a flat JSON object) mirroring flag names; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .dataio import read_data_matrix
from .errors import (
    ConfigError,
    DegenerateTrailingBlock,
    InsufficientDf,
    InvalidExponent,
    InvalidModel,
    KOutOfRange,
    NonFiniteInput,
    SpikedimError,
    TooFewRows,
)
from .estimator import (
    AlphaLevel,
    EstimatorConfig,
    Strategy,
    Threshold,
    estimate_dimension,
    threshold_default,
)
from .exports import export_results, write_histogram_csv, write_histogram_json
from .feasibility import feasibility, feasibility_grid
from .harness import preset, run_histogram_study, run_rejection_study
from .samplers import Family
from .spectra import sample_covariance_spectrum
from .stattests import Regime, chi_square_test, high_dim_test, statistic

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3

_INPUT_ERRORS = (
    ConfigError,
    TooFewRows,
    NonFiniteInput,
    KOutOfRange,
    InvalidModel,
    InvalidExponent,
)
_DEGENERATE_ERRORS = (DegenerateTrailingBlock, InsufficientDf)

_REGIMES = {"high-dim": Regime.HIGH_DIM, "fixed-p": Regime.FIXED_P}
_STRATEGIES = {
    "forward": Strategy.FORWARD,
    "backward": Strategy.BACKWARD,
    "bisect": Strategy.BISECTION,
}
_FAMILIES = {"gaussian": Family.GAUSSIAN, "laplace": Family.LAPLACE_MIXTURE}


def _read_config_file(path) -> dict:
    """Flat key=value lines, or a flat JSON object."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ConfigError(f"{path}: JSON config must be an object")
        return {str(k).replace("-", "_"): payload[k] for k in payload}
    config = {}
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path} line {i}: expected key=value")
        key, _, value = line.partition("=")
        config[key.strip().replace("-", "_")] = value.strip()
    return config


def _resolve(args, key: str, config: dict, default, coerce=None):
    """Flag value if given, else config-file value, else default."""
    value = getattr(args, key, None)
    if value is None:
        value = config.pop(key, default)
        if value is not None and coerce is not None:
            try:
                value = coerce(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"config key {key!r}: {exc}") from exc
    return value


def _choice(mapping: dict, label: str):
    def convert(value):
        text = str(value).strip().lower()
        if text not in mapping:
            raise ValueError(f"{label} must be one of {sorted(mapping)}, got {value!r}")
        return mapping[text]

    return convert

def _positive_int(value) -> int:
    out = int(str(value))
    if out < 1:
        raise ValueError(f"must be >= 1, got {out}")
    return out


def _alpha_level(value) -> float:
    out = float(value)
    if not 0.0 < out < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {out}")
    return out


def _seed_value(value) -> int:
    out = int(str(value))
    if not 0 <= out < 2**64:
        raise ValueError(f"seed must be in [0, 2^64), got {out}")
    return out


def _emit(report: dict, out_path) -> None:
    text = json.dumps(report, indent=2)
    print(text)
    if out_path:
        Path(out_path).write_text(text + "\n")


def _decision_for(threshold_spec: str | None, alpha: float, n: int):
    """Map --threshold to a decision rule: 'alpha', 'cn', or a positive float."""
    if threshold_spec is None or threshold_spec == "alpha":
        return AlphaLevel(alpha)
    if threshold_spec.lower() == "cn":
        return Threshold(threshold_default(n))
    try:
        value = float(threshold_spec)
    except ValueError:
        raise ConfigError(
            f"--threshold must be 'alpha', 'cn' or a positive number, "
            f"got {threshold_spec!r}"
        ) from None
    if value <= 0:
        raise ConfigError(f"--threshold must be positive, got {value}")
    return Threshold(value)


def _warn_fixed_p(regime: Regime, n: int, p: int) -> None:
    if regime is Regime.FIXED_P and p / n > 0.1:
        print(
            f"warning: fixed-p testing with p/n = {p / n:.2f} > 0.1 is known to "
            "overestimate the dimension; consider --regime high-dim",
            file=sys.stderr,
        )


def _trace_records(trace) -> list[dict]:
    return [
        {
            "k": v.k,
            "g": v.g,
            "z": v.z,
            "p_value": v.p_value,
            "reject": v.reject,
        }
        for v in trace.visited
    ]


def cmd_estimate(args) -> int:
    config = _read_config_file(args.config) if args.config else {}
    alpha = _resolve(args, "alpha", config, 0.05, _alpha_level)
    regime = _resolve(args, "regime", config, Regime.HIGH_DIM, _choice(_REGIMES, "regime"))
    strategy = _resolve(
        args, "strategy", config, Strategy.FORWARD, _choice(_STRATEGIES, "strategy")
    )
    threshold_spec = _resolve(args, "threshold", config, None, str)
    k_max = _resolve(args, "k_max", config, None, int)
    out = _resolve(args, "out", config, None, str)
    _reject_unknown(config, "estimate")

    data = read_data_matrix(args.data)
    _warn_fixed_p(regime, data.n, data.p)
    spec = sample_covariance_spectrum(data)
    cfg = EstimatorConfig(
        strategy=strategy,
        decision=_decision_for(threshold_spec, alpha, data.n),
        k_max=k_max,
        regime=regime,
    )
    trace = estimate_dimension(spec, data.n, cfg)
    decision = (
        {"type": "alpha", "alpha": alpha}
        if isinstance(cfg.decision, AlphaLevel)
        else {"type": "threshold", "c": cfg.decision.c}
    )
    report = {
        "d_hat": trace.d_hat,
        "exhausted": trace.exhausted,
        "n": data.n,
        "p": data.p,
        "regime": regime.value,
        "strategy": strategy.value,
        "decision": decision,
        "tests_run": trace.tests_run,
        "trace": _trace_records(trace),
    }
    _emit(report, out)
    return EXIT_OK


def cmd_test(args) -> int:
    config = _read_config_file(args.config) if args.config else {}
    alpha = _resolve(args, "alpha", config, 0.05, _alpha_level)
    regime = _resolve(args, "regime", config, Regime.HIGH_DIM, _choice(_REGIMES, "regime"))
    k = _resolve(args, "k", config, None, int)
    out = _resolve(args, "out", config, None, str)
    _reject_unknown(config, "test")
    if k is None:
        raise ConfigError("test requires --k")

    data = read_data_matrix(args.data)
    _warn_fixed_p(regime, data.n, data.p)
    spec = sample_covariance_spectrum(data)
    stat = statistic(spec, k, data.n)
    if regime is Regime.FIXED_P:
        outcome = chi_square_test(stat, alpha)
    else:
        outcome = high_dim_test(stat, alpha)
    report = {
        "k": stat.k,
        "n": stat.n,
        "p": stat.p,
        "T": stat.T,
        "g": stat.g,
        "z": stat.z,
        "regime": outcome.regime.value,
        "alpha": outcome.alpha,
        "p_value": outcome.p_value,
        "reject": outcome.reject,
    }
    _emit(report, out)
    return EXIT_OK


_SIMULATE_KEYS = {
    "preset",
    "family",
    "n",
    "replicates",
    "alpha",
    "seed",
    "threads",
    "study",
    "hypotheses",
    "format",
    "out_dir",
}


def _parse_int_list(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(tok) for tok in str(value).split(",") if tok.strip())


def cmd_simulate(args) -> int:
    config = _read_config_file(args.config_path)
    unknown = set(config) - _SIMULATE_KEYS
    if unknown:
        raise ConfigError(f"unknown config key {sorted(unknown)[0]!r}")

    preset_name = config.pop("preset", None)
    if preset_name is None:
        raise ConfigError("config key 'preset' is required")
    family = _resolve(args, "family", config, None, _choice(_FAMILIES, "family"))
    n_values = _resolve(args, "n", config, None, _parse_int_list)
    replicates = _resolve(args, "replicates", config, 2000, _positive_int)
    alpha = _resolve(args, "alpha", config, 0.05, _alpha_level)
    seed = _resolve(args, "seed", config, 0, _seed_value)
    threads = _resolve(args, "threads", config, 1, _positive_int)
    study = _resolve(args, "study", config, "rejection", str).lower()
    hypotheses = _resolve(args, "hypotheses", config, None, _parse_int_list)
    fmt = _resolve(args, "format", config, "csv", str).lower()
    out_dir = Path(_resolve(args, "out_dir", config, ".", str))

    if study not in ("rejection", "histogram", "both"):
        raise ConfigError(f"config key 'study' must be rejection|histogram|both, got {study!r}")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"config key 'format' must be csv or json, got {fmt!r}")
    try:
        setting = preset(
            str(preset_name),
            family=family,
            replicates=replicates,
            n_values=n_values,
            hypotheses=hypotheses,
        )
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from None

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if study in ("rejection", "both"):
        table = run_rejection_study(setting, alpha, seed, threads=threads)
        path = out_dir / f"{setting.label}_rejection.{fmt}"
        export_results(table, path, fmt)
        written.append(path)
        print(f"# rejection rates for {setting.label} "
              f"(alpha={alpha}, replicates={setting.replicates}, seed={seed})")
        print(f"{'n':>6} {'k':>4} {'rate':>8}")
        for row in table.rows:
            print(f"{row.n:>6} {row.k:>4} {row.rate:>8.3f}")
    if study in ("histogram", "both"):
        writer = write_histogram_csv if fmt == "csv" else write_histogram_json
        print(f"# dispersion statistic at k=d for {setting.label} "
              f"(replicates={setting.replicates}, seed={seed})")
        print(f"{'n':>6} {'mean':>9} {'variance':>9}")
        for n in setting.n_values:
            run = run_histogram_study(setting, seed, n=n)
            path = out_dir / f"{setting.label}_histogram_n{n}.{fmt}"
            writer(run, path)
            written.append(path)
            print(f"{n:>6} {run.mean:>9.3f} {run.variance:>9.3f}")
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_feasibility(args) -> int:
    config = _read_config_file(args.config) if args.config else {}
    grid = _resolve(args, "grid", config, None, _positive_int)
    out = _resolve(args, "out", config, None, str)
    _reject_unknown(config, "feasibility")

    verdict = feasibility(args.alpha_exp, args.beta_exp)
    report = {
        "alpha_exp": args.alpha_exp,
        "beta_exp": args.beta_exp,
        "feasible": verdict.feasible,
        "regime": verdict.regime.value,
        "binding": list(verdict.binding),
    }
    if grid is not None:
        grid_path = Path(out) if out else Path("feasibility_grid.csv")
        rows = feasibility_grid(grid)
        with grid_path.open("w", newline="") as handle:
            writer = csv.DictWriter(
                handle, fieldnames=["alpha_exp", "beta_exp", "feasible", "regime"]
            )
            writer.writeheader()
            writer.writerows(rows)
        report["grid_path"] = str(grid_path)
        report["grid_rows"] = len(rows)
        print(json.dumps(report, indent=2))
    else:
        _emit(report, out)
    return EXIT_OK


def _reject_unknown(config: dict, command: str) -> None:
    if config:
        raise ConfigError(
            f"unknown config key {sorted(config)[0]!r} for command {command!r}"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spikedim",
        description="Signal dimension estimation under spiked covariance models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key=value or JSON config file")
        p.add_argument("--seed", type=_seed_value, default=None,
                       help="64-bit seed for bit-stable output (default 0)")
        p.add_argument("--out", default=None, help="also write the output to this path")

    est = sub.add_parser("estimate", help="estimate signal dimension from CSV data")
    est.add_argument("data", help="CSV file, rows = observations")
    est.add_argument("--alpha", type=_alpha_level, default=None,
                     help="per-test significance level (default 0.05)")
    est.add_argument("--regime", choices=sorted(_REGIMES), default=None,
                     help="reference distribution chain (default high-dim)")
    est.add_argument("--strategy", choices=sorted(_STRATEGIES), default=None,
                     help="search order over k (default forward)")
    est.add_argument("--threshold", default=None,
                     help="'alpha' (level test), 'cn' (sqrt(n) cutoff) or a number")
    est.add_argument("--k-max", dest="k_max", type=int, default=None,
                     help="largest dimension to test")
    common(est)
    est.set_defaults(func=cmd_estimate)

    tst = sub.add_parser("test", help="test one hypothesized dimension")
    tst.add_argument("data", help="CSV file, rows = observations")
    tst.add_argument("--k", type=int, default=None, help="hypothesized dimension")
    tst.add_argument("--alpha", type=_alpha_level, default=None)
    tst.add_argument("--regime", choices=sorted(_REGIMES), default=None)
    common(tst)
    tst.set_defaults(func=cmd_test)

    sim = sub.add_parser("simulate", help="run Monte Carlo studies from a config file")
    sim.add_argument("config_path", help="config file with preset=... etc.")
    sim.add_argument("--out-dir", dest="out_dir", default=None,
                     help="directory for result files (default .)")
    sim.add_argument("--family", choices=sorted(_FAMILIES), default=None)
    sim.add_argument("--n", default=None, help="comma-separated sample sizes")
    sim.add_argument("--replicates", type=_positive_int, default=None)
    sim.add_argument("--alpha", type=_alpha_level, default=None)
    sim.add_argument("--threads", type=_positive_int, default=None,
                     help="worker threads; never changes results")
    sim.add_argument("--study", choices=["rejection", "histogram", "both"], default=None)
    sim.add_argument("--hypotheses", default=None, help="comma-separated k values")
    sim.add_argument("--format", choices=["csv", "json"], default=None)
    sim.add_argument("--seed", type=_seed_value, default=None)
    sim.set_defaults(func=cmd_simulate)

    fea = sub.add_parser("feasibility", help="classify growth exponents")
    fea.add_argument("alpha_exp", type=float, help="dimension growth exponent")
    fea.add_argument("beta_exp", type=float, help="weakest-spike growth exponent")
    fea.add_argument("--grid", type=_positive_int, default=None,
                     help="also rasterize the region on a grid of this resolution")
    common(fea)
    fea.set_defaults(func=cmd_feasibility)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _DEGENERATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpikedimError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

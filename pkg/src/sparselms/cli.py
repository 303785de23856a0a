"""Command line harness for the two benchmark experiments.

``sparselms ident`` reproduces the sparse system identification benchmark
and ``sparselms spectrum`` the undersampled spectrum estimation one.
Flags carry the benchmark defaults; a JSON config file given with
``--config`` overrides any flag value.  Exit status is 0 on success and
nonzero on validation or I/O failure.
"""

import argparse
import json
import sys

from .filters import Algorithm, FilterConfig
from .harness import (
    ExperimentConfig,
    emit_outputs,
    ident_diagnostics,
    run_ident_experiment,
    run_spectrum_experiment,
)
from .signals import IdentScenario, SpectrumScenario

IDENT_ALGORITHMS = [a.value for a in Algorithm]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sparselms",
        description="Sparsity-aware LMS experiment harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ident = sub.add_parser("ident", help="sparse system identification benchmark")
    ident.add_argument("--taps", type=int, default=256, help="filter length N")
    ident.add_argument("--nonzero", type=int, default=28, help="number of nonzero taps")
    ident.add_argument("--tap-value", type=float, default=1.0, help="value of the nonzero taps")
    ident.add_argument("--signal-len", type=int, default=2000, help="input samples per run")
    ident.add_argument("--snr-db", type=float, default=30.0, help="observation SNR in dB")
    ident.add_argument("--mu", type=float, default=0.005, help="step size")
    ident.add_argument("--rho", type=float, default=5e-5, help="zero-attractor strength")
    ident.add_argument("--epsilon", type=float, default=10.0, help="RZA reweighting constant")
    ident.add_argument("--sparsity", type=int, default=28, help="threshold keep-count s")
    ident.add_argument("--relaxed-sparsity", type=int, default=56, help="relaxed keep-count d")
    ident.add_argument("--warmup", type=int, default=512, help="warm-up updates before thresholding")
    ident.add_argument(
        "--algorithms",
        default=",".join(IDENT_ALGORITHMS),
        help="comma-separated subset of: " + ", ".join(IDENT_ALGORITHMS),
    )

    spectrum = sub.add_parser("spectrum", help="undersampled spectrum estimation benchmark")
    spectrum.add_argument("--full-len", type=int, default=1000, help="signal length / DFT size")
    spectrum.add_argument("--tones", type=int, default=10, help="number of sinusoids")
    spectrum.add_argument("--samples", type=int, default=300, help="random time samples kept")
    spectrum.add_argument("--snr-db", type=float, default=20.0, help="signal SNR in dB")
    spectrum.add_argument("--passes", type=int, default=10, help="retraining passes over the samples")
    spectrum.add_argument("--sparsity", type=int, default=20, help="threshold keep-count s")

    for p in (ident, spectrum):
        p.add_argument("--runs", type=int, default=200 if p is ident else 1, help="Monte Carlo runs")
        p.add_argument("--seed", type=int, default=0, help="base seed; run r uses seed + r")
        p.add_argument("--snapshot-every", type=int, default=250, help="diagnostic snapshot cadence")
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        p.add_argument("--config", default=None, help="JSON file whose values override the flags")

    return parser


def _apply_config_file(args):
    if args.config is None:
        return
    with open(args.config) as fh:
        overrides = json.load(fh)
    if not isinstance(overrides, dict):
        raise ValueError(f"--config {args.config}: expected a JSON object")
    known = vars(args)
    for key, value in overrides.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("command", "config"):
            raise ValueError(f"--config {args.config}: unknown option {key!r}")
        setattr(args, dest, value)


def _ident_experiment(args):
    scenario = IdentScenario(
        n_taps=args.taps,
        n_nonzero=args.nonzero,
        tap_value=args.tap_value,
        signal_len=args.signal_len,
        snr_db=args.snr_db,
        seed=args.seed,
    )
    names = [n.strip() for n in str(args.algorithms).split(",") if n.strip()]
    algorithms = []
    for name in names:
        if name not in IDENT_ALGORITHMS:
            raise ValueError(f"--algorithms: unknown algorithm {name!r}")
        # attach only the parameters each variant actually consumes
        kw = {}
        if name in ("za_lms", "rza_lms", "sza_lms"):
            kw["rho"] = args.rho
        if name == "rza_lms":
            kw["epsilon"] = args.epsilon
        if name in ("sza_lms", "hard_lms", "hard_init_lms", "hard_rel_lms"):
            kw["sparsity"] = args.sparsity
        if name == "hard_rel_lms":
            kw["relaxed_sparsity"] = args.relaxed_sparsity
        if name == "hard_init_lms":
            kw["warmup_steps"] = args.warmup
        algorithms.append(
            FilterConfig(algorithm=Algorithm(name), n_taps=args.taps, mu=args.mu, **kw)
        )
    return ExperimentConfig(
        scenario=scenario,
        algorithms=algorithms,
        n_runs=args.runs,
        base_seed=args.seed,
        snapshot_every=args.snapshot_every,
        output_dir=args.out,
    )


def _spectrum_experiment(args):
    scenario = SpectrumScenario(
        full_len=args.full_len,
        n_tones=args.tones,
        n_samples=args.samples,
        snr_db=args.snr_db,
        seed=args.seed,
    )
    algorithms = [
        FilterConfig(algorithm=Algorithm.LMS, n_taps=args.full_len, mu=1.0, label="complex_lms"),
        FilterConfig(
            algorithm=Algorithm.HARD_LMS,
            n_taps=args.full_len,
            mu=1.0,
            sparsity=args.sparsity,
            label="complex_hard_lms",
        ),
    ]
    return ExperimentConfig(
        scenario=scenario,
        algorithms=algorithms,
        n_runs=args.runs,
        base_seed=args.seed,
        snapshot_every=args.snapshot_every,
        output_dir=args.out,
        passes=args.passes,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _apply_config_file(args)
        if args.command == "ident":
            cfg = _ident_experiment(args)
            curves = run_ident_experiment(cfg, max_workers=args.workers)
            diagnostics = ident_diagnostics(cfg)
            paths = emit_outputs(curves, cfg.output_dir, experiment=cfg, diagnostics=diagnostics)
            for label, curve in curves.items():
                print(f"{label}: final ESR {curve.esr_db[-1]:.2f} dB over {curve.n_runs} runs")
        else:
            cfg = _spectrum_experiment(args)
            report = run_spectrum_experiment(cfg, max_workers=args.workers)
            paths = emit_outputs(report, cfg.output_dir, experiment=cfg)
            for label, rate in report.hit_rates.items():
                print(f"{label}: mean support hit rate {rate:.3f} over {report.n_runs} runs")
        for path in paths:
            print(f"wrote {path}")
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

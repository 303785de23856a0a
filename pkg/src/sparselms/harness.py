"""Experiment harness: wiring scenarios to filters and emitting artifacts.

Runs the two benchmark experiments (sparse identification and
undersampled spectrum estimation) over seeded Monte Carlo repetitions and
writes deterministic CSV/JSON artifacts.  Per-run seeds are always
``base_seed + run_index``, runs may execute on parallel workers, and
aggregation happens in run-index order, so outputs are byte-identical
for any worker count.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from functools import partial
from pathlib import Path

import numpy as np

from .complex_lms import run_complex_stream, step_size_from_stream
from .filters import Algorithm, run_stream
from .recovery import theorem1_condition, theorem2_condition
from .signals import (
    IdentScenario,
    SpectrumScenario,
    esr,
    gen_ident_stream,
    gen_spectrum_stream,
)
from .thresholding import hard_threshold, support

__all__ = [
    "SCHEMA_VERSION",
    "ExperimentConfig",
    "LearningCurve",
    "SpectrumReport",
    "run_ident_experiment",
    "run_spectrum_experiment",
    "ident_diagnostics",
    "diagnose_run",
    "emit_outputs",
    "read_curves_csv",
]

SCHEMA_VERSION = 1

_HARD_FAMILY = {Algorithm.HARD_LMS, Algorithm.HARD_INIT_LMS, Algorithm.HARD_REL_LMS}


@dataclass
class ExperimentConfig:
    """A full experiment: scenario, algorithm roster and run bookkeeping.

    The scenario's own seed is ignored by the runners; run r uses
    ``base_seed + r`` instead.  ``passes`` only applies to spectrum
    scenarios (retraining sweeps over the same samples).
    """

    scenario: IdentScenario | SpectrumScenario
    algorithms: list
    n_runs: int = 1
    base_seed: int = 0
    snapshot_every: int = 250
    output_dir: str = "results"
    passes: int = 10

    def __post_init__(self):
        if self.n_runs < 1:
            raise ValueError(f"n_runs must be >= 1, got {self.n_runs}")
        if self.snapshot_every < 1:
            raise ValueError(f"snapshot_every must be >= 1, got {self.snapshot_every}")
        if self.passes < 1:
            raise ValueError(f"passes must be >= 1, got {self.passes}")
        labels = [a.label for a in self.algorithms]
        dupes = {l for l in labels if labels.count(l) > 1}
        if dupes:
            raise ValueError(f"algorithms: duplicate labels {sorted(dupes)}")


@dataclass
class LearningCurve:
    """Per-iteration ESR of one algorithm, averaged over runs."""

    label: str
    esr_linear: np.ndarray
    n_runs: int

    @property
    def esr_db(self):
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(self.esr_linear)


@dataclass
class SpectrumReport:
    """Spectrum-estimation outcome.

    Magnitude columns and top-index sets come from run 0 (one plottable
    realization); hit rates and true-bin magnitude means are collected
    for every run.
    """

    sparsity: int
    n_runs: int
    true_magnitudes: np.ndarray
    estimate_magnitudes: dict
    top_sets: dict
    hit_rates: dict
    per_run_hit_rates: dict
    true_bin_means: dict


def _esr_trajectory(records, truth):
    snaps = np.stack([r.estimate_snapshot for r in records])
    denom = float(np.sum(np.abs(truth) ** 2))
    diff = snaps - truth
    return np.sum(np.abs(diff) ** 2, axis=1) / denom


def _ident_single_run(run_index, scenario, algorithms, base_seed):
    sc = replace(scenario, seed=base_seed + run_index)
    stream = gen_ident_stream(sc)
    out = {}
    for cfg in algorithms:
        records = run_stream(cfg, stream, snapshot_every=1)
        out[cfg.label] = _esr_trajectory(records, stream.truth)
    return out


def _map_runs(fn, n_runs, max_workers):
    indices = range(n_runs)
    if max_workers <= 1 or n_runs == 1:
        return [fn(i) for i in indices]
    with ProcessPoolExecutor(max_workers=min(max_workers, n_runs)) as pool:
        return list(pool.map(fn, indices))


def _check_ident_config(cfg):
    if not isinstance(cfg.scenario, IdentScenario):
        raise ValueError("scenario: identification experiment requires an IdentScenario")
    for a in cfg.algorithms:
        if a.n_taps != cfg.scenario.n_taps:
            raise ValueError(
                f"algorithms[{a.label}].n_taps ({a.n_taps}) must equal "
                f"scenario.n_taps ({cfg.scenario.n_taps})"
            )


def run_ident_experiment(cfg: ExperimentConfig, max_workers: int = 1):
    """Average ESR learning curves over seeded identification runs.

    Every algorithm consumes the identical stream within a run; the mean
    is taken over linear ESR values (dB conversion happens at output).
    Returns a dict mapping algorithm label to LearningCurve.
    """
    _check_ident_config(cfg)
    worker = partial(
        _ident_single_run,
        scenario=cfg.scenario,
        algorithms=cfg.algorithms,
        base_seed=cfg.base_seed,
    )
    per_run = _map_runs(worker, cfg.n_runs, max_workers)
    curves = {}
    for a in cfg.algorithms:
        total = per_run[0][a.label].copy()
        for result in per_run[1:]:
            total += result[a.label]
        curves[a.label] = LearningCurve(a.label, total / cfg.n_runs, cfg.n_runs)
    return curves


def _spectrum_single_run(run_index, scenario, algorithms, base_seed, passes):
    sc = replace(scenario, seed=base_seed + run_index)
    stream = gen_spectrum_stream(sc, passes=passes)
    mu = step_size_from_stream(stream)
    truth = stream.truth
    true_support = support(truth)
    s_eval = int(true_support.size)
    out = {}
    for cfg in algorithms:
        if cfg.algorithm is Algorithm.LMS:
            w, _ = run_complex_stream(stream, mu)
        elif cfg.algorithm in _HARD_FAMILY:
            keep = cfg.relaxed_sparsity if cfg.algorithm is Algorithm.HARD_REL_LMS else cfg.sparsity
            # no thresholding during the first pass over the samples
            w, _ = run_complex_stream(stream, mu, sparsity=keep, warmup_steps=sc.n_samples)
        else:
            raise ValueError(
                f"algorithms[{cfg.label}]: no complex variant of {cfg.algorithm.value}; "
                "spectrum experiments support lms and the hard_lms family"
            )
        top = support(hard_threshold(w, s_eval))
        hit = float(np.isin(true_support, top).sum()) / s_eval
        out[cfg.label] = {
            "magnitudes": np.abs(w),
            "top_set": top,
            "hit_rate": hit,
            "true_bin_mean": float(np.mean(np.abs(w[true_support]))),
        }
    return {"algorithms": out, "true_magnitudes": np.abs(truth), "s_eval": s_eval}


def run_spectrum_experiment(cfg: ExperimentConfig, max_workers: int = 1):
    """Run the undersampled spectrum experiment and build a report.

    The step size is 1/||x||^2, derived from the stream; hard-threshold
    variants skip thresholding during the first pass.  Only complex LMS
    and complex hard-threshold LMS are available.
    """
    if not isinstance(cfg.scenario, SpectrumScenario):
        raise ValueError("scenario: spectrum experiment requires a SpectrumScenario")
    worker = partial(
        _spectrum_single_run,
        scenario=cfg.scenario,
        algorithms=cfg.algorithms,
        base_seed=cfg.base_seed,
        passes=cfg.passes,
    )
    per_run = _map_runs(worker, cfg.n_runs, max_workers)
    first = per_run[0]
    labels = [a.label for a in cfg.algorithms]
    report = SpectrumReport(
        sparsity=first["s_eval"],
        n_runs=cfg.n_runs,
        true_magnitudes=first["true_magnitudes"],
        estimate_magnitudes={l: first["algorithms"][l]["magnitudes"] for l in labels},
        top_sets={l: first["algorithms"][l]["top_set"] for l in labels},
        hit_rates={},
        per_run_hit_rates={l: [] for l in labels},
        true_bin_means={l: [] for l in labels},
    )
    for result in per_run:
        for l in labels:
            report.per_run_hit_rates[l].append(result["algorithms"][l]["hit_rate"])
            report.true_bin_means[l].append(result["algorithms"][l]["true_bin_mean"])
    for l in labels:
        report.hit_rates[l] = float(np.mean(report.per_run_hit_rates[l]))
    return report


def diagnose_run(w_true, snapshots, relaxed_sparsity=None):
    """Support-recovery telemetry for a sequence of estimate snapshots.

    ``snapshots`` is an iterable of (iteration, estimate) pairs.  Each
    record carries ESR/SER (linear and dB), both recovery conditions and
    the top-s support hit rate.  The relaxed keep-count defaults to
    min(2 s, N - 1); when no valid relaxation exists the superset
    condition is reported as None.
    """
    w = np.asarray(w_true, dtype=float)
    sup = support(w)
    if sup.size == 0:
        raise ValueError("true vector must have at least one nonzero entry")
    s = int(sup.size)
    n = w.shape[0]
    d = relaxed_sparsity if relaxed_sparsity is not None else min(2 * s, n - 1)
    if not s < d < n:
        d = None
    out = []
    for iteration, est in snapshots:
        est = np.asarray(est, dtype=float)
        ratio = esr(w, est)
        ser = float("inf") if ratio == 0.0 else 1.0 / ratio
        top = support(hard_threshold(est, s))
        record = {
            "iteration": int(iteration),
            "esr": ratio,
            "esr_db": float("-inf") if ratio == 0.0 else 10.0 * float(np.log10(ratio)),
            "ser": ser,
            "ser_db": float("inf") if ratio == 0.0 else -10.0 * float(np.log10(ratio)),
            "theorem1_holds": bool(theorem1_condition(w, est).condition_holds),
            "theorem2_holds": None if d is None else bool(theorem2_condition(w, est, d).condition_holds),
            "support_hit_rate": float(np.isin(sup, top).sum()) / s,
        }
        out.append(record)
    return out


def ident_diagnostics(cfg: ExperimentConfig):
    """Recovery telemetry for run 0 of an identification experiment.

    Re-runs the first seed with snapshots at ``cfg.snapshot_every`` and
    diagnoses each algorithm's trajectory against the true taps.
    """
    _check_ident_config(cfg)
    sc = replace(cfg.scenario, seed=cfg.base_seed)
    stream = gen_ident_stream(sc)
    diagnostics = {}
    for algo in cfg.algorithms:
        records = run_stream(algo, stream, snapshot_every=cfg.snapshot_every)
        snaps = [
            (i + 1, rec.estimate_snapshot)
            for i, rec in enumerate(records)
            if rec.estimate_snapshot is not None
        ]
        diagnostics[algo.label] = diagnose_run(
            stream.truth, snaps, relaxed_sparsity=algo.relaxed_sparsity
        )
    return diagnostics


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if np.isfinite(value) else None
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": _json_safe(obj.real), "im": _json_safe(obj.imag)}
    return obj


def _fmt(value):
    return repr(float(value))


def _algorithm_summary(cfg):
    return {
        "algorithm": cfg.algorithm.value,
        "label": cfg.label,
        "n_taps": cfg.n_taps,
        "mu": cfg.mu,
        "rho": cfg.rho,
        "epsilon": cfg.epsilon,
        "sparsity": cfg.sparsity,
        "relaxed_sparsity": cfg.relaxed_sparsity,
        "warmup_steps": cfg.warmup_steps,
    }


def _experiment_summary(experiment):
    if experiment is None:
        return None
    return {
        "scenario": vars(experiment.scenario).copy(),
        "algorithms": [_algorithm_summary(a) for a in experiment.algorithms],
        "n_runs": experiment.n_runs,
        "base_seed": experiment.base_seed,
        "snapshot_every": experiment.snapshot_every,
        "passes": experiment.passes,
    }


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def emit_outputs(result, output_dir, experiment=None, diagnostics=None):
    """Write experiment artifacts to ``output_dir``.

    A dict of LearningCurve values produces ``curves.csv`` (iteration
    column plus one ESR-dB column per label); a SpectrumReport produces
    ``spectrum.csv`` (bin, true magnitude, one estimate column per
    label).  Both produce ``summary.json``.  Files are byte-stable across
    reruns of the same configuration.  Returns the written paths.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    summary = {
        "schema_version": SCHEMA_VERSION,
        "experiment": _experiment_summary(experiment),
        "diagnostics": diagnostics,
    }
    written = []
    try:
        if isinstance(result, SpectrumReport):
            lines = ["bin,true_mag," + ",".join(result.estimate_magnitudes)]
            labels = list(result.estimate_magnitudes)
            for i in range(result.true_magnitudes.shape[0]):
                cols = [str(i), _fmt(result.true_magnitudes[i])]
                cols += [_fmt(result.estimate_magnitudes[l][i]) for l in labels]
                lines.append(",".join(cols))
            path = out / "spectrum.csv"
            _write_text(path, "\n".join(lines) + "\n")
            written.append(path)
            summary["kind"] = "spectrum"
            summary["sparsity"] = result.sparsity
            summary["n_runs"] = result.n_runs
            summary["hit_rates"] = result.hit_rates
            summary["per_run_hit_rates"] = result.per_run_hit_rates
            summary["true_bin_means"] = result.true_bin_means
            summary["top_sets"] = {l: v.tolist() for l, v in result.top_sets.items()}
        else:
            curves = dict(result)
            labels = list(curves)
            lines = ["iteration" + "".join("," + l for l in labels)]
            if labels:
                db = {l: curves[l].esr_db for l in labels}
                n_iter = len(next(iter(curves.values())).esr_linear)
                for i in range(n_iter):
                    cols = [str(i + 1)] + [_fmt(db[l][i]) for l in labels]
                    lines.append(",".join(cols))
            path = out / "curves.csv"
            _write_text(path, "\n".join(lines) + "\n")
            written.append(path)
            summary["kind"] = "ident"
            summary["final_esr"] = {
                l: {"linear": float(c.esr_linear[-1]), "db": float(c.esr_db[-1])}
                for l, c in curves.items()
                if len(c.esr_linear)
            }
            summary["n_runs"] = {l: c.n_runs for l, c in curves.items()}
        path = out / "summary.json"
        _write_text(path, json.dumps(_json_safe(summary), indent=2, sort_keys=True) + "\n")
        written.append(path)
    except OSError as exc:
        raise OSError(f"failed writing outputs under {out}: {exc}") from exc
    return written


def read_curves_csv(path):
    """Parse a ``curves.csv`` back into (labels, iterations, columns)."""
    with open(path) as fh:
        rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    header = rows[0]
    labels = header[1:]
    iterations = np.array([int(r[0]) for r in rows[1:]], dtype=int)
    columns = {
        label: np.array([float(r[j + 1]) for r in rows[1:]])
        for j, label in enumerate(labels)
    }
    return labels, iterations, columns

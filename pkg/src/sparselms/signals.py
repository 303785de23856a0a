"""Seeded generators for the two benchmark scenarios.

``gen_ident_stream`` drives sparse FIR identification with a
tap-delay-line Gaussian input; ``gen_spectrum_stream`` emits undersampled
partial-DFT measurements of a noisy multi-tone signal.  Both are pure
functions of their scenario, so identical seeds give identical streams.

Conventions used throughout:

* The DFT is unitary (1/sqrt(N) in both directions), which makes every
  measurement row of the spectrum scenario have unit squared norm.
* Spectrum measurements are generated for the conjugate inner product
  ``y = w^H x``: each input vector is the conjugated row of the
  undersampled inverse-DFT matrix, so for the real signals produced here
  ``w^H x(n)`` equals the time-domain sample exactly.
"""

import csv
import hashlib
from dataclasses import dataclass

import numpy as np

__all__ = [
    "IdentScenario",
    "SpectrumScenario",
    "MeasurementStream",
    "gen_ident_stream",
    "gen_spectrum_stream",
    "esr",
    "esr_db",
    "save_stream_audit",
]


@dataclass
class MeasurementStream:
    """Ordered (input vector, observed output) pairs plus ground truth.

    ``inputs`` has one row per measurement; ``truth`` carries the
    generating tap vector for evaluation and is not consumed by filters.
    """

    inputs: np.ndarray
    outputs: np.ndarray
    truth: np.ndarray | None = None

    def __post_init__(self):
        if self.inputs.shape[0] != self.outputs.shape[0]:
            raise ValueError("inputs and outputs must have the same number of rows")

    def __len__(self):
        return self.inputs.shape[0]

    def __iter__(self):
        return zip(self.inputs, self.outputs)

    @property
    def n_taps(self):
        return self.inputs.shape[1]


@dataclass
class IdentScenario:
    """Sparse FIR identification task.

    ``n_nonzero`` taps are placed uniformly at random and set to
    ``tap_value`` (optionally with random signs); the input is white
    standard Gaussian and the output observed through additive white
    Gaussian noise scaled to meet ``snr_db``.
    """

    n_taps: int = 256
    n_nonzero: int = 28
    tap_value: float = 1.0
    signal_len: int = 2000
    snr_db: float = 30.0
    seed: int = 0
    random_signs: bool = False

    def __post_init__(self):
        if not 1 <= self.n_nonzero <= self.n_taps:
            raise ValueError(
                f"n_nonzero must satisfy 1 <= n_nonzero <= n_taps, got {self.n_nonzero}"
            )
        if self.signal_len < 1:
            raise ValueError(f"signal_len must be >= 1, got {self.signal_len}")


@dataclass
class SpectrumScenario:
    """Undersampled multi-tone spectrum estimation task.

    The signal is a superposition of ``n_tones`` unit-amplitude sinusoids
    whose frequencies are drawn without replacement from the DFT bins,
    excluding DC and Nyquist so every tone occupies exactly two bins.
    ``n_samples`` time positions are then kept uniformly at random.
    """

    full_len: int = 1000
    n_tones: int = 10
    n_samples: int = 300
    snr_db: float = 20.0
    seed: int = 0
    n_bins: int | None = None

    def __post_init__(self):
        if self.n_samples > self.full_len:
            raise ValueError(
                f"n_samples ({self.n_samples}) cannot exceed full_len ({self.full_len})"
            )
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.n_bins is None:
            self.n_bins = self.full_len
        elif self.n_bins != self.full_len:
            raise ValueError("n_bins must equal full_len for DFT-bin spectra")
        n_usable = (self.full_len - 1) // 2
        if not 1 <= self.n_tones <= n_usable:
            raise ValueError(
                f"n_tones must satisfy 1 <= n_tones <= {n_usable} for full_len {self.full_len}"
            )


def gen_ident_stream(sc: IdentScenario) -> MeasurementStream:
    """Generate a sparse identification stream.

    The n-th input vector is the tap-delay window
    ``[u(n), u(n-1), ..., u(n-N+1)]``, zero padded before the start of
    the input sequence.  Noise power is calibrated from the analytic
    power of the clean output (including the reduced power of the padded
    warm-up samples), not from a per-realization estimate.

    Draw order from the seed: support positions, tap signs (when
    enabled), input samples, noise samples.
    """
    rng = np.random.default_rng(sc.seed)
    w = np.zeros(sc.n_taps)
    positions = rng.choice(sc.n_taps, size=sc.n_nonzero, replace=False)
    if sc.random_signs:
        w[positions] = sc.tap_value * rng.choice([-1.0, 1.0], size=sc.n_nonzero)
    else:
        w[positions] = sc.tap_value

    u = rng.standard_normal(sc.signal_len)
    padded = np.concatenate([np.zeros(sc.n_taps - 1), u])
    windows = np.lib.stride_tricks.sliding_window_view(padded, sc.n_taps)[:, ::-1]
    inputs = np.ascontiguousarray(windows)
    clean = inputs @ w

    if np.isinf(sc.snr_db):
        outputs = clean
    else:
        # E[clean(n)^2] = sum_{k <= n} w_k^2 for unit-variance white input
        lags = np.arange(sc.n_taps)
        weights = np.clip(sc.signal_len - lags, 0, None) / sc.signal_len
        power = float(np.sum(w * w * weights))
        noise_var = power / 10.0 ** (sc.snr_db / 10.0)
        outputs = clean + np.sqrt(noise_var) * rng.standard_normal(sc.signal_len)
    return MeasurementStream(inputs, outputs, w)


def _tone_bins(sc: SpectrumScenario, rng):
    usable = np.arange(1, (sc.full_len + 1) // 2)
    if sc.full_len % 2 == 0:
        usable = usable[usable != sc.full_len // 2]
    return rng.choice(usable, size=sc.n_tones, replace=False)


def gen_spectrum_stream(sc: SpectrumScenario, passes: int = 1) -> MeasurementStream:
    """Generate undersampled spectrum measurements.

    The ground truth is the unitary DFT of the clean signal, constructed
    analytically: a unit sinusoid at bin k contributes -+i*sqrt(N)/2 at
    bins k and N-k and exact zeros elsewhere.  Each measurement pairs the
    conjugated inverse-DFT row of a sampled time position with the noisy
    sample there, and the whole sample set is repeated ``passes`` times
    in the same order to support retraining.
    """
    if passes < 1:
        raise ValueError(f"passes must be >= 1, got {passes}")
    rng = np.random.default_rng(sc.seed)
    L = sc.full_len
    bins = _tone_bins(sc, rng)

    t = np.arange(L)
    clean = np.sin(2.0 * np.pi * np.outer(t, bins) / L).sum(axis=1)
    if np.isinf(sc.snr_db):
        noisy = clean
    else:
        noise_var = (sc.n_tones / 2.0) / 10.0 ** (sc.snr_db / 10.0)
        noisy = clean + np.sqrt(noise_var) * rng.standard_normal(L)

    amp = np.sqrt(L) / 2.0
    truth = np.zeros(L, dtype=complex)
    truth[bins] = -1j * amp
    truth[L - bins] = 1j * amp

    positions = rng.choice(L, size=sc.n_samples, replace=False)
    # conj of the inverse-DFT rows, so that truth^H x(t) = clean(t)
    rows = np.exp(-2j * np.pi * np.outer(positions, t) / L) / np.sqrt(L)
    samples = noisy[positions]

    inputs = np.tile(rows, (passes, 1))
    outputs = np.tile(samples, passes)
    return MeasurementStream(inputs, outputs, truth)


def esr(w_true, w_hat):
    """Error-to-signal ratio ``||w_true - w_hat||^2 / ||w_true||^2``."""
    w = np.asarray(w_true)
    wh = np.asarray(w_hat)
    if w.shape != wh.shape:
        raise ValueError(f"shape mismatch: {w.shape} vs {wh.shape}")
    denom = float(np.sum(np.abs(w) ** 2))
    if denom == 0.0:
        raise ValueError("true vector must be nonzero")
    return float(np.sum(np.abs(w - wh) ** 2)) / denom


def esr_db(w_true, w_hat):
    """ESR in decibels; -inf for an exact estimate."""
    ratio = esr(w_true, w_hat)
    if ratio == 0.0:
        return float("-inf")
    return 10.0 * np.log10(ratio)


def save_stream_audit(stream: MeasurementStream, path):
    """Write a reproducibility audit of a stream as CSV.

    Columns: measurement index, SHA-256 of the raw input-row bytes
    (C order, native dtype) and the observed output rendered with
    ``repr`` for lossless round-trips.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "x_sha256", "y"])
        for i, (x, y) in enumerate(stream):
            digest = hashlib.sha256(np.ascontiguousarray(x).tobytes()).hexdigest()
            value = repr(complex(y)) if np.iscomplexobj(stream.outputs) else repr(float(y))
            writer.writerow([i, digest, value])

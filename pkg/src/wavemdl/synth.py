"""Seeded synthetic generators used as verification oracles.

Three kinds: a stationary AR(2) process, a segment that is exactly sparse in
a chosen wavelet basis plus white noise at a target SNR, and a multi-day
"subject" series (circadian baseline + AR residual) with an optional
perturbation from a given day onward, standing in for wearable recordings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dwt import Segment, inverse_dwt, forward_dwt
from .errors import InvalidArgument, InvalidK
from .filters import WaveletBasis
from .pipeline import DAY_SECONDS, TimeSeries

PERTURB_KINDS = ("none", "variance_scale", "ar_shift", "drift")


@dataclass(frozen=True)
class SynthSpec:
    """Declarative description of one synthetic dataset."""

    kind: str  # "ar2" | "sparse_in_basis" | "challenge_like"
    seed: int = 0
    n: int = 0
    params: dict = field(default_factory=dict)


def _check_ar2(a1: float, a2: float):
    # stationarity triangle
    if not (abs(a2) < 1.0 and a1 + a2 < 1.0 and a2 - a1 < 1.0):
        raise InvalidArgument(f"AR(2) coefficients ({a1}, {a2}) are not stationary")


def _ar2_path(a1: float, a2: float, innovations: np.ndarray) -> np.ndarray:
    out = np.empty(innovations.size)
    prev1 = prev2 = 0.0
    for i, e in enumerate(innovations):
        cur = a1 * prev1 + a2 * prev2 + e
        out[i] = cur
        prev2 = prev1
        prev1 = cur
    return out


def gen_ar2(
    a1: float,
    a2: float,
    n: int,
    noise_std: float = 1.0,
    seed: int = 0,
    dt: float = 10.0,
    burn_in: int = 100,
) -> TimeSeries:
    """Stationary AR(2) sample path x_t = a1*x_{t-1} + a2*x_{t-2} + e_t with
    zero initial state; the first ``burn_in`` samples are discarded."""
    _check_ar2(a1, a2)
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    if noise_std < 0:
        raise InvalidArgument("noise_std must be >= 0")
    rng = np.random.default_rng(seed)
    e = rng.normal(0.0, noise_std, size=n + burn_in)
    x = _ar2_path(a1, a2, e)[burn_in:]
    return TimeSeries(dt * np.arange(n), x, sample_rate_hint=1.0 / dt)


def gen_sparse_in_basis(
    basis: WaveletBasis, l: int, k: int, snr_db: float, seed: int = 0
) -> tuple[Segment, np.ndarray]:
    """A segment that is exactly k-sparse in ``basis`` plus white noise.

    Coefficient positions are drawn uniformly, values are +-1 scaled so the
    realized signal/noise energy ratio matches ``snr_db`` exactly
    (snr_db = inf yields a noiseless segment).  Returns the segment and the
    sorted planted support.
    """
    if not 1 <= k < l // 2:
        raise InvalidK(f"k must satisfy 1 <= k < l/2 = {l // 2}, got {k}")
    rng = np.random.default_rng(seed)
    support = np.sort(rng.choice(l, size=k, replace=False))
    signs = rng.choice([-1.0, 1.0], size=k)
    if math.isinf(snr_db):
        noise = np.zeros(l)
        amplitude = 1.0
    else:
        noise = rng.standard_normal(l)
        noise_energy = float(np.dot(noise, noise))
        amplitude = math.sqrt(10.0 ** (snr_db / 10.0) * noise_energy / k)
    # build coefficients in the basis layout, then synthesize
    layout = forward_dwt(Segment(np.zeros(l)), basis)
    coeffs = np.zeros(l)
    coeffs[support] = amplitude * signs
    clean = inverse_dwt(layout.with_values(coeffs), basis).samples
    return Segment(clean + noise), support


def _challenge_defaults() -> dict:
    return {
        "days": 8,
        "perturb_day": 3,
        "perturb": "variance_scale",
        "amount": 4.0,           # variance factor / drift height (units)
        "dt": 10.0,
        "level": 36.8,
        "circadian_amp": 0.4,
        "circadian_phase": 0.0,
        "a1": 0.6,
        "a2": 0.2,
        "noise_std": 0.08,
        "post_a1": -0.4,         # ar_shift target coefficients
        "post_a2": 0.3,
        "drift_ramp_days": 1.0,
    }


def gen_challenge_like(spec: SynthSpec) -> tuple[TimeSeries, list[tuple[float, float]]]:
    """Multi-day subject series with ground-truth anomaly labels.

    Baseline: a circadian sinusoid around a fixed level plus an AR(2)
    residual sampled every ``dt`` seconds.  From the start of
    ``perturb_day`` (0-based) onward one of three perturbations applies:

    - variance_scale: innovation variance multiplied by ``amount``
    - ar_shift: residual dynamics switch to (post_a1, post_a2)
    - drift: an ``amount``-unit ramp over ``drift_ramp_days``, then a plateau

    Returns (series, label intervals); labels cover exactly the perturbed
    span and are empty for perturb="none".
    """
    if spec.kind != "challenge_like":
        raise InvalidArgument(f"expected kind 'challenge_like', got {spec.kind!r}")
    p = _challenge_defaults()
    unknown = set(spec.params) - set(p)
    if unknown:
        raise InvalidArgument(f"unknown challenge parameters: {sorted(unknown)}")
    p.update(spec.params)
    if p["perturb"] not in PERTURB_KINDS:
        raise InvalidArgument(f"perturb must be one of {PERTURB_KINDS}, got {p['perturb']!r}")
    days, dt = int(p["days"]), float(p["dt"])
    if days < 1 or dt <= 0:
        raise InvalidArgument("days must be >= 1 and dt positive")
    perturbed = p["perturb"] != "none"
    onset_day = float(p["perturb_day"])
    if perturbed and not 0 < onset_day < days:
        raise InvalidArgument(f"perturb_day {onset_day} outside the simulated span (0, {days})")
    _check_ar2(p["a1"], p["a2"])
    if p["perturb"] == "ar_shift":
        _check_ar2(p["post_a1"], p["post_a2"])

    n = int(round(days * DAY_SECONDS / dt))
    t = dt * np.arange(n)
    onset_ts = onset_day * DAY_SECONDS
    post = t >= onset_ts if perturbed else np.zeros(n, dtype=bool)

    rng = np.random.default_rng(spec.seed)
    burn = 100
    e = rng.normal(0.0, p["noise_std"], size=n + burn)
    if perturbed and p["perturb"] == "variance_scale":
        scale = math.sqrt(float(p["amount"]))
        e[burn:][post] *= scale
    if perturbed and p["perturb"] == "ar_shift":
        # run the switched dynamics on the same innovation stream
        a1 = np.full(n + burn, p["a1"])
        a2 = np.full(n + burn, p["a2"])
        a1[burn:][post] = p["post_a1"]
        a2[burn:][post] = p["post_a2"]
        resid = np.empty(n + burn)
        prev1 = prev2 = 0.0
        for i in range(n + burn):
            cur = a1[i] * prev1 + a2[i] * prev2 + e[i]
            resid[i] = cur
            prev2 = prev1
            prev1 = cur
        resid = resid[burn:]
    else:
        resid = _ar2_path(p["a1"], p["a2"], e)[burn:]

    values = (
        p["level"]
        + p["circadian_amp"] * np.sin(2.0 * math.pi * t / DAY_SECONDS + p["circadian_phase"])
        + resid
    )
    if perturbed and p["perturb"] == "drift":
        ramp_s = float(p["drift_ramp_days"]) * DAY_SECONDS
        values = values + float(p["amount"]) * np.clip((t - onset_ts) / ramp_s, 0.0, 1.0) * post

    labels = [(onset_ts, days * DAY_SECONDS)] if perturbed else []
    return TimeSeries(t, values, sample_rate_hint=1.0 / dt), labels

"""Preprocessing, windowing and codelength-feature extraction for time series.

The intended flow mirrors the wearable-temperature use case: downsample the
raw recording to a uniform grid, repair dropout artifacts, cut the series
into dyadic windows, compute the optimal sparsity level per window, and
summarize the per-day spread of k/l before and after an event split.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dwt import Segment
from .errors import (
    DegenerateBaseline,
    DegenerateSignal,
    EmptySeries,
    InsufficientData,
    InvalidArgument,
    InvalidData,
)
from .filters import WaveletBasis
from .selection import _selector_scan, total_codelength

DAY_SECONDS = 86400.0


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly or non-uniformly sampled scalar series."""

    timestamps: np.ndarray
    values: np.ndarray
    sample_rate_hint: float | None = None

    def __post_init__(self):
        t = np.asarray(self.timestamps, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise InvalidData("timestamps and values must be 1-D and equally long")
        if t.size == 0:
            raise EmptySeries("time series has no samples")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(v)):
            raise InvalidData("time series contains NaN or inf")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise InvalidData("timestamps must be strictly increasing")
        t = t.copy()
        v = v.copy()
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.values.size)

    def slice_time(self, t_start: float | None = None, t_end: float | None = None) -> "TimeSeries":
        """Samples with t_start <= t < t_end."""
        mask = np.ones(len(self), dtype=bool)
        if t_start is not None:
            mask &= self.timestamps >= t_start
        if t_end is not None:
            mask &= self.timestamps < t_end
        if not mask.any():
            raise EmptySeries("time slice selects no samples")
        return TimeSeries(self.timestamps[mask], self.values[mask], self.sample_rate_hint)


@dataclass(frozen=True)
class KProfile:
    """Per-window optimal sparsity fractions over one series.

    Degenerate windows (no informative residual at any k) are listed in
    ``degenerate_origins`` and excluded from the arrays.  ``score_bits`` is
    the total codelength for the "mdl" selector and the raw criterion value
    for "aic"/"bic".
    """

    l: int
    selector: str
    window_origins: np.ndarray
    window_times: np.ndarray
    k_values: np.ndarray
    k_fraction: np.ndarray
    score_bits: np.ndarray
    degenerate_origins: np.ndarray


@dataclass(frozen=True)
class DayStats:
    day_index: int
    mean_k_fraction: float
    std_k_fraction: float
    n_windows: int


def downsample(raw: TimeSeries, bin_seconds: float = 10.0) -> TimeSeries:
    """One output sample per time bin (bin mean); empty interior bins are
    filled by linear interpolation.

    Bins are anchored at integer multiples of ``bin_seconds`` so that
    re-binning already-binned data is a no-op, and output timestamps sit at
    bin centers.
    """
    if bin_seconds <= 0:
        raise InvalidArgument(f"bin_seconds must be positive, got {bin_seconds!r}")
    t, v = raw.timestamps, raw.values
    first_bin = math.floor(t[0] / bin_seconds)
    idx = np.floor(t / bin_seconds).astype(np.int64) - first_bin
    nbins = int(idx[-1]) + 1
    sums = np.bincount(idx, weights=v, minlength=nbins)
    counts = np.bincount(idx, minlength=nbins)
    centers = (first_bin + np.arange(nbins) + 0.5) * bin_seconds
    filled = counts > 0
    means = np.empty(nbins)
    means[filled] = sums[filled] / counts[filled]
    if not filled.all():
        means[~filled] = np.interp(centers[~filled], centers[filled], means[filled])
    return TimeSeries(centers, means, sample_rate_hint=1.0 / bin_seconds)


def remove_outliers(
    s: TimeSeries, min_value: float = 30.0, max_drop_per_step: float = 3.0
) -> TimeSeries:
    """Repair dropout artifacts: samples below ``min_value`` or falling more
    than ``max_drop_per_step`` below the last accepted sample are replaced by
    linear interpolation across the invalid run (endpoints take the nearest
    valid value)."""
    v = s.values
    valid = np.ones(v.size, dtype=bool)
    last = None
    for i, x in enumerate(v):
        if x < min_value or (last is not None and last - x > max_drop_per_step):
            valid[i] = False
        else:
            last = x
    if not valid.any():
        raise EmptySeries("all samples were marked invalid")
    if valid.all():
        return s
    t = s.timestamps
    repaired = v.copy()
    repaired[~valid] = np.interp(t[~valid], t[valid], v[valid])
    return TimeSeries(t, repaired, s.sample_rate_hint)


def sliding_windows(s: TimeSeries, l: int, stride: int | None = None) -> list[Segment]:
    """Length-``l`` windows at origins 0, stride, 2*stride, ...; the trailing
    partial window is dropped.  Default stride is ``l`` (non-overlapping)."""
    if stride is None:
        stride = l
    if stride < 1:
        raise InvalidArgument(f"stride must be >= 1, got {stride}")
    n = len(s)
    if n < l:
        raise InsufficientData(f"series has {n} samples, window needs {l}")
    return [
        Segment(s.values[o : o + l], origin_index=o)
        for o in range(0, n - l + 1, stride)
    ]


def k_profile(
    s: TimeSeries,
    basis: WaveletBasis,
    l: int,
    stride: int | None = None,
    selector: str = "mdl",
) -> KProfile:
    """Optimal sparsity fraction k/l per window under the chosen selector."""
    if selector not in ("mdl", "aic", "bic"):
        raise InvalidArgument(f"unknown selector {selector!r}; expected mdl, aic or bic")
    windows = sliding_windows(s, l, stride)
    origins, times, ks, scores, degenerate = [], [], [], [], []
    for seg in windows:
        try:
            k, score = _selector_scan(seg, basis, selector)
        except DegenerateSignal:
            degenerate.append(seg.origin_index)
            continue
        origins.append(seg.origin_index)
        times.append(s.timestamps[seg.origin_index])
        ks.append(k)
        scores.append(score)
    return KProfile(
        l=l,
        selector=selector,
        window_origins=np.asarray(origins, dtype=np.int64),
        window_times=np.asarray(times, dtype=float),
        k_values=np.asarray(ks, dtype=np.int64),
        k_fraction=np.asarray(ks, dtype=float) / l,
        score_bits=np.asarray(scores, dtype=float),
        degenerate_origins=np.asarray(degenerate, dtype=np.int64),
    )


def day_boundaries(
    t_start: float,
    t_end: float,
    day_seconds: float = DAY_SECONDS,
    offset: float = 0.0,
) -> np.ndarray:
    """Day edges covering [t_start, t_end], aligned to ``offset`` plus integer
    multiples of ``day_seconds`` (offset = local midnight in epoch seconds)."""
    if day_seconds <= 0:
        raise InvalidArgument("day_seconds must be positive")
    first = offset + math.floor((t_start - offset) / day_seconds) * day_seconds
    n_days = max(1, math.ceil((t_end - first) / day_seconds + 1e-12))
    return first + day_seconds * np.arange(n_days + 1)


def daily_stats(p: KProfile, boundaries: np.ndarray) -> list[DayStats]:
    """Mean and sample standard deviation of k/l per day.

    Day j spans [boundaries[j], boundaries[j+1]); windows are assigned by
    their start time; days without windows are omitted; a single-window day
    reports std 0.
    """
    b = np.asarray(boundaries, dtype=float)
    if b.size < 2 or not np.all(np.diff(b) > 0):
        raise InvalidArgument("day boundaries must be >= 2 strictly increasing timestamps")
    out: list[DayStats] = []
    day_of = np.searchsorted(b, p.window_times, side="right") - 1
    for j in range(b.size - 1):
        sel = p.k_fraction[day_of == j]
        if sel.size == 0:
            continue
        std = float(np.std(sel, ddof=1)) if sel.size > 1 else 0.0
        out.append(
            DayStats(
                day_index=j,
                mean_k_fraction=float(np.mean(sel)),
                std_k_fraction=std,
                n_windows=int(sel.size),
            )
        )
    return out


def shift_ratio(stats: list[DayStats], split_day: int) -> float:
    """mean(per-day std of k/l over days >= split_day) divided by the same
    mean over days < split_day."""
    before = [d.std_k_fraction for d in stats if d.day_index < split_day]
    after = [d.std_k_fraction for d in stats if d.day_index >= split_day]
    if not before or not after:
        raise InvalidArgument("need at least one day on each side of the split")
    denom = float(np.mean(before))
    if denom == 0.0:
        raise DegenerateBaseline("baseline days show zero variability in k")
    return float(np.mean(after)) / denom


def basis_codelengths(
    s: TimeSeries,
    library: list[WaveletBasis] | tuple[WaveletBasis, ...],
    l: int,
    stride: int | None = None,
) -> list[tuple[WaveletBasis, float]]:
    """Summed window codelength per basis, in library order.  Windows that are
    degenerate contribute their floored total, identically for every basis."""
    if not library:
        raise InvalidArgument("wavelet library is empty")
    windows = sliding_windows(s, l, stride)
    out = []
    for basis in library:
        total = sum(total_codelength(w, basis, allow_degenerate=True) for w in windows)
        out.append((basis, float(total)))
    return out


def select_basis(
    s: TimeSeries,
    library: list[WaveletBasis] | tuple[WaveletBasis, ...],
    l: int,
    stride: int | None = None,
) -> tuple[WaveletBasis, float]:
    """The library basis with the smallest summed codelength over all windows
    (ties break toward the earlier library entry)."""
    sums = basis_codelengths(s, library, l, stride)
    best = min(range(len(sums)), key=lambda i: sums[i][1])
    return sums[best]

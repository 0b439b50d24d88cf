"""Periodized orthonormal discrete wavelet transform.

The transform matrix is never materialized: analysis/synthesis run the
filter-bank pyramid with circular boundary extension, which keeps the map
exactly orthonormal on dyadic lengths.  Coefficients are laid out in pyramid
order [approximation | coarsest detail | ... | finest detail], so the finest
detail band always occupies the second half of the vector.

Also provides the magnitude-selection operators used by the sparse coder:
``keep_largest`` / ``keep_smallest`` retain the k largest / smallest entries
by absolute value and zero the rest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import InvalidData, InvalidK, InvalidLength
from .filters import WaveletBasis


class Band(NamedTuple):
    kind: str   # "a" approximation, "d" detail
    level: int  # 1 = finest detail; approximation carries the pyramid depth
    start: int
    stop: int


def _is_dyadic(n: int) -> bool:
    return n >= 4 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Segment:
    """A real-valued window of dyadic length with an origin into its source series."""

    samples: np.ndarray
    origin_index: int = 0

    def __post_init__(self):
        x = np.asarray(self.samples, dtype=float)
        if x.ndim != 1:
            raise InvalidData("segment samples must be one-dimensional")
        if not _is_dyadic(x.size):
            raise InvalidLength(f"segment length must be a power of two >= 4, got {x.size}")
        if not np.all(np.isfinite(x)):
            raise InvalidData("segment samples contain NaN or inf")
        x = x.copy()
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)

    @property
    def length(self) -> int:
        return int(self.samples.size)

    def __len__(self) -> int:
        return self.length


@dataclass(frozen=True)
class CoefficientVector:
    """Wavelet coefficients of one segment, with their band layout."""

    values: np.ndarray
    bands: tuple[Band, ...] = field(default_factory=tuple)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.length

    @property
    def finest_detail_slice(self) -> slice:
        """Index range of the finest-scale detail band (second half when depth >= 1)."""
        for b in self.bands:
            if b.kind == "d" and b.level == 1:
                return slice(b.start, b.stop)
        return slice(self.length, self.length)

    def level_map(self) -> list[tuple[int, int]]:
        """Per-index (scale, position); scale 1 is the finest detail band and
        the approximation band reports the pyramid depth."""
        out: list[tuple[int, int]] = [(0, 0)] * self.length
        for b in self.bands:
            for pos, idx in enumerate(range(b.start, b.stop)):
                out[idx] = (b.level, pos)
        return out

    def with_values(self, values: np.ndarray) -> "CoefficientVector":
        return CoefficientVector(values=values, bands=self.bands)


def _analyze(s: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # circular cross-correlation, then dyadic downsampling
    ext = np.concatenate([s, s[: lo.size - 1]])
    return np.correlate(ext, lo, mode="valid")[::2], np.correlate(ext, hi, mode="valid")[::2]


def _synthesize(a: np.ndarray, d: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    n = 2 * a.size
    up = np.zeros(n)
    up[::2] = a
    full = np.convolve(up, lo)
    up[::2] = d
    full += np.convolve(up, hi)
    s = full[:n].copy()
    s[: lo.size - 1] += full[n:]
    return s


def forward_dwt(x: Segment | np.ndarray, basis: WaveletBasis) -> CoefficientVector:
    """Full-pyramid periodized DWT of a dyadic segment.

    Energy is preserved exactly (orthonormality); band lengths shorter than
    the filter are not split further, so a block shorter than the filter maps
    to itself.
    """
    if not isinstance(x, Segment):
        x = Segment(np.asarray(x, dtype=float))
    lo, hi = basis.lowpass, basis.highpass
    depth = basis.depth_for(x.length)
    s = x.samples
    details: list[np.ndarray] = []
    for _ in range(depth):
        a, d = _analyze(s, lo, hi)
        details.append(d)
        s = a
    values = np.concatenate([s] + details[::-1])
    bands: list[Band] = []
    pos = 0
    bands.append(Band("a", depth, 0, pos + s.size))
    pos += s.size
    for j, d in enumerate(details[::-1]):
        level = depth - j
        bands.append(Band("d", level, pos, pos + d.size))
        pos += d.size
    return CoefficientVector(values=values, bands=tuple(bands))


def inverse_dwt(alpha: CoefficientVector, basis: WaveletBasis) -> Segment:
    """Synthesis transform; exact inverse of :func:`forward_dwt` for the same basis."""
    n = alpha.length
    if not _is_dyadic(n):
        raise InvalidLength(f"coefficient length must be a power of two >= 4, got {n}")
    if not alpha.bands or alpha.bands[-1].stop != n or alpha.bands[0].kind != "a":
        raise InvalidLength("coefficient vector carries no consistent band layout")
    depth = alpha.bands[0].level
    if depth != basis.depth_for(n):
        raise InvalidLength(
            f"band layout depth {depth} does not match basis '{basis.name}' at length {n}"
        )
    lo, hi = basis.lowpass, basis.highpass
    s = alpha.values[alpha.bands[0].start : alpha.bands[0].stop]
    for b in alpha.bands[1:]:
        s = _synthesize(s, alpha.values[b.start : b.stop], lo, hi)
    return Segment(s)


def magnitude_order(values: np.ndarray) -> np.ndarray:
    """Indices sorted by decreasing |value|; equal magnitudes keep index order."""
    return np.argsort(-np.abs(np.asarray(values, dtype=float)), kind="stable")


def _selection_values(alpha) -> np.ndarray:
    return alpha.values if isinstance(alpha, CoefficientVector) else np.asarray(alpha, dtype=float)


def _wrap_like(alpha, values: np.ndarray):
    if isinstance(alpha, CoefficientVector):
        return alpha.with_values(values)
    return values


def keep_largest(alpha, k: int):
    """Zero all but the ``k`` largest-magnitude entries (ties keep the lower index)."""
    v = _selection_values(alpha)
    if not 0 <= k <= v.size:
        raise InvalidK(f"k must be in [0, {v.size}], got {k}")
    out = np.zeros_like(v)
    sel = magnitude_order(v)[:k]
    out[sel] = v[sel]
    return _wrap_like(alpha, out)


def keep_smallest(alpha, k: int):
    """Zero all but the ``k`` smallest-magnitude entries; exact complement of
    :func:`keep_largest`, so keep_largest(a, k) + keep_smallest(a, n-k) == a."""
    v = _selection_values(alpha)
    if not 0 <= k <= v.size:
        raise InvalidK(f"k must be in [0, {v.size}], got {k}")
    out = np.zeros_like(v)
    sel = magnitude_order(v)[v.size - k :]
    out[sel] = v[sel]
    return _wrap_like(alpha, out)

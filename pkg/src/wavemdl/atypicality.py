"""Dictionary-based anomaly detection on window codelengths.

Training windows are summarized into a dictionary of (k, support) patterns.
A test window is then coded two ways: with the *typical* encoder, which may
only pick one dictionary pattern (paying log2|D| bits for the pick plus the
coefficient values and the off-support residual), and with the *atypical*
encoder, which codes the window in itself with the full sparsity search plus
a log2(l) start-position penalty.  A window whose self-contained code beats
the dictionary code by more than a threshold tau is flagged as anomalous.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .codelength import parameter_cost, residual_cost
from .dwt import Segment, forward_dwt
from .errors import (
    EmptyDictionary,
    DegenerateSignal,
    InvalidArgument,
    InvalidLength,
)
from .filters import WaveletBasis
from .pipeline import TimeSeries, sliding_windows
from .selection import optimal_k, residual_floor


class DictionaryEntry(NamedTuple):
    k: int
    support: tuple[int, ...]  # sorted coefficient indices


@dataclass(frozen=True)
class TypicalDictionary:
    """Deduplicated (k, support) patterns harvested from training windows."""

    basis_name: str
    l: int
    entries: tuple[DictionaryEntry, ...]

    def __post_init__(self):
        if not self.entries:
            raise EmptyDictionary("dictionary has no entries")
        seen = set()
        for e in self.entries:
            if not 1 <= e.k < self.l // 2 or len(e.support) != e.k:
                raise InvalidArgument(f"inconsistent dictionary entry {e}")
            if any(not 0 <= i < self.l for i in e.support):
                raise InvalidArgument("dictionary support index out of range")
            if e in seen:
                raise InvalidArgument(f"duplicate dictionary entry {e}")
            seen.add(e)

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class DetectionResult:
    origin: int
    L_t: float          # typical (dictionary) codelength, bits
    L_a_prime: float    # atypical codelength without the tau penalty, bits
    score: float        # L_t - L_a_prime: bits saved by self-coding
    flagged: bool
    chosen_entry: int
    k_atypical: int


def build_dictionary(
    training: Sequence[Segment] | Iterable[Segment], basis: WaveletBasis
) -> TypicalDictionary:
    """Harvest the optimal (k, support) of every training window, deduplicated
    in first-seen order; degenerate windows are skipped."""
    entries: list[DictionaryEntry] = []
    seen: set[DictionaryEntry] = set()
    l = None
    for seg in training:
        if l is None:
            l = seg.length
        elif seg.length != l:
            raise InvalidLength("training windows must share one length")
        try:
            rep = optimal_k(seg, basis)
        except DegenerateSignal:
            continue
        entry = DictionaryEntry(rep.k, tuple(int(i) for i in rep.support))
        if entry not in seen:
            seen.add(entry)
            entries.append(entry)
    if l is None:
        raise EmptyDictionary("no training windows supplied")
    if not entries:
        raise EmptyDictionary("every training window was degenerate")
    return TypicalDictionary(basis_name=basis.name, l=l, entries=tuple(entries))


def typical_codelength(
    x: Segment, dictionary: TypicalDictionary, basis: WaveletBasis
) -> tuple[float, int]:
    """Best dictionary coding of the window: the entry fixes *which*
    coefficients are transmitted, so its residual is the energy of the
    window's spectrum off that support.  Returns (bits, entry index); ties
    pick the earlier entry.
    """
    if x.length != dictionary.l:
        raise InvalidLength(f"window length {x.length} != dictionary length {dictionary.l}")
    if basis.name != dictionary.basis_name:
        raise InvalidArgument(
            f"dictionary was built for basis '{dictionary.basis_name}', got '{basis.name}'"
        )
    l = x.length
    alpha = forward_dwt(x, basis).values
    sq = alpha**2
    total_energy = float(sq.sum())
    floor = residual_floor(float(np.dot(x.samples, x.samples)), l)
    best_bits = math.inf
    best_idx = 0
    for idx, entry in enumerate(dictionary.entries):
        off_support = max(total_energy - float(sq[list(entry.support)].sum()), 0.0)
        bits = parameter_cost(entry.k, l) + residual_cost(off_support, l, floor=floor)
        if bits < best_bits:
            best_bits = bits
            best_idx = idx
    return best_bits + math.log2(dictionary.size), best_idx


def atypical_codelength(
    x: Segment, basis: WaveletBasis, *, allow_degenerate: bool = False
) -> float:
    """Self-contained codelength of the window plus the log2(l) penalty for
    an unknown start position; excludes the decision threshold tau."""
    rep = optimal_k(x, basis, allow_degenerate=allow_degenerate)
    return rep.breakdown.total + math.log2(x.length)


def choose_tau(scores: Sequence[float]) -> float:
    """Smallest non-negative threshold with zero flags on the given
    (validation) scores: max(0, max(scores))."""
    scores = list(scores)
    if not scores:
        raise InvalidArgument("cannot calibrate tau without validation scores")
    return max(0.0, max(scores))


def detect(
    s: TimeSeries,
    dictionary: TypicalDictionary,
    basis: WaveletBasis,
    l: int,
    stride: int | None = None,
    tau: float = 0.0,
    flag_direction: str = "atypical-shorter",
) -> list[DetectionResult]:
    """Score every window of ``s`` against the dictionary.

    score = L_t - L_a'; with the default direction a window is flagged when
    score > tau, i.e. when coding it in itself saves more than tau bits over
    the dictionary code.  ``flag_direction="typical-shorter"`` inverts the
    comparison (flag when L_a' - L_t > tau) for fidelity experiments.
    Degenerate windows are scored with floored totals on both sides.
    """
    if tau < 0:
        raise InvalidArgument(f"tau must be >= 0, got {tau}")
    if flag_direction not in ("atypical-shorter", "typical-shorter"):
        raise InvalidArgument(f"unknown flag_direction {flag_direction!r}")
    results = []
    for seg in sliding_windows(s, l, stride):
        rep = optimal_k(seg, basis, allow_degenerate=True)
        la_prime = rep.breakdown.total + math.log2(l)
        lt, chosen = typical_codelength(seg, dictionary, basis)
        score = lt - la_prime
        direction_score = score if flag_direction == "atypical-shorter" else -score
        results.append(
            DetectionResult(
                origin=seg.origin_index,
                L_t=lt,
                L_a_prime=la_prime,
                score=score,
                flagged=bool(direction_score > tau),
                chosen_entry=chosen,
                k_atypical=rep.k,
            )
        )
    return results


def merge_flagged_intervals(
    results: Sequence[DetectionResult], l: int
) -> list[tuple[int, int]]:
    """Flagged windows merged into [start, stop) sample-index intervals;
    windows whose gap is shorter than one window join the same interval."""
    flagged = sorted(r.origin for r in results if r.flagged)
    intervals: list[tuple[int, int]] = []
    for o in flagged:
        if intervals and o - intervals[-1][1] < l:
            intervals[-1] = (intervals[-1][0], o + l)
        else:
            intervals.append((o, o + l))
    return intervals

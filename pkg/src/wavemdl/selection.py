"""MDL-optimal sparsity selection for wavelet-transformed segments.

For a dyadic segment x of length l and an orthonormal basis, the candidate
models keep the k largest-magnitude coefficients (1 <= k < l/2) and treat
the rest as Gaussian noise with ML variance.  The per-k objective is

    (5/2)k + (k/2)log2(l) + l*H(k/l) + (l/2)log2(residual energy at k)

and the winning k minimizes it.  The full codelength adds the k-independent
block ``codelength_constants(l)``.  AIC and BIC selectors over the same
model family are provided for comparison; both share the residual curve and
differ only in their penalty.

The upper half of the k range is excluded by construction: the second half
of the coefficient vector is the finest-scale detail band, which carries
mostly noise, and letting k approach l drives the residual term to -inf (a
trivial, non-informative solution).  Residual energies are floored at a
machine-epsilon-scaled level; a segment whose residual is already at the
floor for every k raises :class:`DegenerateSignal` unless the caller opts
into floored totals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codelength import (
    CodelengthBreakdown,
    index_cost_bound,
    parameter_cost,
    residual_cost,
)
from .dwt import CoefficientVector, Segment, forward_dwt, magnitude_order
from .errors import DegenerateSignal, InvalidK, InvalidLength
from .filters import WaveletBasis

_EPS = float(np.finfo(float).eps)
_HALF_LOG2E = 0.5 / math.log(2.0)


def residual_floor(signal_energy: float, l: int) -> float:
    """Numerical floor for residual energies: l * eps * max(1, ||x||^2)."""
    return l * _EPS * max(1.0, signal_energy)


def codelength_constants(l: int) -> float:
    """k-independent bits of the full segment codelength:
    5/2 + 2*log2(l) + (l/2)*log2(2*pi/l) + l/(2 ln 2) + log2(pi/8)."""
    return (
        2.5
        + 2.0 * math.log2(l)
        + 0.5 * l * math.log2(2.0 * math.pi / l)
        + l * _HALF_LOG2E
        + math.log2(math.pi / 8.0)
    )


@dataclass(frozen=True)
class SparseRepresentation:
    """The selected sparse model of one segment."""

    k: int
    support: np.ndarray          # sorted coefficient indices, |support| = k
    values: np.ndarray           # original DWT coefficients at the support
    sigma2_hat: float            # ML noise variance, residual energy / l
    breakdown: CodelengthBreakdown
    basis_name: str

    @property
    def total_bits(self) -> float:
        return self.breakdown.total


@dataclass(frozen=True)
class SelectionCurve:
    """Per-k accounting: complexity term, error term, and their sum."""

    k: np.ndarray
    complexity_bits: np.ndarray
    error_bits: np.ndarray
    total_bits: np.ndarray
    residual_energy: np.ndarray  # unfloored

    @property
    def argmin_k(self) -> int:
        return int(self.k[int(np.argmin(self.total_bits))])


class _Scan:
    """One pass over a segment: coefficients sorted by magnitude and the
    residual-energy suffix sums every selector reads from."""

    __slots__ = ("segment", "alpha", "order", "energy", "floor", "l")

    def __init__(self, x: Segment, basis: WaveletBasis):
        if x.length < 8:
            raise InvalidLength(f"sparsity selection needs length >= 8, got {x.length}")
        self.segment = x
        self.l = x.length
        self.alpha = forward_dwt(x, basis)
        v = self.alpha.values
        self.order = magnitude_order(v)
        sq = v[self.order] ** 2
        energy = np.zeros(self.l + 1)
        energy[: self.l] = np.cumsum(sq[::-1])[::-1]
        self.energy = energy  # energy[k] = residual after keeping top k
        self.floor = residual_floor(float(np.dot(x.samples, x.samples)), self.l)

    @property
    def k_values(self) -> np.ndarray:
        return np.arange(1, self.l // 2)

    def floored_energies(self) -> np.ndarray:
        return np.maximum(self.energy[1 : self.l // 2], self.floor)

    @property
    def degenerate(self) -> bool:
        # residuals are non-increasing in k, so one check suffices
        return self.energy[1] <= self.floor

    def smallest_floored_k(self) -> int | None:
        hit = np.nonzero(self.energy[1 : self.l // 2] <= self.floor)[0]
        return int(hit[0]) + 1 if hit.size else None

    def raise_if_degenerate(self):
        if self.degenerate:
            raise DegenerateSignal(
                "residual energy sits at the numerical floor for every k",
                k_floor=self.smallest_floored_k(),
            )

    def complexity(self) -> np.ndarray:
        ks = self.k_values
        p = ks / self.l
        entropy = -p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p)
        return 2.5 * ks + 0.5 * ks * math.log2(self.l) + self.l * entropy

    def objective(self) -> np.ndarray:
        return self.complexity() + 0.5 * self.l * np.log2(self.floored_energies())


def mdl_objective(x: Segment, basis: WaveletBasis, k: int) -> float:
    """The per-k selection objective (bits, excluding the constant block)."""
    scan = _Scan(x, basis)
    if not 1 <= k < scan.l // 2:
        raise InvalidK(f"k must satisfy 1 <= k < l/2 = {scan.l // 2}, got {k}")
    return float(scan.objective()[k - 1])


def _best_k(scan: _Scan, allow_degenerate: bool) -> tuple[int, float]:
    if not allow_degenerate:
        scan.raise_if_degenerate()
    obj = scan.objective()
    i = int(np.argmin(obj))  # first minimum = smallest k on ties
    return i + 1, float(obj[i])


def optimal_k(x: Segment, basis: WaveletBasis, *, allow_degenerate: bool = False) -> SparseRepresentation:
    """Select the codelength-minimizing sparsity level and assemble the model.

    The breakdown reuses the codelength primitives directly: log2(l) bits to
    announce k, the (k+1)-parameter cost for the retained coefficients and
    the noise variance, the subset bound for the support, and the Gaussian
    residual bits.  Their sum equals the scanned objective plus
    :func:`codelength_constants`.

    With ``allow_degenerate`` the floored objective is used instead of
    raising, which keeps totals comparable across bases and encoders.
    """
    scan = _Scan(x, basis)
    k, _ = _best_k(scan, allow_degenerate)
    l = scan.l
    support = np.sort(scan.order[:k])
    breakdown = CodelengthBreakdown.from_terms(
        k_cost=math.log2(l),
        param_cost=parameter_cost(k + 1, l),
        index_cost=index_cost_bound(l, k),
        residual_cost=residual_cost(float(scan.energy[k]), l, floor=scan.floor),
        constants=0.0,
    )
    return SparseRepresentation(
        k=k,
        support=support,
        values=scan.alpha.values[support].copy(),
        sigma2_hat=float(scan.energy[k]) / l,
        breakdown=breakdown,
        basis_name=basis.name,
    )


def total_codelength(x: Segment, basis: WaveletBasis, *, allow_degenerate: bool = False) -> float:
    """Minimal lossless codelength of the segment in bits: the best per-k
    objective plus the constant block."""
    scan = _Scan(x, basis)
    _, best = _best_k(scan, allow_degenerate)
    return best + codelength_constants(scan.l)


def select_k_aic(x: Segment, basis: WaveletBasis) -> int:
    """Akaike-criterion sparsity over the same model family:
    argmin_k 2(k+1) + l*ln(sigma^2(k)), ties to the smaller k."""
    scan = _Scan(x, basis)
    scan.raise_if_degenerate()
    ks = scan.k_values
    sigma2 = scan.floored_energies() / scan.l
    crit = 2.0 * (ks + 1) + scan.l * np.log(sigma2)
    return int(ks[int(np.argmin(crit))])


def select_k_bic(x: Segment, basis: WaveletBasis) -> int:
    """Bayesian-criterion sparsity: argmin_k (k+1)*ln(l) + l*ln(sigma^2(k))."""
    scan = _Scan(x, basis)
    scan.raise_if_degenerate()
    ks = scan.k_values
    sigma2 = scan.floored_energies() / scan.l
    crit = (ks + 1) * math.log(scan.l) + scan.l * np.log(sigma2)
    return int(ks[int(np.argmin(crit))])


def selection_curve(x: Segment, basis: WaveletBasis) -> SelectionCurve:
    """Per-k complexity/error/total columns for plotting; the argmin of the
    total column is the selected k."""
    scan = _Scan(x, basis)
    scan.raise_if_degenerate()
    complexity = scan.complexity()
    error = 0.5 * scan.l * np.log2(scan.floored_energies())
    return SelectionCurve(
        k=scan.k_values,
        complexity_bits=complexity,
        error_bits=error,
        total_bits=complexity + error,
        residual_energy=scan.energy[1 : scan.l // 2].copy(),
    )


def _selector_scan(x: Segment, basis: WaveletBasis, selector: str) -> tuple[int, float]:
    """(k, score) for one window under the named selector; score is the total
    codelength in bits for "mdl" and the criterion value for "aic"/"bic"."""
    scan = _Scan(x, basis)
    scan.raise_if_degenerate()
    ks = scan.k_values
    if selector == "mdl":
        obj = scan.objective()
        i = int(np.argmin(obj))
        return int(ks[i]), float(obj[i]) + codelength_constants(scan.l)
    sigma2 = scan.floored_energies() / scan.l
    if selector == "aic":
        crit = 2.0 * (ks + 1) + scan.l * np.log(sigma2)
    elif selector == "bic":
        crit = (ks + 1) * math.log(scan.l) + scan.l * np.log(sigma2)
    else:
        raise InvalidK(f"unknown selector {selector!r}; expected mdl, aic or bic")
    i = int(np.argmin(crit))
    return int(ks[i]), float(crit[i])


def reconstruction(x: Segment, basis: WaveletBasis, rep: SparseRepresentation) -> CoefficientVector:
    """The retained-coefficient vector of ``rep`` in full-length layout."""
    alpha = forward_dwt(x, basis)
    out = np.zeros(alpha.length)
    out[rep.support] = rep.values
    return alpha.with_values(out)

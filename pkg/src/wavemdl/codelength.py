"""Description-length primitives, all in bits (base-2 logs, real-valued).

These are the building blocks every encoder in this package is assembled
from: the iterated-log cost of an unbounded integer, the binary entropy
bound on the cost of naming a k-subset, the per-parameter cost of
transmitting maximum-likelihood estimates at the precision the data
supports, and the Gaussian codelength of a residual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral

from .errors import InvalidArgument

LOG2_PI_OVER_8 = math.log2(math.pi / 8.0)
_HALF_LOG2E = 0.5 / math.log(2.0)  # = (1/2) * log2(e)


def log_star(n: int) -> float:
    """Iterated base-2 logarithm log2(n) + log2(log2(n)) + ..., summing while
    the terms stay positive; log_star(1) == 0."""
    if not isinstance(n, Integral) or isinstance(n, bool) or n < 1:
        raise InvalidArgument(f"log_star requires an integer n >= 1, got {n!r}")
    total = 0.0
    v = math.log2(n)
    while v > 0.0:
        total += v
        v = math.log2(v)
    return total


def binary_entropy(p: float) -> float:
    """H(p) = -p*log2(p) - (1-p)*log2(1-p), with H(0) = H(1) = 0."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"probability must lie in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def index_cost_bound(l: int, k: int) -> float:
    """Upper bound on log2(C(l, k)): l*H(k/l) + (1/2)*log2(l) + log2(pi/8).

    Bits needed to name which k of l positions are occupied; always at least
    the exact log-binomial.
    """
    if not isinstance(l, Integral) or l < 2:
        raise InvalidArgument(f"l must be an integer >= 2, got {l!r}")
    if not isinstance(k, Integral) or not 1 <= k < l:
        raise InvalidArgument(f"k must satisfy 1 <= k < l, got k={k!r}, l={l}")
    return l * binary_entropy(k / l) + 0.5 * math.log2(l) + LOG2_PI_OVER_8


def parameter_cost(num_params: int, l: int) -> float:
    """(5/2)*p + (p/2)*log2(l): bits to transmit p real ML estimates at the
    precision supported by l observations, independent of their values."""
    if not isinstance(num_params, Integral) or num_params < 0:
        raise InvalidArgument(f"num_params must be a non-negative integer, got {num_params!r}")
    if not isinstance(l, Integral) or l < 2:
        raise InvalidArgument(f"l must be an integer >= 2, got {l!r}")
    return 2.5 * num_params + 0.5 * num_params * math.log2(l)


def parameter_cost_rissanen(estimates, l: int) -> float:
    """Value-dependent variant: sum of log_star(floor(|estimate|), clamped to
    >= 1) plus (p/2)*log2(l)."""
    if not isinstance(l, Integral) or l < 2:
        raise InvalidArgument(f"l must be an integer >= 2, got {l!r}")
    ests = list(estimates)
    total = sum(log_star(max(1, int(math.floor(abs(float(e)))))) for e in ests)
    return total + 0.5 * len(ests) * math.log2(l)


def residual_cost(residual_energy: float, l: int, floor: float = 0.0) -> float:
    """Gaussian codelength of a residual with squared norm ``residual_energy``
    over ``l`` samples: (l/2)*log2((2*pi/l)*energy) + l/(2*ln 2).

    ``floor`` clamps tiny energies; a (floored) energy of zero yields -inf.
    """
    if not isinstance(l, Integral) or l < 2:
        raise InvalidArgument(f"l must be an integer >= 2, got {l!r}")
    if residual_energy < 0.0 or not math.isfinite(residual_energy):
        raise InvalidArgument(f"residual energy must be finite and >= 0, got {residual_energy!r}")
    e = max(residual_energy, floor)
    if e == 0.0:
        return float("-inf")
    return 0.5 * l * math.log2(2.0 * math.pi * e / l) + l * _HALF_LOG2E


@dataclass(frozen=True)
class CodelengthBreakdown:
    """Per-term bit accounting for one encoded segment.

    ``total`` always equals the sum of the five components; ``constants``
    holds whatever k-independent bits a particular encoder does not attribute
    to the other four terms.
    """

    k_cost: float
    param_cost: float
    index_cost: float
    residual_cost: float
    constants: float
    total: float

    @classmethod
    def from_terms(
        cls,
        k_cost: float = 0.0,
        param_cost: float = 0.0,
        index_cost: float = 0.0,
        residual_cost: float = 0.0,
        constants: float = 0.0,
    ) -> "CodelengthBreakdown":
        return cls(
            k_cost=k_cost,
            param_cost=param_cost,
            index_cost=index_cost,
            residual_cost=residual_cost,
            constants=constants,
            total=k_cost + param_cost + index_cost + residual_cost + constants,
        )

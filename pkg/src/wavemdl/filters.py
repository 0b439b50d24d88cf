"""Orthonormal wavelet filter registry.

Scaling (lowpass) filters for the Haar, Daubechies, Symlet and Coiflet
families, from the classical published tables (12 significant digits).
Because a deep analysis pyramid amplifies table round-off, every filter is
refined to machine-precision orthonormality at registration time; the
published values move by less than 1e-10.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument

SQRT2 = math.sqrt(2.0)

# name -> scaling filter table (any positive scale; normalized at registration)
_TABLES: dict[str, tuple[float, ...]] = {
    "haar": (0.7071067811865476, 0.7071067811865476),
    "db2": (
        0.482962913145, 0.836516303738, 0.224143868042, -0.129409522551,
    ),
    "db3": (
        0.332670552950, 0.806891509311, 0.459877502118, -0.135011020010,
        -0.085441273882, 0.035226291882,
    ),
    "db4": (
        0.230377813309, 0.714846570553, 0.630880767930, -0.027983769417,
        -0.187034811719, 0.030841381836, 0.032883011667, -0.010597401785,
    ),
    "db5": (
        0.160102397974, 0.603829269797, 0.724308528438, 0.138428145901,
        -0.242294887066, -0.032244869585, 0.077571493840, -0.006241490213,
        -0.012580751999, 0.003335725285,
    ),
    "db6": (
        0.111540743350, 0.494623890398, 0.751133908021, 0.315250351709,
        -0.226264693965, -0.129766867567, 0.097501605587, 0.027522865530,
        -0.031582039317, 0.000553842201, 0.004777257511, -0.001077301085,
    ),
    "db7": (
        0.077852054085, 0.396539319482, 0.729132090846, 0.469782287405,
        -0.143906003929, -0.224036184994, 0.071309219267, 0.080612609151,
        -0.038029936935, -0.016574541631, 0.012550998556, 0.000429577973,
        -0.001801640704, 0.000353713800,
    ),
    "db8": (
        0.054415842243, 0.312871590914, 0.675630736297, 0.585354683654,
        -0.015829105256, -0.284015542962, 0.000472484574, 0.128747426620,
        -0.017369301002, -0.044088253931, 0.013981027917, 0.008746094047,
        -0.004870352993, -0.000391740373, 0.000675449406, -0.000117476784,
    ),
    "db9": (
        0.038077947364, 0.243834674613, 0.604823123690, 0.657288078051,
        0.133197385825, -0.293273783279, -0.096840783223, 0.148540749338,
        0.030725681479, -0.067632829061, 0.000250947115, 0.022361662124,
        -0.004723204758, -0.004281503682, 0.001847646883, 0.000230385764,
        -0.000251963189, 0.000039347320,
    ),
    "db10": (
        0.026670057901, 0.188176800078, 0.527201188932, 0.688459039454,
        0.281172343661, -0.249846424327, -0.195946274377, 0.127369340336,
        0.093057364604, -0.071394147166, -0.029457536822, 0.033212674059,
        0.003606553567, -0.010733175483, 0.001395351747, 0.001992405295,
        -0.000685856695, -0.000116466855, 0.000093588670, -0.000013264203,
    ),
    "sym4": (
        -0.107148901418, -0.041910965125, 0.703739068656, 1.136658243408,
        0.421234534204, -0.140317624179, -0.017824701442, 0.045570345896,
    ),
    "sym5": (
        0.038654795955, 0.041746864422, -0.055344186117, 0.281990696854,
        1.023052966894, 0.896581648380, 0.023478923136, -0.247951362613,
        -0.029842499869, 0.027632152958,
    ),
    "sym6": (
        0.021784700327, 0.004936612372, -0.166863215412, -0.068323121587,
        0.694457972958, 1.113892783926, 0.477904371333, -0.102724969862,
        -0.029783751299, 0.063250562660, 0.002499922093, -0.011031867509,
    ),
    "sym7": (
        0.003792658534, -0.001481225915, -0.017870431651, 0.043155452582,
        0.096014767936, -0.070078291222, 0.024665659489, 0.758162601964,
        1.085782709814, 0.408183939725, -0.198056706807, -0.152463871896,
        0.005671342686, 0.014521394762,
    ),
    "sym8": (
        0.002672793393, -0.000428394300, -0.021145686528, 0.005386388754,
        0.069490465911, -0.038493521263, -0.073462508761, 0.515398670374,
        1.099106630537, 0.680745347190, -0.086653615406, -0.202648655286,
        0.010758611751, 0.044823623042, -0.000766690896, -0.004783458512,
    ),
    "coif1": (
        0.038580777748, -0.126969125396, -0.077161555496, 0.607491641386,
        0.745687558934, 0.226584265197,
    ),
    "coif2": (
        0.016387336463, -0.041464936782, -0.067372554722, 0.386110066823,
        0.812723635450, 0.417005184424, -0.076488599078, -0.059434418646,
        0.023680171947, 0.005611434819, -0.001823208871, -0.000720549445,
    ),
    "coif3": (
        -0.003793512864, 0.007782596426, 0.023452696142, -0.065771911281,
        -0.061123390003, 0.405176902410, 0.793777222626, 0.428483476378,
        -0.071799821619, -0.082301927106, 0.034555027573, 0.015880544864,
        -0.009007976137, -0.002574517688, 0.001117518771, 0.000466216960,
        -0.000070983303, -0.000034599773,
    ),
}

#: canonical registry order, also the default library order for basis search
LIBRARY_NAMES: tuple[str, ...] = (
    "haar",
    "db2", "db3", "db4", "db5", "db6", "db7", "db8", "db9", "db10",
    "sym4", "sym5", "sym6", "sym7", "sym8",
    "coif1", "coif2", "coif3",
)


def _refine(h: np.ndarray) -> np.ndarray:
    """Newton-project a near-orthonormal scaling filter onto the constraint
    set sum(h)=sqrt(2), sum_i h[i]h[i+2m]=delta(m)."""
    h = np.asarray(h, dtype=float)
    h = h / np.linalg.norm(h)
    L = h.size
    nshift = L // 2
    for _ in range(30):
        g = np.empty(nshift + 1)
        jac = np.empty((nshift + 1, L))
        g[0] = h.sum() - SQRT2
        jac[0] = 1.0
        for m in range(nshift):
            lag = 2 * m
            g[m + 1] = h[: L - lag] @ h[lag:] - (1.0 if m == 0 else 0.0)
            row = np.zeros(L)
            row[: L - lag] += h[lag:]
            row[lag:] += h[: L - lag]
            jac[m + 1] = row
        if np.max(np.abs(g)) < 1e-14:
            return h
        h = h - jac.T @ np.linalg.solve(jac @ jac.T, g)
    raise InvalidArgument("filter refinement did not converge; table is not near-orthonormal")


@dataclass(frozen=True)
class WaveletBasis:
    """An orthonormal wavelet basis, defined implicitly by its filter pair.

    ``lowpass`` is the scaling filter; ``highpass`` is derived from it by the
    quadrature-mirror rule highpass[i] = (-1)^i * lowpass[L-1-i].
    ``max_levels_hint`` caps the decomposition depth ("full" = no cap).
    """

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray
    max_levels_hint: int | str = "full"

    def __post_init__(self):
        lo = np.asarray(self.lowpass, dtype=float)
        hi = np.asarray(self.highpass, dtype=float)
        if lo.size < 2 or lo.size % 2 != 0 or hi.size != lo.size:
            raise InvalidArgument("filter length must be even and >= 2")
        if abs(lo.sum() - SQRT2) > 1e-10:
            raise InvalidArgument(f"{self.name}: lowpass does not sum to sqrt(2)")
        L = lo.size
        for m in range(L // 2):
            lag = 2 * m
            dot = lo[: L - lag] @ lo[lag:]
            if abs(dot - (1.0 if m == 0 else 0.0)) > 1e-10:
                raise InvalidArgument(f"{self.name}: lowpass violates shift orthonormality")
        expected_hi = _qmf(lo)
        if np.max(np.abs(hi - expected_hi)) > 1e-12:
            raise InvalidArgument(f"{self.name}: highpass is not the quadrature mirror of lowpass")
        if self.max_levels_hint != "full":
            if not isinstance(self.max_levels_hint, int) or self.max_levels_hint < 1:
                raise InvalidArgument("max_levels_hint must be a positive integer or 'full'")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lowpass", lo)
        object.__setattr__(self, "highpass", hi)

    @classmethod
    def from_lowpass(cls, name: str, coeffs, max_levels_hint: int | str = "full") -> "WaveletBasis":
        lo = _refine(np.asarray(coeffs, dtype=float))
        return cls(name=name, lowpass=lo, highpass=_qmf(lo), max_levels_hint=max_levels_hint)

    @property
    def filter_length(self) -> int:
        return int(self.lowpass.size)

    def depth_for(self, n: int) -> int:
        """Number of analysis levels for a length-``n`` block: split while the
        current band is at least one filter long, capped by the hint."""
        cap = self.max_levels_hint if isinstance(self.max_levels_hint, int) else n.bit_length()
        depth, m = 0, n
        while m >= max(self.filter_length, 2) and depth < cap:
            depth += 1
            m //= 2
        return depth


def _qmf(lowpass: np.ndarray) -> np.ndarray:
    L = lowpass.size
    signs = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


_REGISTRY: dict[str, WaveletBasis] = {}


def get_basis(name: str) -> WaveletBasis:
    """Look up a basis by name (e.g. "haar", "db8", "sym5", "coif2")."""
    key = name.strip().lower()
    if key not in _TABLES:
        raise InvalidArgument(
            f"unknown wavelet '{name}'; available: {', '.join(LIBRARY_NAMES)}"
        )
    if key not in _REGISTRY:
        _REGISTRY[key] = WaveletBasis.from_lowpass(key, _TABLES[key])
    return _REGISTRY[key]


def list_bases() -> tuple[str, ...]:
    return LIBRARY_NAMES


def default_library() -> tuple[WaveletBasis, ...]:
    """All registered bases, in canonical order."""
    return tuple(get_basis(n) for n in LIBRARY_NAMES)

"""Time concentration of DOST basis functions.

``D[p, tau]`` carries most of its energy on the circular interval of width
``1/beta`` centred at ``tau/beta``.  Fractions are measured on the sample
grid ``t = m/n`` with half-open membership ``[lo, hi)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dost import synthesize_basis
from .dyadic import BandIndex, beta, partition


@dataclass(frozen=True)
class ConcentrationReport:
    band: BandIndex
    interval: tuple[float, float]  # lo in [0, 1), hi = lo + 1/beta (may pass 1: wraps)
    energy_fraction: float

    @property
    def norm_fraction(self) -> float:
        return float(np.sqrt(self.energy_fraction))


def interval_mask(index: BandIndex, n: int) -> np.ndarray:
    """Samples ``m/n`` inside ``[tau/beta - 1/(2 beta), tau/beta + 1/(2 beta))`` mod 1."""
    b = beta(index.p)
    m = np.arange(n, dtype=np.int64)
    # (t - lo) mod 1 < 1/beta, scaled by 2*beta*n to stay in integers
    return ((2 * b * m - (2 * index.tau - 1) * n) % (2 * b * n)) < 2 * n


def concentration(index: BandIndex, n: int) -> ConcentrationReport:
    layout = partition(n)
    band = layout.check_index(index)
    if n < 8 * band.beta:
        raise ValueError(f"n={n} too coarse to resolve band p={index.p} (need n >= {8 * band.beta})")
    d2 = np.abs(synthesize_basis(index, n)) ** 2
    mask = interval_mask(index, n)
    frac = float(d2[mask].sum() / d2.sum())
    lo = (index.tau - 0.5) / band.beta % 1.0
    return ConcentrationReport(index, (lo, lo + 1.0 / band.beta), frac)


def concentration_sweep(p_max: int, n: int) -> list[ConcentrationReport]:
    """Reports for every ``(p, tau)`` with ``2 <= p <= p_max``."""
    partition(n)
    if p_max < 2 or 2 * beta(p_max) > n // 2:
        raise ValueError(f"p_max={p_max} not valid for n={n} (need 2 <= p_max, 2*beta <= n/2)")
    return [concentration(BandIndex(p, tau), n) for p in range(2, p_max + 1) for tau in range(beta(p))]

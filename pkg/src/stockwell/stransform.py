"""Redundant discrete S-transform, the slow O(n^2 log n) reference.

Entry ``(j, k)`` of a :class:`TimeFreqMatrix` is the transform at time
``b = j/n`` and signed frequency ``xi = k`` (``k - n`` for bins above n/2)::

    S(j, k) = sum_{m in [-n/2, n/2)} exp(2j*pi*m*j/n) * fhat[(m + k) % n] * W(m, k)

with ``W = exp(-2 pi^2 m^2 / k^2)`` for the Gaussian form and ``W =
conj(phi_hat(m/k))`` for a compactly supported window.  The ``xi = 0`` row
is the signal mean.  A windowed row is supported on ``-1/3 <= m/k < 1/3``:
the left edge takes the window's one-sided limit and the right edge is
excluded, which is exactly what makes the boxcar reproduce the DOST
coefficients on the grid ``(tau/beta, nu(p))``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import as_signal, dft
from .windows import Window, validate


@dataclass
class TimeFreqMatrix:
    n: int
    entries: np.ndarray  # shape (n, n), indexed [time j, frequency bin k]

    def voice(self, k: int) -> np.ndarray:
        return self.entries[:, k]

    def at(self, b: float, xi: int) -> complex:
        """Value at time ``b`` (a multiple of 1/n) and signed frequency ``xi``."""
        j = int(round(b * self.n)) % self.n
        return complex(self.entries[j, xi % self.n])


def _signed(k: int, n: int) -> int:
    return k - n if k > n // 2 else k


def _centered(n: int) -> np.ndarray:
    return np.arange(-(n // 2), n // 2)


def _row(bins: np.ndarray, k: int, weights: np.ndarray) -> np.ndarray:
    # sum_m exp(2 pi i m j / n) fhat(m+k) W(m) over the centred m range
    n = bins.size
    m = _centered(n)
    v = np.zeros(n, dtype=np.complex128)
    v[m % n] = bins[(m + k) % n] * weights
    return np.fft.ifft(v) * n


def _window_weights(w: Window, k: int, n: int) -> np.ndarray:
    xi = _signed(k, n)
    m = _centered(n)
    a = abs(xi)
    # -1/3 <= m/xi < 1/3, in integers
    keep = (-a <= 3 * m) & (3 * m < a) if xi > 0 else (-a < 3 * m) & (3 * m <= a)
    out = np.zeros(n, dtype=np.complex128)
    out[keep] = np.conj(w(m[keep] / xi))
    return out


def _gaussian_weights(k: int, n: int) -> np.ndarray:
    xi = _signed(k, n)
    m = _centered(n)
    return np.exp(-2.0 * np.pi**2 * m.astype(float) ** 2 / xi**2)


def voice(w: Window, samples, k: int) -> np.ndarray:
    """One row (fixed frequency bin ``k``) of :func:`redundant_windowed`, O(n log n)."""
    x = as_signal(samples)
    n = x.size
    if not 0 <= k < n:
        raise ValueError(f"frequency bin {k} outside [0, {n})")
    if k == 0:
        return np.full(n, x.mean(), dtype=np.complex128)
    return _row(dft(x), k, _window_weights(w, k, n))


def gaussian_voice(samples, k: int) -> np.ndarray:
    x = as_signal(samples)
    n = x.size
    if not 0 <= k < n:
        raise ValueError(f"frequency bin {k} outside [0, {n})")
    if k == 0:
        return np.full(n, x.mean(), dtype=np.complex128)
    return _row(dft(x), k, _gaussian_weights(k, n))


def redundant_windowed(w: Window, samples) -> TimeFreqMatrix:
    """Full S-transform with an admissible window on the n x n grid."""
    validate(w)
    x = as_signal(samples)
    n = x.size
    bins = dft(x)
    out = np.empty((n, n), dtype=np.complex128)
    out[:, 0] = x.mean()
    for k in range(1, n):
        out[:, k] = _row(bins, k, _window_weights(w, k, n))
    return TimeFreqMatrix(n, out)


def redundant_gaussian(samples) -> TimeFreqMatrix:
    """Classical Gaussian-window redundant S-transform."""
    x = as_signal(samples)
    n = x.size
    bins = dft(x)
    out = np.empty((n, n), dtype=np.complex128)
    out[:, 0] = x.mean()
    for k in range(1, n):
        out[:, k] = _row(bins, k, _gaussian_weights(k, n))
    return TimeFreqMatrix(n, out)

"""DFT conventions and band slicing.

Signals are sampled at ``t = m/n``.  The forward transform carries the
``1/n`` factor::

    bins[k] = (1/n) * sum_m samples[m] * exp(-2j*pi*k*m/n)

so that under the inner product ``(u, v) = (1/n) * sum(u * conj(v))`` the
sampled exponentials ``exp(2j*pi*k*t)`` are orthonormal and ``bins[k]`` is
the inner product of the signal with the k-th exponential.
"""
from __future__ import annotations

import numpy as np

from .dyadic import Band, band_bins, check_length, partition


def as_signal(samples) -> np.ndarray:
    """Validate and convert to a complex 1-D array of power-of-two length >= 8."""
    x = np.asarray(samples, dtype=np.complex128)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-D signal, got shape {x.shape}")
    check_length(x.size)
    return x


def inner(u, v) -> complex:
    """Discrete L2([0,1]) inner product ``(1/n) sum u conj(v)``."""
    u = np.asarray(u)
    return complex(np.vdot(v, u)) / u.size


def norm2(u) -> float:
    """Squared discrete L2([0,1]) norm."""
    u = np.asarray(u)
    return float(np.vdot(u, u).real) / u.size


def dft(samples) -> np.ndarray:
    x = as_signal(samples)
    return np.fft.fft(x, norm="forward")


def idft(bins) -> np.ndarray:
    b = as_signal(bins)
    return np.fft.ifft(b, norm="forward")


def band_slice(bins, band: Band | int) -> np.ndarray:
    """Restrict a spectrum to one band, in intra-band order.

    Positive bands return ``bins[beta:2*beta]``; negative bands return the
    mirrored bins ``n-beta, n-beta-1, ...`` (frequencies ``-beta, -beta-1,
    ...``).  ``band`` may be a ``Band`` record or an ordinal.
    """
    b = as_signal(bins)
    layout = partition(b.size)
    if not isinstance(band, Band):
        band = layout.band(band)
    elif layout.band(band.p) != band:
        raise ValueError(f"{band} is not in the layout for n={b.size}")
    return b[band_bins(band, b.size)]

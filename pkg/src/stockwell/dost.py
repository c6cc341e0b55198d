"""Discrete orthonormal Stockwell transform.

For ``p >= 2`` the basis functions are

    D[p, tau](t) = beta**-0.5 * sum_{j<beta} exp(2j*pi*(beta+j)*(t - tau/beta))

with ``D[0] = 1``, ``D[1] = exp(2j*pi*t)`` and ``D[-p, tau] = conj(D[p, tau])``.
The coefficient of band ``p`` at translate ``tau`` is the inner product
``(f, D[p, tau])``; the fast path evaluates each band as one length-beta FFT
of the restricted spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dyadic import BandIndex, BandPartition, beta, check_length, partition
from .spectrum import as_signal, dft, idft

__all__ = [
    "DostCoefficients",
    "evaluate_basis",
    "synthesize_basis",
    "forward",
    "inverse",
    "forward_direct",
    "analyze_spectrum",
    "synthesize_spectrum",
]


@dataclass
class DostCoefficients:
    layout: BandPartition
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.layout.n,):
            raise ValueError(
                f"expected {self.layout.n} coefficients, got shape {self.values.shape}"
            )

    @property
    def n(self) -> int:
        return self.layout.n

    def band(self, p: int) -> np.ndarray:
        """View of the coefficients of band ``p`` indexed by tau."""
        return self.values[self.layout.band(p).slot]

    def __getitem__(self, key) -> complex:
        if isinstance(key, BandIndex):
            key = (key.p, key.tau)
        p, tau = key
        return complex(self.values[self.layout.flat_index(BandIndex(p, tau))])

    def energy(self) -> float:
        return float(np.vdot(self.values, self.values).real)

    @classmethod
    def zeros(cls, n: int) -> "DostCoefficients":
        return cls(partition(n), np.zeros(n, dtype=np.complex128))

    @classmethod
    def unit(cls, n: int, p: int, tau: int = 0) -> "DostCoefficients":
        c = cls.zeros(n)
        c.values[c.layout.flat_index(BandIndex(p, tau))] = 1.0
        return c


def evaluate_basis(p: int, tau: int, t) -> np.ndarray:
    """Evaluate ``D[p, tau]`` at arbitrary times by direct summation.

    Only the infinite-grid families ``p in Z`` are handled here; the Nyquist
    singleton of a finite layout lives in :func:`synthesize_basis`.
    """
    t = np.asarray(t, dtype=float)
    b = beta(p)
    if not 0 <= tau < b:
        raise ValueError(f"tau={tau} out of range for band p={p}")
    if p == 0:
        return np.ones(t.shape, dtype=np.complex128)
    freqs = np.arange(b) + b if abs(p) >= 2 else np.array([1])
    shift = t[..., None] - tau / b
    vals = np.exp(2j * np.pi * freqs * shift).sum(axis=-1) / np.sqrt(b)
    return vals if p > 0 else vals.conj()


def _exact_phase(freqs: np.ndarray, m: np.ndarray, n: int, tau: int, b: int) -> np.ndarray:
    # exp(2j*pi*f*(m/n - tau/b)) with the phase reduced in integers first
    period = n * b
    idx = (freqs[None, :] * (m[:, None] * b - tau * n)) % period
    return np.exp(2j * np.pi * idx / period)


def synthesize_basis(index: BandIndex, n: int) -> np.ndarray:
    """Samples of ``D[p, tau]`` at ``t = m/n`` by direct summation."""
    layout = partition(n)
    band = layout.check_index(index)
    m = np.arange(n, dtype=np.int64)
    if band.nyquist:
        return np.exp(2j * np.pi * (n // 2) * m / n)
    # translates are circular shifts by n/beta samples (exact on the grid)
    return np.roll(_prototype(band.p, n), index.tau * (n // band.beta))


@lru_cache(maxsize=256)
def _prototype(p: int, n: int) -> np.ndarray:
    b = beta(p)
    m = np.arange(n, dtype=np.int64)
    if p == 0:
        out = np.ones(n, dtype=np.complex128)
    else:
        freqs = np.arange(b, dtype=np.int64) + b if abs(p) >= 2 else np.array([1], dtype=np.int64)
        out = np.zeros(n, dtype=np.complex128)
        chunk = max(1, (1 << 20) // n)
        for start in range(0, freqs.size, chunk):
            out += _exact_phase(freqs[start:start + chunk], m, n, 0, b).sum(axis=1)
        out /= np.sqrt(b)
        if p < 0:
            out = out.conj()
    out.setflags(write=False)
    return out


def _band_view(arr: np.ndarray, band, n: int) -> np.ndarray:
    # bins of a band as a strided view, in intra-band order (no copy)
    if band.nyquist:
        return arr[n // 2:n // 2 + 1]
    if band.p >= 0:
        return arr[band.beta:2 * band.beta] if band.p >= 2 else arr[band.p:band.p + 1]
    return arr[n - band.beta:n - 2 * band.beta:-1]  # beta <= n/4, so the stop stays positive


def analyze_spectrum(bins: np.ndarray, layout: BandPartition) -> np.ndarray:
    """Band-wise DOST analysis of a spectrum given in the 1/n convention.

    ``sqrt(beta) * ifft`` is the orthonormal inverse FFT, and
    ``fft / sqrt(beta)`` the orthonormal forward one.
    """
    n = layout.n
    out = np.empty(n, dtype=np.complex128)
    for band in layout.bands:
        seg = _band_view(bins, band, n)
        if band.beta == 1:
            out[band.offset] = seg[0]
        elif band.p > 0:
            np.fft.ifft(seg, norm="ortho", out=out[band.slot])
        else:
            np.fft.fft(seg, norm="ortho", out=out[band.slot])
    return out


def synthesize_spectrum(values: np.ndarray, layout: BandPartition) -> np.ndarray:
    """Spectrum of ``sum_{p,tau} values[p,tau] * D[p,tau]``."""
    n = layout.n
    bins = np.empty(n, dtype=np.complex128)
    for band in layout.bands:
        seg = values[band.slot]
        dest = _band_view(bins, band, n)
        if band.beta == 1:
            dest[0] = seg[0]
        elif band.p > 0:
            np.fft.fft(seg, norm="ortho", out=dest)
        else:
            np.fft.ifft(seg, norm="ortho", out=dest)
    return bins


def forward(samples) -> DostCoefficients:
    """Fast DOST coefficients ``(f, D[p, tau])`` for every band, O(n log n)."""
    x = as_signal(samples)
    layout = partition(x.size)
    return DostCoefficients(layout, analyze_spectrum(dft(x), layout))


def inverse(coeffs: DostCoefficients) -> np.ndarray:
    """Signal samples ``sum f[p, tau] D[p, tau]``."""
    return idft(synthesize_spectrum(coeffs.values, coeffs.layout))


def forward_direct(samples, block: int = 1 << 20) -> DostCoefficients:
    """Brute-force inner products against sampled basis functions, O(n^2).

    Each band's translates are circular shifts of its ``tau = 0`` member by
    ``n/beta`` samples; they are materialized in blocks of at most ``block``
    entries to bound memory.
    """
    x = as_signal(samples)
    n = x.size
    layout = partition(n)
    out = np.empty(n, dtype=np.complex128)
    for band in layout.bands:
        proto = synthesize_basis(BandIndex(band.p, 0), n)
        step = n // band.beta
        rows = max(1, block // n)
        for start in range(0, band.beta, rows):
            taus = np.arange(start, min(band.beta, start + rows))
            idx = (np.arange(n)[None, :] - (taus * step)[:, None]) % n
            basis = proto[idx]
            out[band.offset + taus] = basis.conj() @ x / n
    return DostCoefficients(layout, out)


def basis_matrix(n: int) -> np.ndarray:
    """All sampled basis functions as columns, in layout order."""
    layout = partition(n)
    return np.column_stack([synthesize_basis(b, n) for b in layout.indices()])


def band_prototype(p: int, n: int) -> np.ndarray:
    """Sampled ``D[p, 0]``; convenient for plotting a band's shape."""
    check_length(n)
    return synthesize_basis(BandIndex(p, 0), n)

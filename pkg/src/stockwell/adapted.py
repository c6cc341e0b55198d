"""Window-adapted Stockwell bases and their frame.

The adapted basis ``E[p, tau]`` replaces the unit weights of the DOST basis
with reciprocal window samples::

    E[p, tau](t) = beta**-0.5 * sum_j c[p, j]**-1 * exp(2j*pi*(beta+j)*(t - tau/beta))

Its analysis coefficients equal the DOST coefficients of the signal whose
spectrum has been multiplied by ``R`` (see :func:`windows.multiplier`), so
analysis costs one extra O(n) pass over the FFT path.  ``F[p, tau] =
E[p, tau] / N[p]`` is the unit-norm version; its frame operator is diagonal
in frequency with symbol ``|R(k) / N[band(k)]|**2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import dost
from .dost import DostCoefficients
from .dyadic import BandIndex, BandPartition, partition
from .spectrum import as_signal, dft, idft, norm2
from .windows import Window, ZeroOnSupport, c_arguments, multiplier, validate


class FrameViolation(RuntimeError):
    """A Rayleigh quotient fell outside the theoretical frame bounds."""


@dataclass
class AdaptedCoefficients(DostCoefficients):
    window_id: str = "boxcar"
    normalized: bool = False


@dataclass(frozen=True)
class BandNorms:
    layout: BandPartition
    values: np.ndarray  # one entry per band, in layout order

    def __getitem__(self, p: int) -> float:
        return float(self.values[self.layout.bands.index(self.layout.band(p))])

    def per_bin(self) -> np.ndarray:
        """Norm of the band owning each DFT bin."""
        out = np.empty(self.layout.n)
        out[self.layout.bin_order] = self.values[self.layout.band_of_slot]
        return out


def band_norms(w: Window, n: int) -> BandNorms:
    """``N[p] = ||E[p, tau]||``, the RMS of ``|R|`` over the band's bins."""
    layout = partition(n)
    mag2 = np.abs(multiplier(w, n)[layout.bin_order]) ** 2
    vals = np.array([np.sqrt(mag2[b.slot].mean()) for b in layout.bands])
    return BandNorms(layout, vals)


def normalized_multiplier(w: Window, n: int) -> np.ndarray:
    """``R(k) / N[band(k)]``, the multiplier of the unit-norm basis."""
    return multiplier(w, n) / band_norms(w, n).per_bin()


def _symbol(w: Window, n: int, normalized: bool) -> np.ndarray:
    return normalized_multiplier(w, n) if normalized else multiplier(w, n)


def synthesize_adapted_basis(w: Window, index: BandIndex, n: int, normalized: bool = False) -> np.ndarray:
    """Samples of ``E[p, tau]`` (or ``F[p, tau]``) at ``t = m/n`` by direct summation.

    Negative bands are conjugates of positive ones; DC and Nyquist use unit
    weights and coincide with the DOST functions.
    """
    layout = partition(n)
    band = layout.check_index(index)
    if band.p == 0 or band.nyquist:
        return dost.synthesize_basis(index, n)
    q = abs(band.p)
    weights = 1.0 / np.conj(w(c_arguments(q)))
    _check_weights(weights, q)
    freqs = np.arange(band.beta, dtype=np.int64) + (band.beta if q >= 2 else 1)
    m = np.arange(n, dtype=np.int64)
    vals = (dost._exact_phase(freqs, m, n, index.tau, band.beta) * weights).sum(axis=1)
    vals /= np.sqrt(band.beta)
    if band.p < 0:
        vals = vals.conj()
    if normalized:
        vals /= band_norms(w, n)[band.p]
    return vals


def _check_weights(weights: np.ndarray, p: int) -> None:
    if not np.all(np.isfinite(weights)):
        raise ZeroOnSupport(f"window vanishes on the arguments of band p={p}")


def forward_adapted(w: Window, samples, normalized: bool = False) -> AdaptedCoefficients:
    """Coefficients ``(f, E[p, tau])`` or ``(f, F[p, tau])`` in O(n log n)."""
    x = as_signal(samples)
    layout = partition(x.size)
    bins = dft(x) * _symbol(w, x.size, normalized)
    return AdaptedCoefficients(layout, dost.analyze_spectrum(bins, layout), w.window_id, normalized)


def _check_match(w: Window, coeffs: DostCoefficients, normalized: bool | None) -> bool:
    if isinstance(coeffs, AdaptedCoefficients):
        if coeffs.window_id != w.window_id:
            raise ValueError(
                f"coefficients were computed with window {coeffs.window_id!r}, not {w.window_id!r}"
            )
        if normalized is not None and normalized != coeffs.normalized:
            raise ValueError("normalized flag does not match the coefficients")
        return coeffs.normalized
    return bool(normalized)


def inverse_adapted(w: Window, coeffs: DostCoefficients, normalized: bool | None = None) -> np.ndarray:
    """Invert :func:`forward_adapted`: the signal whose adapted coefficients are ``coeffs``."""
    normalized = _check_match(w, coeffs, normalized)
    bins = dost.synthesize_spectrum(coeffs.values, coeffs.layout)
    return idft(bins / _symbol(w, coeffs.n, normalized))


def synthesize_adapted(w: Window, coeffs: DostCoefficients, normalized: bool | None = None) -> np.ndarray:
    """Frame synthesis ``sum c[p, tau] E[p, tau]`` (or with ``F``)."""
    normalized = _check_match(w, coeffs, normalized)
    bins = dost.synthesize_spectrum(coeffs.values, coeffs.layout)
    return idft(bins * np.conj(_symbol(w, coeffs.n, normalized)))


def frame_symbol(w: Window, n: int) -> np.ndarray:
    """Diagonal of the F-frame operator in frequency: ``|R(k) / N[band(k)]|**2``."""
    return np.abs(normalized_multiplier(w, n)) ** 2


def dual_analysis(w: Window, samples) -> AdaptedCoefficients:
    """Canonical dual-frame coefficients ``(f, S^-1 F[p, tau])``."""
    x = as_signal(samples)
    pre = idft(dft(x) / frame_symbol(w, x.size))
    return forward_adapted(w, pre, normalized=True)


@dataclass
class FrameReport:
    window_id: str
    n: int
    trials: int
    q_min: float
    q_max: float
    lower: float
    upper: float
    exact_min: float
    exact_max: float

    @property
    def ok(self) -> bool:
        return self.q_min >= self.lower - 1e-9 and self.q_max <= self.upper + 1e-9


def rayleigh_quotient(w: Window, samples) -> float:
    x = as_signal(samples)
    c = forward_adapted(w, x, normalized=True)
    return c.energy() / norm2(x)


def random_signal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Complex Gaussian signal scaled to unit norm."""
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return x / np.sqrt(norm2(x))


def frame_analysis(w: Window, n: int, trials: int = 100, seed: int = 0) -> FrameReport:
    """Empirical and exact frame bounds of the unit-norm adapted basis.

    Raises ``FrameViolation`` if a sampled quotient leaves the theoretical
    interval ``[(delta/M)**2, (M/delta)**2]`` by more than 1e-9.
    """
    bounds = validate(w)
    rng = np.random.default_rng(seed)
    qs = np.array([rayleigh_quotient(w, random_signal(rng, n)) for _ in range(trials)])
    sym = frame_symbol(w, n)
    report = FrameReport(
        w.window_id, n, trials,
        float(qs.min()) if trials else float("nan"),
        float(qs.max()) if trials else float("nan"),
        bounds.lower, bounds.upper, float(sym.min()), float(sym.max()),
    )
    tol = 1e-9
    if trials and not report.ok:
        raise FrameViolation(
            f"Rayleigh quotients [{report.q_min:.12g}, {report.q_max:.12g}] "
            f"outside [{report.lower:.12g}, {report.upper:.12g}]"
        )
    if report.exact_min < report.lower - tol or report.exact_max > report.upper + tol:
        raise FrameViolation(
            f"frame symbol range [{report.exact_min:.12g}, {report.exact_max:.12g}] "
            f"outside [{report.lower:.12g}, {report.upper:.12g}]"
        )
    return report

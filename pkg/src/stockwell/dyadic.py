"""Dyadic frequency-band geometry.

Band ``p >= 2`` covers the DFT bins ``[beta(p), 2*beta(p) - 1]`` with width
``beta(p) = 2**(p-1)`` and center ``nu(p) = 3*2**(p-2)``.  Bands 0 and 1 are
the singletons ``{0}`` and ``{1}``; negative ordinals mirror positive ones
onto negative frequencies.

On a length-``n`` grid the bin ``n/2`` is not covered by the symmetric
scheme, so the layout adds one singleton Nyquist band.  It is labelled with
the ordinal ``log2(n)`` (the band that would start at ``n/2``, truncated to
its first bin); its ``Band`` record carries ``beta=1`` and ``nu=n/2``.

Canonical layout order, used for every flat coefficient array::

    p = 0, 1, ..., log2(n)-1, Nyquist, -1, -2, ..., -(log2(n)-1)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

MIN_LENGTH = 8


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def check_length(n: int) -> int:
    """Return ``log2(n)``; raise ``ValueError`` unless n is a power of two >= 8."""
    if not is_power_of_two(n):
        raise ValueError(f"signal length must be a power of two, got {n!r}")
    if n < MIN_LENGTH:
        raise ValueError(f"signal length must be at least {MIN_LENGTH}, got {n}")
    return int(n).bit_length() - 1


def beta(p: int) -> int:
    """Width of band ``p``."""
    q = abs(int(p))
    return 1 if q <= 1 else 1 << (q - 1)


def nu(p: int) -> int:
    """Center frequency of band ``p`` (signed)."""
    q = abs(int(p))
    if q == 0:
        return 0
    c = 1 if q == 1 else 3 << (q - 2)
    return c if p > 0 else -c


@dataclass(frozen=True)
class BandIndex:
    p: int
    tau: int = 0


@dataclass(frozen=True)
class Band:
    p: int
    beta: int
    nu: int
    offset: int
    nyquist: bool = False

    @property
    def stop(self) -> int:
        return self.offset + self.beta

    @property
    def slot(self) -> slice:
        return slice(self.offset, self.offset + self.beta)


@dataclass(frozen=True)
class BandPartition:
    n: int
    bands: tuple[Band, ...]
    nyquist_slot: int

    def __len__(self) -> int:
        return len(self.bands)

    def __iter__(self):
        return iter(self.bands)

    @cached_property
    def _by_p(self) -> dict[int, Band]:
        return {b.p: b for b in self.bands}

    def band(self, p: int) -> Band:
        try:
            return self._by_p[int(p)]
        except KeyError:
            raise ValueError(f"band p={p} is not in the layout for n={self.n}") from None

    @property
    def nyquist(self) -> Band:
        return self.bands[self.nyquist_slot]

    @property
    def nyquist_p(self) -> int:
        return self.nyquist.p

    def check_index(self, b: BandIndex) -> Band:
        band = self.band(b.p)
        if not 0 <= b.tau < band.beta:
            raise ValueError(f"tau={b.tau} out of range for band p={b.p} (beta={band.beta})")
        return band

    def indices(self):
        """Yield every ``BandIndex`` in layout order."""
        for band in self.bands:
            for tau in range(band.beta):
                yield BandIndex(band.p, tau)

    def flat_index(self, b: BandIndex) -> int:
        return self.check_index(b).offset + b.tau

    @cached_property
    def bin_order(self) -> np.ndarray:
        """DFT bin feeding each flat slot, band-major in layout order.

        Positive bands list bins ascending, negative bands list the mirrored
        bins ``n-beta, n-beta-1, ...`` so slot ``j`` of band ``-p`` holds
        frequency ``-(beta+j)``.
        """
        order = np.empty(self.n, dtype=np.intp)
        for band in self.bands:
            order[band.slot] = band_bins(band, self.n)
        order.setflags(write=False)
        return order

    @cached_property
    def band_of_slot(self) -> np.ndarray:
        """Position in ``bands`` of the band owning each flat slot."""
        out = np.empty(self.n, dtype=np.intp)
        for i, band in enumerate(self.bands):
            out[band.slot] = i
        out.setflags(write=False)
        return out

    def to_json(self) -> list[dict]:
        return [{"p": b.p, "beta": b.beta, "nu": b.nu, "offset": b.offset} for b in self.bands]


def band_bins(band: Band, n: int) -> np.ndarray:
    """DFT bin indices of ``band`` on a length-``n`` grid, in intra-band order."""
    if band.nyquist:
        return np.array([n // 2], dtype=np.intp)
    if band.p == 0:
        return np.array([0], dtype=np.intp)
    j = np.arange(band.beta, dtype=np.intp)
    if band.p > 0:
        return band.beta + j
    return (n - band.beta - j) % n


@lru_cache(maxsize=64)
def partition(n: int) -> BandPartition:
    """Canonical band layout for a length-``n`` signal."""
    L = check_length(n)
    bands: list[Band] = []
    offset = 0
    for p in range(L):
        bands.append(Band(p, beta(p), nu(p), offset))
        offset += beta(p)
    nyquist_slot = len(bands)
    bands.append(Band(L, 1, n // 2, offset, nyquist=True))
    offset += 1
    for p in range(1, L):
        bands.append(Band(-p, beta(p), nu(-p), offset))
        offset += beta(p)
    assert offset == n
    return BandPartition(n, tuple(bands), nyquist_slot)


def band_of_frequency(k: int, n: int) -> tuple[int, int]:
    """Map DFT bin ``k`` to ``(p, j)``, the band and the offset inside it.

    Bins above ``n/2`` are negative frequencies; bin ``n/2`` is the Nyquist
    singleton.

    >>> band_of_frequency(6, 16)
    (3, 2)
    >>> band_of_frequency(15, 16)
    (-1, 0)
    """
    L = check_length(n)
    if not 0 <= k < n:
        raise ValueError(f"bin {k} outside [0, {n})")
    if k == n // 2:
        return L, 0
    f = k if k < n // 2 else k - n
    a = abs(f)
    if a == 0:
        return 0, 0
    q = a.bit_length()  # a in [2**(q-1), 2**q - 1]
    j = a - beta(q) if q >= 2 else 0
    return (q if f > 0 else -q), j

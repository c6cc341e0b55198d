"""Admissible windows, the reciprocal-window multiplier and frame bounds.

A window is described by its Fourier transform ``phi_hat`` on the support
``(-1/3, 1/3)``.  It must be bounded, nonzero on the support and have a
finite limit at ``-1/3``.  Values at the endpoints are taken as one-sided
limits; outside the closed support the window is zero.

Window spec strings::

    boxcar
    gaussian:mu=<float>,sigma=<float>
    file:<path>        CSV rows "xi,re,im", xi strictly increasing over [-1/3, 1/3]
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .dyadic import beta, check_length

THIRD = 1.0 / 3.0
DEFAULT_GRID = 4097
MIN_GRID = 1025
_EDGE_TOL = 1e-12


class WindowError(ValueError):
    pass


class ZeroOnSupport(WindowError):
    """The window vanishes somewhere inside (-1/3, 1/3)."""


class NonFinite(WindowError):
    """The window takes a non-finite value on its support."""


@dataclass(frozen=True, eq=False)
class Window:
    kind: str
    mu: float = 0.0
    sigma: float = 1.0
    xi: np.ndarray | None = field(default=None, repr=False)
    table: np.ndarray | None = field(default=None, repr=False)
    source: str = ""

    def __post_init__(self):
        if self.kind not in ("boxcar", "gaussian", "tabulated"):
            raise WindowError(f"unknown window kind {self.kind!r}")
        if self.kind == "gaussian" and not (np.isfinite(self.sigma) and self.sigma > 0):
            raise WindowError(f"gaussian sigma must be positive, got {self.sigma}")
        if self.kind == "tabulated":
            _check_table(self.xi, self.table)

    @property
    def window_id(self) -> str:
        if self.kind == "boxcar":
            return "boxcar"
        if self.kind == "gaussian":
            return f"gaussian:mu={self.mu:g},sigma={self.sigma:g}"
        return f"file:{self.source}"

    def __str__(self) -> str:
        return self.window_id

    def __call__(self, xi) -> np.ndarray:
        """``phi_hat(xi)``; zero outside the closed support ``[-1/3, 1/3]``."""
        x = np.asarray(xi, dtype=float)
        inside = np.abs(x) <= THIRD + _EDGE_TOL
        xc = np.clip(x, -THIRD, THIRD)
        if self.kind == "boxcar":
            vals = np.ones(x.shape, dtype=np.complex128)
        elif self.kind == "gaussian":
            vals = np.exp(-((xc - self.mu) ** 2) / (2.0 * self.sigma**2)).astype(np.complex128)
        else:
            vals = np.interp(xc, self.xi, self.table.real) + 1j * np.interp(
                xc, self.xi, self.table.imag
            )
        return np.where(inside, vals, 0.0)

    @property
    def left_limit(self) -> complex:
        return complex(self(-THIRD))

    def critical_points(self) -> np.ndarray:
        """Points where |phi_hat| may attain an extremum beyond the uniform grid."""
        if self.kind == "gaussian":
            return np.array([np.clip(self.mu, -THIRD, THIRD)])
        if self.kind == "tabulated":
            return self.xi[np.abs(self.xi) <= THIRD]
        return np.empty(0)


def _check_table(xi, table):
    if xi is None or table is None:
        raise WindowError("tabulated window needs xi and values")
    if xi.ndim != 1 or xi.shape != table.shape or xi.size < 2:
        raise WindowError("tabulated window: xi and values must be 1-D of equal length >= 2")
    if not np.all(np.diff(xi) > 0):
        raise WindowError("tabulated window: xi must be strictly increasing")
    if xi[0] > -THIRD + 1e-9 or xi[-1] < THIRD - 1e-9:
        raise WindowError("tabulated window: xi must span [-1/3, 1/3]")


def boxcar() -> Window:
    return Window("boxcar")


def gaussian(mu: float = 0.0, sigma: float = 1.0) -> Window:
    """Truncated Gaussian ``exp(-(xi - mu)**2 / (2 sigma**2))`` on (-1/3, 1/3)."""
    return Window("gaussian", mu=float(mu), sigma=float(sigma))


def tabulated(xi, values, source: str = "") -> Window:
    xi = np.asarray(xi, dtype=float)
    values = np.asarray(values, dtype=np.complex128)
    return Window("tabulated", xi=xi, table=values, source=source)


def load_table(path) -> Window:
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].lstrip().startswith("#"):
                continue
            try:
                vals = [float(v) for v in rec]
            except ValueError:
                if not rows:  # header line
                    continue
                raise WindowError(f"{path}: bad row {rec!r}") from None
            if len(vals) == 2:
                vals.append(0.0)
            if len(vals) != 3:
                raise WindowError(f"{path}: expected 'xi,re,im', got {rec!r}")
            rows.append(vals)
    if not rows:
        raise WindowError(f"{path}: empty window table")
    arr = np.array(rows)
    return tabulated(arr[:, 0], arr[:, 1] + 1j * arr[:, 2], source=str(path))


def parse_window(spec: str | Window | None) -> Window | None:
    """Build a window from a spec string; ``None`` and ``"none"`` give ``None``."""
    if spec is None or isinstance(spec, Window):
        return spec
    spec = spec.strip()
    if spec.lower() in ("", "none"):
        return None
    if spec == "boxcar":
        return boxcar()
    if spec.startswith("gaussian"):
        params = {"mu": 0.0, "sigma": 1.0}
        _, _, rest = spec.partition(":")
        for item in filter(None, rest.split(",")):
            key, eq, val = item.partition("=")
            key = key.strip()
            if not eq or key not in params:
                raise WindowError(f"bad gaussian parameter {item!r} in {spec!r}")
            try:
                params[key] = float(val)
            except ValueError:
                raise WindowError(f"bad value for {key} in {spec!r}") from None
        return gaussian(**params)
    if spec.startswith("file:"):
        return load_table(spec[5:])
    raise WindowError(f"unrecognized window spec {spec!r}")


@dataclass(frozen=True)
class FrameBounds:
    delta: float
    m_sup: float

    @property
    def lower(self) -> float:
        return (self.delta / self.m_sup) ** 2

    @property
    def upper(self) -> float:
        return (self.m_sup / self.delta) ** 2


def _check_values(vals: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(vals)):
        raise NonFinite(f"non-finite window value on {what}")
    mag = np.abs(vals)
    if np.any(mag == 0):
        raise ZeroOnSupport(f"window vanishes on {what}")
    return mag


def validate(w: Window, grid_size: int = DEFAULT_GRID) -> FrameBounds:
    """Check admissibility on a uniform grid over [-1/3, 1/3] and return (delta, M).

    delta and M are the min and max of ``|phi_hat|`` over the grid (plus the
    table nodes or Gaussian peak), i.e. approximations of the true inf/sup.
    """
    if grid_size < MIN_GRID:
        raise ValueError(f"grid_size must be >= {MIN_GRID}, got {grid_size}")
    grid = np.concatenate([np.linspace(-THIRD, THIRD, grid_size), w.critical_points()])
    mag = _check_values(w(grid), "the validation grid")
    if w.kind == "tabulated":
        _check_values(w.table[np.abs(w.xi) <= THIRD], "the window table")
    return FrameBounds(float(mag.min()), float(mag.max()))


def c_arguments(p: int) -> np.ndarray:
    """Window arguments ``(beta + j - nu)/nu`` for j = 0..beta-1 (p >= 1)."""
    if p < 1:
        raise ValueError(f"c_phi is defined for positive p only, got p={p}")
    if p == 1:
        return np.zeros(1)
    b = beta(p)
    return (2.0 * np.arange(b) - b) / (3.0 * b)


def c_phi(w: Window, p: int, j: int) -> complex:
    """``conj(phi_hat((beta(p) + j - nu(p)) / nu(p)))``."""
    args = c_arguments(p)
    if not 0 <= j < args.size:
        raise ValueError(f"j={j} out of range for band p={p}")
    return complex(np.conj(w(args[j])))


def multiplier(w: Window, n: int) -> np.ndarray:
    """Per-bin multiplier ``R(k)`` turning adapted analysis into DOST analysis.

    ``R(beta + j) = 1 / phi_hat(arg_j)`` on positive bands, ``R(n - k) =
    conj(R(k))`` on negative ones, and 1 at DC and Nyquist.
    """
    L = check_length(n)
    R = np.ones(n, dtype=np.complex128)
    for p in range(1, L):
        vals = w(c_arguments(p))
        _check_values(vals, f"band p={p}")
        b = beta(p)
        R[b:b + vals.size] = 1.0 / vals
    half = n // 2
    R[half + 1:] = R[1:half][::-1].conj()
    return R


def z_norm(w: Window, grid_size: int = DEFAULT_GRID) -> float:
    """Squared Z-norm ``int |phi_hat|^2 / |1 + xi| dxi`` by the trapezoidal rule."""
    if grid_size < MIN_GRID:
        raise ValueError(f"grid_size must be >= {MIN_GRID}, got {grid_size}")
    xi = np.linspace(-THIRD, THIRD, grid_size)
    vals = w(xi)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("non-finite window value in Z-norm quadrature")
    return float(np.trapezoid(np.abs(vals) ** 2 / np.abs(1.0 + xi), xi))

"""Shared numerical substrate: grids, sampled functions, DFT, special
functions, and power-law fitting.

Fourier convention throughout the package:

    u_hat(xi) = int e^{-i x xi} u(x) dx,
    u(x)      = (1/2pi) int e^{+i x xi} u_hat(xi) dxi.

All spectral operators evaluate their multiplier under this convention.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.special as sps

from .errors import (
    GammaPoleError,
    LengthMismatchError,
    NonFiniteInputError,
    PowerFitError,
)


@dataclass(frozen=True)
class FractionalOrder:
    """Order parameter a of an operator of order 2a, restricted to (0, 1)."""

    a: float

    def __post_init__(self):
        if not (0.0 < self.a < 1.0):
            raise ValueError(f"fractional order must lie in (0,1), got {self.a}")

    def __float__(self):
        return float(self.a)


def as_order(a) -> float:
    """Validate and unwrap a fractional order given as float or FractionalOrder."""
    val = float(a)
    if not (0.0 < val < 1.0):
        raise ValueError(f"fractional order must lie in (0,1), got {val}")
    return val


@dataclass(frozen=True)
class UniformGrid1D:
    x_min: float
    x_max: float
    n: int
    h: float = field(init=False)

    def __post_init__(self):
        if self.n < 8:
            raise ValueError("grid needs at least 8 points")
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        object.__setattr__(self, "h", (self.x_max - self.x_min) / (self.n - 1))

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)


@dataclass(frozen=True)
class SampledFunction:
    """Values of a function on a uniform 1D grid; the package's currency."""

    grid: UniformGrid1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if len(vals) != self.grid.n:
            raise LengthMismatchError(
                f"{len(vals)} values on a grid of {self.grid.n} points")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteInputError("sampled values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return self.grid.points()

    def with_values(self, values) -> "SampledFunction":
        return SampledFunction(self.grid, np.asarray(values))

    @staticmethod
    def from_callable(grid: UniformGrid1D, fn) -> "SampledFunction":
        return SampledFunction(grid, np.asarray(fn(grid.points())))


@dataclass(frozen=True)
class SpectralFunction:
    """DFT coefficients approximating u_hat at the stored frequencies."""

    frequencies: np.ndarray
    coefficients: np.ndarray
    grid: UniformGrid1D

    def __post_init__(self):
        if len(self.frequencies) != len(self.coefficients):
            raise LengthMismatchError("frequency/coefficient length mismatch")


def dft_forward(u: SampledFunction) -> SpectralFunction:
    """Approximate u_hat on the grid's natural frequency bins.

    The trapezoid sum h * sum_j e^{-i x_j xi_k} u_j is assembled from the
    plain FFT with the grid-offset phase; bins are in fftfreq order.
    """
    vals = np.asarray(u.values)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteInputError("dft_forward requires finite input")
    g = u.grid
    xi = 2.0 * np.pi * np.fft.fftfreq(g.n, d=g.h)
    coeff = g.h * np.exp(-1j * g.x_min * xi) * np.fft.fft(vals)
    return SpectralFunction(xi, coeff, g)


def dft_inverse(U: SpectralFunction) -> SampledFunction:
    """Invert dft_forward exactly (round trip at machine precision)."""
    g = U.grid
    if len(U.coefficients) != g.n:
        raise LengthMismatchError("spectrum length does not match grid")
    phased = np.asarray(U.coefficients) * np.exp(1j * g.x_min * U.frequencies) / g.h
    return SampledFunction(g, np.fft.ifft(phased))


def pad_embed(u: SampledFunction, pad_factor: int = 4):
    """Zero-embed u into a larger periodic box, keeping h exactly.

    Returns the padded SampledFunction and the slice recovering the original
    nodes. The padded point count is rounded up to a power of two.
    """
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    g = u.grid
    if pad_factor == 1:
        return u, slice(0, g.n)
    total = 1 << int(np.ceil(np.log2(pad_factor * g.n)))
    left = (total - g.n) // 2
    vals = np.zeros(total, dtype=complex)
    vals[left:left + g.n] = u.values
    gp = UniformGrid1D(g.x_min - left * g.h,
                       g.x_min + (total - 1 - left) * g.h + 0.0, total)
    return SampledFunction(gp, vals), slice(left, left + g.n)


def gamma_fn(z: float) -> float:
    """Euler Gamma; rejects the poles at non-positive integers."""
    z = float(z)
    if z <= 0 and z == np.round(z):
        raise GammaPoleError(f"Gamma pole at z={z}")
    return float(sps.gamma(z))


@dataclass(frozen=True)
class PowerFit:
    """Result of a log-log power-law fit |u| ~ amplitude * d^exponent."""

    exponent: float
    amplitude: float
    residual: float
    fit_window: tuple

    def __post_init__(self):
        if self.residual < 0:
            raise ValueError("residual must be nonnegative")


def _geometric_subset(d, lo, hi, target_count):
    """Indices of d-values closest to a geometric ladder spanning [lo, hi]."""
    ladder = np.geomspace(lo, hi, target_count)
    idx = np.unique([int(np.argmin(np.abs(d - t))) for t in ladder])
    return idx


def fit_power_law(samples: SampledFunction, anchor: float, window,
                  min_points: int = 8) -> PowerFit:
    """Least-squares fit of log|u| against log(distance to anchor).

    Sample abscissae are thinned to a geometric ladder inside the window so
    the fit weighs decades evenly. Rejects windows with fewer than
    ``min_points`` usable points or with sign changes of u.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (0 < lo < hi):
        raise PowerFitError(f"bad window {window}")
    x = samples.x
    d = np.abs(x - anchor)
    mask = (d >= lo) & (d <= hi)
    if np.count_nonzero(mask) < min_points:
        raise PowerFitError("fewer than %d points in window" % min_points)
    vals = np.asarray(samples.values)[mask]
    if np.iscomplexobj(vals):
        if np.max(np.abs(vals.imag)) > 1e-12 * max(np.max(np.abs(vals)), 1e-300):
            raise PowerFitError("complex-valued data in fit window")
        vals = vals.real
    if np.any(vals == 0):
        raise PowerFitError("zero values inside fit window")
    if np.any(vals > 0) and np.any(vals < 0):
        raise PowerFitError("sign change inside fit window")
    dwin = d[mask]
    count = min(48, max(min_points, np.count_nonzero(mask)))
    sub = _geometric_subset(dwin, dwin.min(), dwin.max(), count)
    if len(sub) < min_points:
        raise PowerFitError("geometric thinning left fewer than %d points"
                            % min_points)
    ld = np.log(dwin[sub])
    lv = np.log(np.abs(vals[sub]))
    slope, intercept = np.polyfit(ld, lv, 1)
    resid = float(np.max(np.abs(np.expm1(intercept + slope * ld - lv))))
    return PowerFit(float(slope), float(np.exp(intercept)), resid, (lo, hi))

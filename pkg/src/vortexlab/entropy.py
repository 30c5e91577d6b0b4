"""Configurational entropy of field slices.

A slice along x is expanded in Fourier modes; the normalized power fractions
f_n = |A_n|^2 / sum |A_m|^2 feed the Shannon-type sum S = -sum f_n log f_n.
Coefficients use the orthonormal transform scaling, pinned down by Parseval:
sum |A_n|^2 = N * mean(slice^2).  The mean is removed by default, since an
x-slice only ever sees the background ramp as an additive constant.

For localized (non-periodic) profiles the continuum analogue integrates
-f log f over the sampled spectrum, with the fraction normalized by its
maximum value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Field2D


class DegenerateSpectrumError(ValueError):
    """All spectral power vanished (flat slice): the entropy is undefined."""


@dataclass(frozen=True)
class CESpec:
    """How to cut the slice: through the global peak row or a fixed y."""

    slice_rule: str = "through_peak"  # "through_peak" | "fixed_y"
    fixed_y: float = 0.0
    exclude_mean: bool = True

    def __post_init__(self):
        if self.slice_rule not in ("through_peak", "fixed_y"):
            raise ValueError(f"unknown slice rule {self.slice_rule!r}")


@dataclass
class ModalSpectrum:
    coefficients: np.ndarray  # complex, orthonormal-scaled, modes 0..N-1
    fractions: np.ndarray     # power fractions, zero where a mode is excluded


def spectrum_1d(samples: np.ndarray, exclude_mean: bool = True) -> ModalSpectrum:
    """Discrete Fourier coefficients and normalized power fractions."""
    u = np.asarray(samples, dtype=np.float64)
    if u.ndim != 1 or len(u) < 2:
        raise ValueError("need a 1D slice of at least two samples")
    if exclude_mean:
        u = u - u.mean()
    coeff = np.fft.fft(u, norm="ortho")
    power = np.abs(coeff) ** 2
    if exclude_mean:
        power[0] = 0.0
    total = power.sum()
    if total <= 0.0 or not np.isfinite(total):
        raise DegenerateSpectrumError("slice carries no spectral power")
    return ModalSpectrum(coefficients=coeff, fractions=power / total)


def ce_periodic(spectrum: ModalSpectrum) -> float:
    """S = -sum f_n log f_n with 0 log 0 = 0 (natural logarithm)."""
    f = spectrum.fractions
    nz = f[f > 0.0]
    return float(-np.sum(nz * np.log(nz)))


def ce_nonperiodic(samples: np.ndarray, spacing: float) -> float:
    """Continuum-style entropy of a localized sampled profile.

    Builds the window transform F(k), power fractions normalized by the
    maximum fraction, and integrates -f~ log f~ over k with the trapezoid
    rule.  Inputs that do not decay at the window edges are rejected.
    """
    u = np.asarray(samples, dtype=np.float64)
    if u.ndim != 1 or len(u) < 4:
        raise ValueError("need a 1D profile of at least four samples")
    peak_mag = np.abs(u).max()
    if peak_mag == 0.0:
        raise DegenerateSpectrumError("profile is identically zero")
    if max(abs(u[0]), abs(u[-1])) > 1.0e-3 * peak_mag:
        raise ValueError("profile does not decay at the window edges")
    F = np.fft.fftshift(np.fft.fft(u)) * spacing
    k = 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(len(u), d=spacing))
    power = np.abs(F) ** 2
    dk = k[1] - k[0]
    frac = power / np.trapezoid(power, dx=dk)
    rel = frac / frac.max()
    integrand = np.zeros_like(rel)
    nz = rel > 0.0
    integrand[nz] = -rel[nz] * np.log(rel[nz])
    return float(np.trapezoid(integrand, dx=dk))


def slice_of_state(xi: Field2D, spec: CESpec) -> np.ndarray:
    g = xi.grid
    if spec.slice_rule == "through_peak":
        j = int(np.argmax(xi.interior)) // g.nx
    else:
        if not -g.ly <= spec.fixed_y <= g.ly:
            raise ValueError("fixed_y outside the domain")
        j = int(round((spec.fixed_y + g.ly) / g.hy))
        j = min(max(j, 0), g.ny)
    return xi.interior[j].copy()


def ce_of_state(xi: Field2D, spec: CESpec) -> float:
    """Entropy of the x-row selected by the slice rule."""
    return ce_periodic(spectrum_1d(slice_of_state(xi, spec), spec.exclude_mean))

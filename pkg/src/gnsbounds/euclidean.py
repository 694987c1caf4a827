"""Closed-form lower bounds for the sharp GNS constant G(d) on R^d.

Three families of constants for the inequality

    ||grad u||_2^2 * ||u||_2^{4/d} >= G(d) * ||u||_{2+4/d}^{2+4/d}:

* the Nasibov interpolation chain (Hausdorff-Young with the sharp
  Babenko-Beckner constant, pushed through a Beta-function estimate),
* the high/low Fourier-splitting bound G'(d),
* the sharp Sobolev constant S_d (a lower bound for d >= 3).

All functions are pure; rho defaults to 4/d, the exponent for which the
quotient above is scale invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special_math import beta_fn, unit_sphere_area

TWO_PI = 2.0 * math.pi


def _rho_max(d: int) -> float:
    return 4.0 / (d - 2) if d >= 3 else math.inf


def alpha_of(rho: float, d: int) -> float:
    """Interpolation exponent alpha = (d/2) * rho / (rho + 2) in (0, 1)."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d!r}")
    if not 0.0 < rho < _rho_max(d):
        raise ValueError(
            f"rho={rho!r} outside admissible interval (0, {_rho_max(d)!r}) for d={d}"
        )
    if rho == 4.0 / d:
        # scale-invariant exponent: return the simplified fraction exactly
        return d / (d + 2.0)
    return 0.5 * d * rho / (rho + 2.0)


def babenko_beckner(p: float, d: int) -> float:
    """Sharp Hausdorff-Young constant ((p/2pi)^{1/p} / (p'/2pi)^{1/p'})^{d/2}."""
    if p <= 1.0 or not math.isfinite(p):
        raise ValueError(f"babenko_beckner requires 1 < p < inf, got {p!r}")
    p_conj = p / (p - 1.0)
    ratio = (p / TWO_PI) ** (1.0 / p) / (p_conj / TWO_PI) ** (1.0 / p_conj)
    return ratio ** (0.5 * d)


def nasibov_kn(rho: float, d: int) -> float:
    """Nasibov's bound k_N(rho, d) on the interpolation constant.

    k_N = (1/chi) * (|S^{d-1}| B(d/2, d(1-alpha)/(2 alpha)) / 2)^{alpha/d}
          * k_BB((rho+2)/(rho+1)),
    with chi = sqrt(alpha^alpha (1-alpha)^{1-alpha}).
    """
    alpha = alpha_of(rho, d)
    chi = math.sqrt(alpha**alpha * (1.0 - alpha) ** (1.0 - alpha))
    b = beta_fn(0.5 * d, d * (1.0 - alpha) / (2.0 * alpha))
    geometric = (unit_sphere_area(d) * b / 2.0) ** (alpha / d)
    return geometric / chi * babenko_beckner((rho + 2.0) / (rho + 1.0), d)


def g_nasibov(d: int) -> float:
    """Lower bound G_N(d) = k_N(4/d, d)^{-2/alpha} with alpha = d/(d+2)."""
    rho = 4.0 / d
    alpha = alpha_of(rho, d)
    return nasibov_kn(rho, d) ** (-2.0 / alpha)


def g_rumin(d: int) -> float:
    """Fourier-splitting lower bound G'(d).

    G'(d) = (2 pi)^2 d^{2+2/d} |S^{d-1}|^{-2/d} / ((d+2)(d+4)).
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d!r}")
    area = unit_sphere_area(d)
    return TWO_PI**2 * d ** (2.0 + 2.0 / d) * area ** (-2.0 / d) / ((d + 2) * (d + 4))


def sobolev_constant(d: int) -> float:
    """Sharp Sobolev constant S_d = d(d-2) |S^d|^{2/d} / 4 for d >= 3.

    |S^d| is the surface area of the unit d-sphere in R^{d+1}.
    """
    if d < 3:
        raise ValueError(f"sobolev_constant requires d >= 3, got {d!r}")
    sphere_d = unit_sphere_area(d + 1)  # |S^d| sits in R^{d+1}
    return d * (d - 2) * sphere_d ** (2.0 / d) / 4.0


@dataclass(frozen=True)
class RdBounds:
    """All closed-form R^d constants for one dimension at rho = 4/d."""

    d: int
    rho: float
    alpha: float
    chi: float
    k_bb: float
    k_n: float
    g_nasibov: float
    g_rumin: float
    s_sobolev: float | None  # defined for d >= 3 only


def rd_bounds(d: int) -> RdBounds:
    """Bundle of every closed-form constant for dimension d (rho = 4/d)."""
    rho = 4.0 / d
    alpha = alpha_of(rho, d)
    chi = math.sqrt(alpha**alpha * (1.0 - alpha) ** (1.0 - alpha))
    k_bb = babenko_beckner((rho + 2.0) / (rho + 1.0), d)
    k_n = nasibov_kn(rho, d)
    return RdBounds(
        d=d,
        rho=rho,
        alpha=alpha,
        chi=chi,
        k_bb=k_bb,
        k_n=k_n,
        g_nasibov=k_n ** (-2.0 / alpha),
        g_rumin=g_rumin(d),
        s_sobolev=sobolev_constant(d) if d >= 3 else None,
    )

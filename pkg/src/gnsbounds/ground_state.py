"""Radial shooting solver for the sharp GNS constant G(d).

The scale-invariant quotient K M^{2/d} / P is minimized (up to scaling) by
the positive decreasing solution of the canonical Euler-Lagrange equation

    u'' + (d-1)/r u' - u + u^{1+4/d} = 0,   u'(0) = 0,  u(inf) = 0,

found by bisection on u(0): trajectories that cross zero overshoot, those
whose derivative turns positive while 0 < u < 1 undershoot.  Integration is
fixed-step classical RK4 (deterministic); the r = 0 singularity is handled
by a quadratic series start.  K, M, P are composite-Simpson integrals with
weight r^{d-1} plus an exponential-tail correction u ~ C e^{-r}.

The Nehari identity K + M = P and the Pohozaev identity
(d-2)/2 K + d/2 M = d/(2+4/d) P serve as the solver's independent
correctness oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numba
import numpy as np
from scipy.integrate import simpson

from .cube_lab import GridFunction
from .special_math import unit_sphere_area

STEP = 1e-3
R_MAX = 25.0
DECAY_CUTOFF = 1e-10
BRACKET_LO = 1.0
BRACKET_HI = 10.0
BRACKET_HI_MAX = 1e3

STATUS_UNRESOLVED = 0
STATUS_OVERSHOOT = 1
STATUS_UNDERSHOOT = -1


class ShootingError(RuntimeError):
    """Bisection could not bracket or converge on the shooting parameter."""


@numba.njit(cache=True)
def _integrate(d, u0, h, n_steps):
    """RK4 integration of (u, v) from the series start at r = h.

    Returns (status, event_index, u_array, v_array); the arrays hold samples
    at r = i*h for i = 0..event_index.  The nonlinearity uses the odd
    extension sign(u)|u|^p so substeps crossing zero stay finite.
    """
    p = 1.0 + 4.0 / d
    u_arr = np.empty(n_steps + 1)
    v_arr = np.empty(n_steps + 1)
    u_arr[0] = u0
    v_arr[0] = 0.0

    a = (u0 - u0**p) / (2.0 * d)
    u = u0 + a * h * h
    v = 2.0 * a * h
    u_arr[1] = u
    v_arr[1] = v

    status = STATUS_UNRESOLVED
    idx = 1
    r = h
    dm1 = d - 1.0
    for i in range(2, n_steps + 1):
        # derivative: du = v, dv = u - |u|^p sign(u) - (d-1)/r v
        f1u = v
        f1v = u - math.copysign(abs(u) ** p, u) - dm1 / r * v

        r2 = r + 0.5 * h
        u2 = u + 0.5 * h * f1u
        v2 = v + 0.5 * h * f1v
        f2u = v2
        f2v = u2 - math.copysign(abs(u2) ** p, u2) - dm1 / r2 * v2

        u3 = u + 0.5 * h * f2u
        v3 = v + 0.5 * h * f2v
        f3u = v3
        f3v = u3 - math.copysign(abs(u3) ** p, u3) - dm1 / r2 * v3

        r4 = r + h
        u4 = u + h * f3u
        v4 = v + h * f3v
        f4u = v4
        f4v = u4 - math.copysign(abs(u4) ** p, u4) - dm1 / r4 * v4

        u += h / 6.0 * (f1u + 2.0 * f2u + 2.0 * f3u + f4u)
        v += h / 6.0 * (f1v + 2.0 * f2v + 2.0 * f3v + f4v)
        r = r4
        u_arr[i] = u
        v_arr[i] = v
        idx = i
        if u <= 0.0:
            status = STATUS_OVERSHOOT
            break
        if v > 0.0 and u < 1.0:
            status = STATUS_UNDERSHOOT
            break
    return status, idx, u_arr, v_arr


def _classify(d: int, u0: float, h: float, n_steps: int) -> int:
    if u0 <= 1.0:
        # 0 < u <= 1 keeps u - u^{1+4/d} >= 0, forcing eventual growth
        return STATUS_UNDERSHOOT
    status, _, _, _ = _integrate(d, u0, h, n_steps)
    return status


@dataclass(frozen=True)
class RadialProfile:
    """Shooting output: radial samples of the ground state and its integrals."""

    d: int
    u0: float
    h: float
    r_max: float
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    K: float  # integral of |grad u|^2
    M: float  # integral of u^2
    P: float  # integral of u^{2+4/d}

    @property
    def nehari_residual(self) -> float:
        return abs(self.K + self.M - self.P) / self.P

    @property
    def pohozaev_residual(self) -> float:
        d = self.d
        lhs = 0.5 * (d - 2) * self.K + 0.5 * d * self.M
        return abs(lhs - d / (2.0 + 4.0 / d) * self.P) / self.P


def _tail_moment(R: float, k: float, d: int) -> float:
    """integral_R^inf e^{-k (r-R)} r^{d-1} dr, exact."""
    return sum(
        math.comb(d - 1, j) * R ** (d - 1 - j) * math.factorial(j) / k ** (j + 1)
        for j in range(d)
    )


def _profile_from_arrays(d, u0, h, n_steps, status, idx, u_arr, v_arr) -> RadialProfile:
    # truncate at decay or at the classification event
    below = np.nonzero(u_arr[: idx + 1] < DECAY_CUTOFF)[0]
    if below.size:
        cut = int(below[0])
    elif status != STATUS_UNRESOLVED:
        cut = max(int(idx) - 1, 1)  # drop the offending event sample
    else:
        cut = int(idx)
    r = h * np.arange(cut + 1)
    u = u_arr[: cut + 1].copy()
    v = v_arr[: cut + 1].copy()
    u[u < 0.0] = 0.0

    q = 2.0 + 4.0 / d
    area = unit_sphere_area(d)
    w = r ** (d - 1)
    K = area * simpson(v * v * w, dx=h)
    M = area * simpson(u * u * w, dx=h)
    P = area * simpson(u**q * w, dx=h)

    # exponential tail u ~ u(R) e^{-(r-R)} beyond the cutoff
    R, uR = float(r[-1]), float(u[-1])
    if uR > 0.0:
        K += area * uR**2 * _tail_moment(R, 2.0, d)
        M += area * uR**2 * _tail_moment(R, 2.0, d)
        P += area * uR**q * _tail_moment(R, q, d)

    for arr in (r, u, v):
        arr.flags.writeable = False
    return RadialProfile(
        d=d, u0=u0, h=h, r_max=h * n_steps, r=r, u=u, du=v, K=K, M=M, P=P
    )


@lru_cache(maxsize=32)
def _solve_cached(d: int, tol: float, h: float, r_max: float) -> RadialProfile:
    n_steps = int(round(r_max / h))
    lo, hi = BRACKET_LO, BRACKET_HI
    while _classify(d, hi, h, n_steps) != STATUS_OVERSHOOT:
        hi *= 2.0
        if hi > BRACKET_HI_MAX:
            raise ShootingError(
                f"no overshoot found for d={d} with u0 up to {BRACKET_HI_MAX}"
            )

    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        status = _classify(d, mid, h, n_steps)
        if status == STATUS_OVERSHOOT:
            hi = mid
        elif status == STATUS_UNDERSHOOT:
            lo = mid
        else:
            # trajectory indistinguishable from the connecting orbit at this
            # resolution: the bracket midpoint is already converged
            break
    else:
        raise ShootingError(f"bisection failed to converge for d={d}")

    u0 = 0.5 * (lo + hi)
    status, idx, u_arr, v_arr = _integrate(d, u0, h, n_steps)
    return _profile_from_arrays(d, u0, h, n_steps, status, idx, u_arr, v_arr)


def solve_ground_state(
    d: int, tol: float = 1e-12, h: float = STEP, r_max: float = R_MAX
) -> RadialProfile:
    """Shoot for the positive decreasing solution in dimension d.

    `tol` is the bisection bracket width on u(0); must be >= 1e-12 (the
    trajectory separation saturates machine precision near there).
    """
    if not 1 <= d <= 6:
        raise ValueError(f"solve_ground_state supports 1 <= d <= 6, got {d!r}")
    if tol < 1e-12:
        raise ValueError(f"tol must be >= 1e-12, got {tol!r}")
    return _solve_cached(int(d), float(tol), float(h), float(r_max))


def quotient_from_integrals(d: int, K: float, M: float, P: float) -> float:
    """Scale-invariant quotient K M^{2/d} / P."""
    return K * M ** (2.0 / d) / P


def gns_numeric(profile: RadialProfile) -> float:
    """G(d) = K M^{2/d} / P evaluated on the computed minimizer.

    Refuses profiles whose Nehari/Pohozaev residuals exceed 1e-4 (bad
    shooting); the quotient is scale invariant so no normalization applies.
    """
    if profile.nehari_residual > 1e-4 or profile.pohozaev_residual > 1e-4:
        raise ValueError(
            "profile violates Nehari/Pohozaev identities: "
            f"residuals {profile.nehari_residual:.3e}, {profile.pohozaev_residual:.3e}"
        )
    return quotient_from_integrals(profile.d, profile.K, profile.M, profile.P)


def cube_upper_bound(d: int, tol: float = 1e-12) -> float:
    """Upper bound G(d)/4 for the unit-cube constant."""
    return gns_numeric(solve_ground_state(d, tol)) / 4.0


def scaled_test_function(profile: RadialProfile, lam: float, n: int) -> GridFunction:
    """Sample lam^{d/2} g(lam r) on the unit cube with a corner at the origin.

    Radial linear interpolation from the profile; requires the grid to
    resolve the scaling (h <= 1/(8 lam)).
    """
    if lam < 1.0:
        raise ValueError(f"lambda must be >= 1, got {lam!r}")
    d = profile.d
    if d not in (1, 2, 3):
        raise ValueError(f"cube grids support d in (1, 2, 3), got {d!r}")
    if 1.0 / n > 1.0 / (8.0 * lam):
        raise ValueError(f"grid too coarse for lambda={lam}: need n >= {8 * lam:.0f}")
    centers = (np.arange(n) + 0.5) / n
    axes = np.meshgrid(*([centers] * d), indexing="ij")
    radius = np.sqrt(sum(ax**2 for ax in axes))
    values = lam ** (0.5 * d) * np.interp(
        lam * radius, profile.r, profile.u, right=0.0
    )
    return GridFunction(d=d, n=n, values=values)

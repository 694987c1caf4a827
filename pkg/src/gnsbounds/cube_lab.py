"""Discretized experiments on the unit cube [0,1]^d, d <= 3.

Functions live at cell centers of a uniform n^d grid.  The variational
quotient uses forward differences with zero-flux boundaries, so the
discrete gradient is compatible with the cosine eigenbasis used by the
spectral projector.  The corner rearrangement sorts cell values onto cells
ordered by distance to the origin, which is exactly equimeasurable on the
grid and converges to the continuum corner rearrangement as h -> 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.fft


class SupportTooLargeError(ValueError):
    """Rearrangement input supported on more than the admissible volume."""


@dataclass(frozen=True)
class GridFunction:
    """Cell-centered function on [0,1]^d: values[i1,...,id] at ((i+0.5)/n)."""

    d: int
    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.d not in (1, 2, 3):
            raise ValueError(f"grid dimension must be 1, 2 or 3, got {self.d!r}")
        if self.n < 2:
            raise ValueError(f"need at least 2 cells per side, got {self.n!r}")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.n,) * self.d:
            raise ValueError(
                f"values shape {vals.shape} does not match ({self.n},)*{self.d}"
            )
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def h(self) -> float:
        return 1.0 / self.n

    @property
    def cell_volume(self) -> float:
        return self.n ** (-self.d)


def cell_centers(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


def grid_from_callable(d: int, n: int, fn) -> GridFunction:
    """Sample fn(x1, ..., xd) (vectorized) at cell centers."""
    axes = np.meshgrid(*([cell_centers(n)] * d), indexing="ij")
    return GridFunction(d=d, n=n, values=np.asarray(fn(*axes), dtype=float))


def corner_bump(d: int, n: int, width: float = 0.125) -> GridFunction:
    """Gaussian bump exp(-|x|^2 / (2 width^2)) centered at the corner origin."""
    return grid_from_callable(
        d, n, lambda *ax: np.exp(-sum(a**2 for a in ax) / (2.0 * width**2))
    )


# ---------------------------------------------------------------------------
# energies and the variational quotient
# ---------------------------------------------------------------------------

def dirichlet_energy(u: GridFunction) -> float:
    """Discrete integral of |grad u|^2: forward differences, zero-flux boundary."""
    vals, h = u.values, u.h
    scale = h ** (u.d - 2)
    return float(
        sum(np.sum(np.diff(vals, axis=ax) ** 2) for ax in range(u.d)) * scale
    )


@dataclass(frozen=True)
class QuotientBreakdown:
    grad_energy: float
    l2_mass: float
    mean: float
    denom: float
    quotient: float


def quotient(u: GridFunction) -> QuotientBreakdown:
    """Variational quotient E(u) M(u)^{2/d} / integral |u - mean|^{2+4/d}.

    M is the L^2 mass of the mean deviation u - mean(u): the infimum is the
    same as with the raw L^2 mass (means minimize the L^2 norm over shifts,
    so minimizers are mean-free either way) and the quotient becomes exactly
    invariant under constant shifts, matching the mean subtraction in the
    denominator.
    """
    cell = u.cell_volume
    grad_energy = dirichlet_energy(u)
    mean = float(cell * np.sum(u.values))  # |Q| = 1
    dev = u.values - mean
    l2_mass = float(cell * np.sum(dev**2))
    q = 2.0 + 4.0 / u.d
    denom = float(cell * np.sum(np.abs(dev) ** q))
    if denom <= 1e-300:
        raise ValueError("degenerate input: u is constant (zero denominator)")
    return QuotientBreakdown(
        grad_energy=grad_energy,
        l2_mass=l2_mass,
        mean=mean,
        denom=denom,
        quotient=grad_energy * l2_mass ** (2.0 / u.d) / denom,
    )


def _quotient_and_gradient(vals: np.ndarray, d: int, n: int):
    cell = float(n) ** (-d)
    h_scale = (1.0 / n) ** (d - 2)
    q = 2.0 + 4.0 / d

    energy = 0.0
    grad_e = np.zeros_like(vals)
    for ax in range(d):
        dif = np.diff(vals, axis=ax)
        energy += float(np.sum(dif**2))
        lo = [slice(None)] * d
        hi = [slice(None)] * d
        lo[ax] = slice(0, n - 1)
        hi[ax] = slice(1, n)
        grad_e[tuple(lo)] -= dif
        grad_e[tuple(hi)] += dif
    energy *= h_scale
    grad_e *= 2.0 * h_scale

    mean = cell * float(np.sum(vals))
    v = vals - mean
    mass = cell * float(np.sum(v**2))
    denom = cell * float(np.sum(np.abs(v) ** q))
    if denom <= 1e-300:
        raise ValueError("degenerate collapse: denominator underflow")
    w = np.abs(v) ** (q - 2.0) * v
    grad_d = cell * q * (w - cell * float(np.sum(w)))

    beta = 2.0 / d
    value = energy * mass**beta / denom
    grad = (grad_e * mass**beta + beta * energy * mass ** (beta - 1.0) * (2.0 * cell * v)
            - value * grad_d) / denom
    grad -= grad.mean()  # shift invariance makes the sum vanish; enforce exactly
    return value, grad


def minimize(
    u0: GridFunction, max_iters: int = 2000, rel_tol: float = 1e-9
) -> tuple[GridFunction, np.ndarray]:
    """Projected gradient descent on the quotient with backtracking.

    Descent direction is the zero-mean-projected gradient; the trial step is
    the Barzilai-Borwein estimate from the previous step (a unit move in the
    h-norm on the first iteration) and backtracks by halving until the
    quotient decreases, so the returned trace is nonincreasing.  Terminates
    at `rel_tol` relative decrease or `max_iters`.
    """
    d, n = u0.d, u0.n
    cell = u0.cell_volume
    vals = u0.values.astype(float).copy()
    vals -= cell * vals.sum()
    norm = math.sqrt(cell * float(np.sum(vals**2)))
    if norm <= 0.0:
        raise ValueError("degenerate input: u is constant")
    vals /= norm  # quotient is 0-homogeneous: normalize for a stable step scale

    value, grad = _quotient_and_gradient(vals, d, n)
    trace = [value]
    prev_vals = None
    prev_grad = None
    for it in range(max_iters):
        gnorm_sq = float(np.sum(grad**2))
        if gnorm_sq == 0.0:
            break
        gnorm_h = math.sqrt(cell * gnorm_sq)
        step = 1.0 / gnorm_h
        if prev_vals is not None:
            s = vals - prev_vals
            y = grad - prev_grad
            sy = float(np.sum(s * y))
            if sy > 0.0:
                bb = float(np.sum(s * s)) / sy
                if math.isfinite(bb) and bb > 0.0:
                    step = bb
        # trust cap: never move more than the iterate's own h-norm (= 1 after
        # normalization), or rough data collapses onto single-cell spikes
        step = min(step, 1.0 / gnorm_h)
        accepted = None
        while step > 1e-18:
            cand = vals - step * grad
            try:
                cand_value, cand_grad = _quotient_and_gradient(cand, d, n)
            except ValueError:
                cand_value = math.inf
                cand_grad = None
            if cand_value < value:
                accepted = (cand, cand_value, cand_grad)
                break
            step *= 0.5
        if accepted is None:
            break
        cand, cand_value, cand_grad = accepted
        if (value - cand_value) < rel_tol * abs(value):
            break  # below the resolution asked for: do not record the step
        prev_vals, prev_grad = vals, grad
        vals, value, grad = cand, cand_value, cand_grad
        trace.append(value)
        if (it + 1) % 100 == 0:
            # 0-homogeneity lets us rescale; reset the BB memory afterwards
            vals = vals - cell * vals.sum()
            vals /= math.sqrt(cell * float(np.sum(vals**2)))
            value, grad = _quotient_and_gradient(vals, d, n)
            prev_vals = prev_grad = None

    return GridFunction(d=d, n=n, values=vals), np.asarray(trace)


# ---------------------------------------------------------------------------
# cosine spectral projector
# ---------------------------------------------------------------------------

def cosine_coefficients(u: GridFunction) -> np.ndarray:
    """Orthonormal DCT-II coefficients (discrete Neumann cosine basis)."""
    if u.n & (u.n - 1):
        raise ValueError(f"grid side must be a power of two, got n={u.n}")
    return scipy.fft.dctn(u.values, type=2, norm="ortho")


def neumann_project(
    u: GridFunction, energy_cut: float, keep_mean: bool = True
) -> GridFunction:
    """Low-energy part P_{<E} u in the cosine basis.

    Retains modes with pi^2 |k|^2 < energy_cut (strict); the k = 0 mode is
    retained only when `keep_mean` and its energy 0 passes the cut.
    """
    if energy_cut < 0.0:
        raise ValueError(f"energy_cut must be >= 0, got {energy_cut!r}")
    coeffs = cosine_coefficients(u)
    grids = np.ogrid[tuple(slice(0, u.n) for _ in range(u.d))]
    k_sq = sum(g.astype(float) ** 2 for g in grids)
    mask = math.pi**2 * k_sq < energy_cut
    if not keep_mean:
        mask[(0,) * u.d] = False
    filtered = np.where(mask, coeffs, 0.0)
    back = scipy.fft.idctn(filtered, type=2, norm="ortho")
    return GridFunction(d=u.d, n=u.n, values=back)


# ---------------------------------------------------------------------------
# corner rearrangement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RearrangeConfig:
    """Support threshold V_d and corner-ball volume kappa_d = omega_d / 2^d."""

    v_threshold: float
    kappa_d: float
    conjectural: bool = False

    def __post_init__(self):
        if not self.v_threshold <= self.kappa_d + 1e-12:
            raise ValueError(
                f"v_threshold {self.v_threshold!r} exceeds corner-ball volume "
                f"kappa_d {self.kappa_d!r}"
            )


def default_rearrange_config(d: int) -> RearrangeConfig:
    """V_1 = 1 (unrestricted), V_2 = 1/pi, V_3 = pi/81 (conjectural)."""
    if d == 1:
        return RearrangeConfig(v_threshold=1.0, kappa_d=1.0)
    if d == 2:
        return RearrangeConfig(v_threshold=1.0 / math.pi, kappa_d=math.pi / 4.0)
    if d == 3:
        return RearrangeConfig(
            v_threshold=math.pi / 81.0, kappa_d=math.pi / 6.0, conjectural=True
        )
    raise ValueError(f"no rearrangement threshold for d={d!r}")


def rearrange_corner(u: GridFunction, cfg: RearrangeConfig | None = None) -> GridFunction:
    """Equimeasurable corner rearrangement.

    Cell values are sorted descending and assigned to cells sorted by
    distance of the center to the corner origin (ties broken by flat index,
    i.e. lexicographically).  All L^p cell sums are preserved exactly.
    """
    if cfg is None:
        cfg = default_rearrange_config(u.d)
    if u.d == 3 and not cfg.conjectural:
        raise ValueError("d = 3 rearrangement requires a config with conjectural=True")
    vals = u.values
    if np.any(vals < 0.0):
        raise ValueError("rearrange_corner requires a nonnegative function")
    support = int(np.count_nonzero(vals > 0.0)) * u.cell_volume
    if support > cfg.v_threshold + 1e-12:
        raise SupportTooLargeError(
            f"support measure {support:.6g} exceeds threshold {cfg.v_threshold:.6g}"
        )
    centers = cell_centers(u.n)
    axes = np.meshgrid(*([centers] * u.d), indexing="ij")
    dist_sq = sum(a**2 for a in axes).ravel()
    order = np.argsort(dist_sq, kind="stable")  # stable = lexicographic ties
    flat = np.sort(vals.ravel())[::-1]
    out = np.empty_like(flat)
    out[order] = flat
    return GridFunction(d=u.d, n=u.n, values=out.reshape(vals.shape))


def random_bandlimited_function(
    d: int, n: int, rng: np.random.Generator, k_max: int = 4
) -> GridFunction:
    """Random zero-mean field with cosine modes up to |k_i| <= k_max.

    White noise is not an H^1-consistent initial datum (its discrete
    gradient energy diverges as h -> 0 and descent collapses it onto
    lattice-scale spikes); a bandlimited field is the right random start
    for grid experiments targeting the continuum problem.
    """
    if n & (n - 1):
        raise ValueError(f"grid side must be a power of two, got n={n}")
    coeffs = np.zeros((n,) * d)
    block = tuple(slice(0, k_max + 1) for _ in range(d))
    coeffs[block] = rng.standard_normal((k_max + 1,) * d)
    coeffs[(0,) * d] = 0.0
    return GridFunction(d=d, n=n, values=scipy.fft.idctn(coeffs, type=2, norm="ortho"))


def random_supported_function(
    d: int, n: int, max_support: float, rng: np.random.Generator
) -> GridFunction:
    """Smooth random nonnegative bump field clipped to a small support.

    A few random Gaussian bumps are summed and shifted down so that at most
    floor(0.9 * max_support * n^d) cells stay positive, guaranteeing the
    support precondition of the rearrangement exactly.
    """
    centers = cell_centers(n)
    axes = np.meshgrid(*([centers] * d), indexing="ij")
    field = np.zeros((n,) * d)
    for _ in range(int(rng.integers(1, 4))):
        center = rng.uniform(0.0, 1.0, size=d)
        width = rng.uniform(0.03, 0.12)
        amp = rng.uniform(0.5, 2.0)
        r_sq = sum((a - c) ** 2 for a, c in zip(axes, center))
        field += amp * np.exp(-r_sq / (2.0 * width**2))
    keep = int(0.9 * max_support * n**d)
    flat = np.sort(field.ravel())
    threshold = flat[-(keep + 1)]
    return GridFunction(d=d, n=n, values=np.maximum(field - threshold, 0.0))


# ---------------------------------------------------------------------------
# isoperimetric threshold and concentration experiments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerimeterCheck:
    corner_ball_perimeter: float
    strip_perimeter: float
    ball_wins: bool


def perimeter_threshold_check(V: float) -> PerimeterCheck:
    """Relative perimeter of a corner quarter-disc of area V vs a strip (d=2).

    The quarter-disc boundary inside the square has length sqrt(pi V); the
    competing strip contributes 1.  Equality at V = 1/pi.
    """
    if not 0.0 < V <= 0.5:
        raise ValueError(f"V must lie in (0, 1/2], got {V!r}")
    ball = math.sqrt(math.pi * V)
    return PerimeterCheck(
        corner_ball_perimeter=ball, strip_perimeter=1.0, ball_wins=ball <= 1.0
    )


@dataclass(frozen=True)
class ConcentrationRow:
    n: int
    final_quotient: float
    sup_norm: float
    support_fraction: float
    iterations: int


def concentration_experiment(
    d: int,
    resolutions: list[int],
    max_iters: int = 4000,
    rel_tol: float = 1e-10,
    bump_width: float = 0.125,
) -> list[ConcentrationRow]:
    """Minimize from a corner bump at each resolution; report diagnostics.

    sup-norm growth and support shrinkage across rows are the concentration
    signatures; `support_fraction` counts cells above 1e-3 of the sup norm.
    """
    if d not in (1, 2):
        raise ValueError(f"concentration experiments support d in (1, 2), got {d!r}")
    if list(resolutions) != sorted(resolutions):
        raise ValueError("resolutions must be increasing")
    rows = []
    for n in resolutions:
        u0 = corner_bump(d, int(n), width=bump_width)
        final, trace = minimize(u0, max_iters=max_iters, rel_tol=rel_tol)
        # the minimizer is zero-mean (bump over a constant plateau): measure
        # the bump relative to the plateau, which the median locates
        plateau = float(np.median(final.values))
        dev = np.abs(final.values - plateau)
        sup = float(np.max(dev))
        frac = float(np.count_nonzero(dev > 1e-3 * sup)) / final.values.size
        rows.append(
            ConcentrationRow(
                n=int(n),
                final_quotient=float(trace[-1]),
                sup_norm=sup,
                support_fraction=frac,
                iterations=len(trace),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# import / export
# ---------------------------------------------------------------------------

def save_grid_function(u: GridFunction, path: str | Path) -> None:
    """Flat CSV (index,value) plus a JSON sidecar header {d, n}."""
    path = Path(path)
    with open(path, "w") as f:
        f.write("index,value\n")
        for i, v in enumerate(u.values.ravel()):
            f.write(f"{i},{v:.17g}\n")
    with open(path.with_suffix(".meta.json"), "w") as f:
        json.dump({"d": u.d, "n": u.n}, f)
        f.write("\n")


def load_grid_function(path: str | Path) -> GridFunction:
    path = Path(path)
    with open(path.with_suffix(".meta.json")) as f:
        meta = json.load(f)
    d, n = int(meta["d"]), int(meta["n"])
    values = np.empty(n**d)
    with open(path) as f:
        next(f)  # header
        for line in f:
            idx, val = line.split(",")
            values[int(idx)] = float(val)
    return GridFunction(d=d, n=n, values=values.reshape((n,) * d))

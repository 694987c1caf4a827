"""Exact weighted counting of cosine modes on the unit cube.

Each multi-index k in N_0^d indexes a Neumann eigenfunction with energy
pi^2 |k|^2 and squared normalization weight 2^ell, ell = number of nonzero
components.  S(m) = sum of weights over 0 < |k|^2 <= m is computed in exact
integer arithmetic; a certificate bounds S(r)/r^d by a candidate constant
N_d for every radius, combining the enumerated thresholds with an analytic
tail valid beyond the cutoff.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from functools import lru_cache

from .special_math import unit_ball_volume

MAX_DIM = 6
MAX_THRESHOLD = 10_000
CERTIFY_MAX_DIM = 4

#: Relative slack applied to the analytic tail comparison only.  Candidate
#: constants are typically quoted to 4-5 significant figures, slightly below
#: the exact tail value; the enumerated ratios are compared exactly.
DEFAULT_TAIL_RTOL = 1e-4


class ResourceLimitError(RuntimeError):
    """Enumeration request beyond the guarded desk-scale budget."""


@dataclass(frozen=True)
class LatticeMode:
    """One cosine mode: multi-index, nonzero count, weight 2^ell, |k|^2."""

    k: tuple[int, ...]
    ell: int
    weight: int
    energy_over_pi2: int

    @classmethod
    def from_multi_index(cls, k) -> "LatticeMode":
        k = tuple(int(c) for c in k)
        if any(c < 0 for c in k):
            raise ValueError(f"multi-index components must be >= 0, got {k!r}")
        ell = sum(1 for c in k if c != 0)
        return cls(k=k, ell=ell, weight=2**ell, energy_over_pi2=sum(c * c for c in k))


def _check_guard(d: int, m: int) -> None:
    if d < 1 or d != int(d):
        raise ValueError(f"dimension must be a positive integer, got {d!r}")
    if m < 1 or m != int(m):
        raise ValueError(f"threshold must be a positive integer, got {m!r}")
    if d > MAX_DIM or m > MAX_THRESHOLD:
        raise ResourceLimitError(
            f"enumeration guard exceeded: d={d} (max {MAX_DIM}), m={m} (max {MAX_THRESHOLD})"
        )


@lru_cache(maxsize=64)
def _cumulative_weighted_counts(d: int, m_max: int) -> tuple[int, ...]:
    """S(m) for m = 0..m_max, exact integers.

    Counts with all-positive components are built by convolving the
    perfect-square indicator d times; the weight 2^ell and the choice of
    which ell components are nonzero enter through binomial factors.
    """
    # squares[j] = 1 iff j = k^2 for some k >= 1
    squares = [0] * (m_max + 1)
    k = 1
    while k * k <= m_max:
        squares[k * k] = 1
        k += 1

    per_energy = [0] * (m_max + 1)  # sum over ell of binom(d,ell) 2^ell P_ell[j]
    positive = squares[:]           # P_ell[j]: # of k in N^ell, all parts >= 1, |k|^2 = j
    for ell in range(1, d + 1):
        if ell > 1:
            nxt = [0] * (m_max + 1)
            for j in range(ell, m_max + 1):  # minimal energy of ell positive parts is ell
                acc = 0
                k = 1
                while k * k <= j:
                    prev = positive[j - k * k]
                    if prev:
                        acc += prev
                    k += 1
                nxt[j] = acc
            positive = nxt
        coeff = math.comb(d, ell) * (1 << ell)
        for j in range(ell, m_max + 1):
            if positive[j]:
                per_energy[j] += coeff * positive[j]

    cumulative = [0] * (m_max + 1)
    running = 0
    for j in range(1, m_max + 1):
        running += per_energy[j]
        cumulative[j] = running
    return tuple(cumulative)


def weighted_count(d: int, m: int) -> int:
    """S(m) = sum of 2^ell over multi-indices with 0 < |k|^2 <= m, exact."""
    _check_guard(d, m)
    return _cumulative_weighted_counts(int(d), int(m))[int(m)]


def analytic_nd_bound(d: int) -> float:
    """Closed-form bound on N_d: sum_l binom(d,l) omega_l / l^{(d-l)/2}."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d!r}")
    return sum(
        math.comb(d, ell) * unit_ball_volume(ell) / ell ** (0.5 * (d - ell))
        for ell in range(1, d + 1)
    )


def tail_bound(d: int, r_cut: float) -> float:
    """Bound on S(r)/r^d valid for every r >= r_cut:

    sum_l binom(d,l) omega_l r_cut^{l-d}   (each term nonincreasing in r).
    Requires r_cut >= sqrt(d) so the quadrant volume comparison applies to
    every block dimension l <= d.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d!r}")
    if r_cut < math.sqrt(d) - 1e-12:
        raise ValueError(f"tail_bound requires r_cut >= sqrt(d); got {r_cut!r} for d={d}")
    return sum(
        math.comb(d, ell) * unit_ball_volume(ell) * r_cut ** (ell - d)
        for ell in range(1, d + 1)
    )


@dataclass(frozen=True)
class CountCertificate:
    """Record certifying S(r) <= N r^d for all r, or the worst violation."""

    d: int
    n_candidate: float
    m_max: int
    tail_bound: float
    verified: bool
    worst_ratio: float
    worst_m: int

    def to_json(self, **kwargs) -> str:
        return json.dumps(asdict(self), **kwargs)


def _m_max_from_r_cut(r_cut: float) -> int:
    """Largest integer threshold not covered by the tail: ceil(r_cut^2) - 1.

    r_cut^2 landing within float noise of an integer is snapped so that
    radicand-style cutoffs (sqrt(17), sqrt(19), ...) behave exactly.
    """
    r2 = r_cut * r_cut
    nearest = round(r2)
    if nearest >= 1 and abs(r2 - nearest) <= 1e-9 * max(1.0, r2):
        return int(nearest) - 1
    return math.ceil(r2) - 1


def _enumerated_worst(d: int, m_max: int) -> tuple[float, int]:
    counts = _cumulative_weighted_counts(d, m_max)
    worst_ratio = -math.inf
    worst_m = 0
    for m in range(1, m_max + 1):
        ratio = counts[m] / m ** (0.5 * d)
        if ratio > worst_ratio:
            worst_ratio = ratio
            worst_m = m
    return worst_ratio, worst_m


def certify_nd(
    d: int, n_candidate: float, r_cut: float, tail_rtol: float = DEFAULT_TAIL_RTOL
) -> CountCertificate:
    """Certify S(r)/r^d <= n_candidate for every r > 0.

    Integer thresholds m <= ceil(r_cut^2) - 1 are checked by exact
    enumeration (the step function's supremum on [sqrt(m), sqrt(m+1)) is
    S(m)/m^{d/2}, jump included); radii r >= r_cut are covered by the
    analytic tail.  The tail comparison alone carries `tail_rtol` slack.
    """
    if d > CERTIFY_MAX_DIM:
        raise ResourceLimitError(f"certify_nd guarded to d <= {CERTIFY_MAX_DIM}, got {d}")
    m_max = _m_max_from_r_cut(r_cut)
    if m_max < 1:
        raise ValueError(f"r_cut={r_cut!r} leaves no threshold to enumerate")
    _check_guard(d, m_max)
    tail = tail_bound(d, r_cut)
    worst_ratio, worst_m = _enumerated_worst(int(d), m_max)
    verified = worst_ratio <= n_candidate and tail <= n_candidate * (1.0 + tail_rtol)
    return CountCertificate(
        d=int(d),
        n_candidate=float(n_candidate),
        m_max=m_max,
        tail_bound=tail,
        verified=verified,
        worst_ratio=worst_ratio,
        worst_m=worst_m,
    )


def refined_nd(d: int, r_cut: float) -> float:
    """Smallest constant certified at the given cutoff:

    max(enumerated sup of S(m)/m^{d/2} for m <= ceil(r_cut^2)-1,
        tail_bound(d, r_cut)).
    """
    if d > CERTIFY_MAX_DIM:
        raise ResourceLimitError(f"refined_nd guarded to d <= {CERTIFY_MAX_DIM}, got {d}")
    m_max = _m_max_from_r_cut(r_cut)
    if m_max < 1:
        raise ValueError(f"r_cut={r_cut!r} leaves no threshold to enumerate")
    _check_guard(d, m_max)
    worst_ratio, _ = _enumerated_worst(int(d), m_max)
    return max(worst_ratio, tail_bound(d, r_cut))

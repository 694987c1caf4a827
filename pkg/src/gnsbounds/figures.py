"""Figure rendering for the CLI report path.

Every report command that writes delimited output also renders a matplotlib
figure next to it (PNG, Agg backend, no display needed).  Figures are
presentation only: the CSV/JSON files remain the data of record.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_DPI = 150


def _finish(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_table1_figure(rows, path) -> Path:
    path = Path(path)
    d = [row.d for row in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for label, marker in (("G_N", "o"), ("G_prime", "s"), ("G_numeric", "^")):
        ax.plot(d, [row.columns[label] for row in rows], marker=marker, label=label)
    ax.set_xlabel("dimension d")
    ax.set_ylabel("constant")
    ax.set_title("Lower bounds vs numeric sharp constant on R^d")
    ax.legend()
    return _finish(fig, path)


def save_table2_figure(rows, path) -> Path:
    path = Path(path)
    d = [row.d for row in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(d, [row.columns["G_upper"] for row in rows], marker="^", label="G(d)/4")
    ax.plot(d, [row.columns["G_2"] for row in rows], marker="o", label="G_2 (counting)")
    g1_d = [row.d for row in rows if row.columns.get("G_1") is not None]
    if g1_d:
        ax.semilogy()
        ax.plot(
            g1_d,
            [row.columns["G_1"] for row in rows if row.columns.get("G_1") is not None],
            marker="s",
            label="G_1 (convex-domain)",
        )
    ax.set_xlabel("dimension d")
    ax.set_ylabel("constant")
    ax.set_title("Unit-cube bounds")
    ax.legend()
    return _finish(fig, path)


def save_profile_figure(profile, path) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(profile.r, profile.u)
    ax.set_xlabel("r")
    ax.set_ylabel("u(r)")
    ax.set_title(f"Radial ground state, d={profile.d}, u(0)={profile.u0:.6f}")
    return _finish(fig, path)


def save_trace_figure(trace, path, title="Quotient descent") -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.semilogx(np.arange(1, len(trace) + 1), trace)
    ax.set_xlabel("iteration")
    ax.set_ylabel("quotient")
    ax.set_title(title)
    return _finish(fig, path)


def save_concentration_figure(rows, path, reference=None) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot([r.n for r in rows], [r.final_quotient for r in rows], marker="o")
    if reference is not None:
        ax.axhline(reference, linestyle="--", color="gray", label=f"reference {reference:.4f}")
        ax.legend()
    ax.set_xlabel("cells per side n")
    ax.set_ylabel("final quotient")
    ax.set_xscale("log", base=2)
    ax.set_title("Concentration: minimized quotient vs resolution")
    return _finish(fig, path)


def save_scaling_figure(lambdas, quotients, path, reference=None) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(lambdas, quotients, marker="o")
    if reference is not None:
        ax.axhline(reference, linestyle="--", color="gray", label=f"G(d)/4 = {reference:.4f}")
        ax.legend()
    ax.set_xlabel("scaling lambda")
    ax.set_ylabel("cube quotient of scaled ground state")
    ax.set_xscale("log", base=2)
    ax.set_title("Upper-bound scaling experiment")
    return _finish(fig, path)


def save_rearrange_figure(ratios, path, allowed) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.hist(ratios, bins=40)
    ax.axvline(allowed, linestyle="--", color="red", label=f"allowed {allowed:.4f}")
    ax.axvline(1.0, linestyle=":", color="gray")
    ax.set_xlabel("energy ratio after/before rearrangement")
    ax.set_ylabel("trials")
    ax.set_title("Corner rearrangement energy check")
    ax.legend()
    return _finish(fig, path)

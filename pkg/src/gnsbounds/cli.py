"""Command-line surface: bounds tables, counting certificates, experiments.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 numeric failure.  Output is deterministic for identical flags and seed;
report commands given an output location render a matplotlib figure next to
the delimited data unless --no-figures is passed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import cube_lab, domains, ground_state, lattice, reports


def _parse_r_cut(text: str) -> float:
    """Accept a float or a radicand form: '4.123', 'sqrt(17)', 'sqrt17'."""
    s = text.strip().lower()
    if s.startswith("sqrt"):
        inner = s[4:].strip("() ")
        return math.sqrt(float(inner))
    return float(s)


def _parse_int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_float_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)


def _emit_table(args, rows, table: int) -> int:
    content = reports.render(rows, table, args.format)
    sys.stdout.write(content)
    if args.out:
        out = Path(args.out)
        _write(out, content)
        if not args.no_figures:
            from . import figures

            save = figures.save_table1_figure if table == 1 else figures.save_table2_figure
            save(rows, out.with_suffix(".png"))
    return 0


def _cmd_table1(args) -> int:
    rows = reports.build_table1(d_max=args.d_max, tol=args.tol)
    return _emit_table(args, rows, 1)


def _cmd_table2(args) -> int:
    r_cut = _parse_r_cut(args.r_cut) if args.r_cut else None
    nd_mode = None if args.nd_mode == "default" else args.nd_mode
    rows = reports.build_table2(d_max=args.d_max, nd_mode=nd_mode, r_cut=r_cut, tol=args.tol)
    return _emit_table(args, rows, 2)


def _cmd_verify_counting(args) -> int:
    r_cut = _parse_r_cut(args.r_cut)
    cert = lattice.certify_nd(args.d, args.n_candidate, r_cut)
    payload = cert.to_json(indent=2, sort_keys=True) + "\n"
    sys.stdout.write(payload)
    if args.out:
        _write(Path(args.out), payload)
    if cert.verified:
        return 0
    sys.stdout.write(
        f"verification failed: worst S(m)/m^(d/2) = {cert.worst_ratio:.10g} at "
        f"m = {cert.worst_m}; tail bound {cert.tail_bound:.10g}\n"
    )
    return 1


def _csv_rows(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            cells.append(f"{v:.10g}" if isinstance(v, float) else str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _exp_ground_state(args, out_dir: Path) -> int:
    profile = ground_state.solve_ground_state(args.d, args.tol)
    g = ground_state.gns_numeric(profile)
    stem = out_dir / f"ground_state_d{args.d}"
    _write(
        Path(f"{stem}.csv"),
        _csv_rows(["r", "u"], [[float(r), float(u)] for r, u in zip(profile.r, profile.u)]),
    )
    summary = {
        "d": args.d,
        "u0": profile.u0,
        "K": profile.K,
        "M": profile.M,
        "P": profile.P,
        "G": g,
        "G_over_4": g / 4.0,
        "nehari_residual": profile.nehari_residual,
        "pohozaev_residual": profile.pohozaev_residual,
        "provenance": {"formula": "radial-shooting", "table": "bounds-table-1"},
    }
    _write(Path(f"{stem}.json"), json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if not args.no_figures:
        from . import figures

        figures.save_profile_figure(profile, Path(f"{stem}.png"))
    sys.stdout.write(f"d={args.d}: G = {g:.10g}, files at {stem}.csv/.json\n")
    return 0


def _exp_cube_minimize(args, out_dir: Path) -> int:
    if args.init == "random":
        rng = np.random.default_rng(args.seed)
        u0 = cube_lab.random_bandlimited_function(args.d, args.n, rng)
    elif args.init == "corner":
        u0 = cube_lab.corner_bump(args.d, args.n)
    else:
        u0 = cube_lab.grid_from_callable(
            args.d, args.n, lambda *ax: np.cos(np.pi * ax[0])
        )
    final, trace = cube_lab.minimize(u0, max_iters=args.max_iters, rel_tol=args.rel_tol)
    stem = out_dir / f"cube_minimize_d{args.d}_n{args.n}"
    _write(
        Path(f"{stem}.csv"),
        _csv_rows(["iteration", "quotient"], [[i, float(q)] for i, q in enumerate(trace)]),
    )
    cube_lab.save_grid_function(final, Path(f"{stem}_final.csv"))
    if not args.no_figures:
        from . import figures

        figures.save_trace_figure(
            trace, Path(f"{stem}.png"), title=f"Quotient descent d={args.d} n={args.n}"
        )
    sys.stdout.write(
        f"d={args.d} n={args.n}: quotient {trace[0]:.10g} -> {trace[-1]:.10g} "
        f"in {len(trace) - 1} accepted steps\n"
    )
    return 0


def _exp_concentration(args, out_dir: Path) -> int:
    resolutions = _parse_int_list(args.resolutions)
    rows = cube_lab.concentration_experiment(
        args.d, resolutions, max_iters=args.max_iters
    )
    stem = out_dir / f"concentration_d{args.d}"
    _write(
        Path(f"{stem}.csv"),
        _csv_rows(
            ["n", "final_quotient", "sup_norm", "support_fraction", "iterations"],
            [[r.n, r.final_quotient, r.sup_norm, r.support_fraction, r.iterations] for r in rows],
        ),
    )
    reference = ground_state.cube_upper_bound(args.d) if args.d <= 2 else None
    if not args.no_figures:
        from . import figures

        figures.save_concentration_figure(rows, Path(f"{stem}.png"), reference=reference)
    for r in rows:
        sys.stdout.write(
            f"n={r.n}: final quotient {r.final_quotient:.10g}, sup {r.sup_norm:.6g}, "
            f"support fraction {r.support_fraction:.6g}\n"
        )
    return 0


def _exp_rearrange_check(args, out_dir: Path) -> int:
    if args.d != 2:
        raise ValueError("rearrange-check runs on d = 2")
    rng = np.random.default_rng(args.seed)
    allowed = 1.0 + 5.0 / args.n
    cfg = cube_lab.default_rearrange_config(2)
    rows, ratios, failures = [], [], 0
    for trial in range(args.trials):
        u = cube_lab.random_supported_function(2, args.n, cfg.v_threshold, rng)
        u_star = cube_lab.rearrange_corner(u, cfg)
        e0 = cube_lab.dirichlet_energy(u)
        e1 = cube_lab.dirichlet_energy(u_star)
        equal = np.array_equal(
            np.sort(u.values.ravel()), np.sort(u_star.values.ravel())
        )
        ratio = e1 / e0
        ok = equal and ratio <= allowed
        failures += 0 if ok else 1
        ratios.append(ratio)
        rows.append([trial, float(e0), float(e1), float(ratio), int(equal), int(ok)])
    stem = out_dir / f"rearrange_check_n{args.n}"
    _write(
        Path(f"{stem}.csv"),
        _csv_rows(
            ["trial", "energy_before", "energy_after", "ratio", "equimeasurable", "ok"], rows
        ),
    )
    if not args.no_figures:
        from . import figures

        figures.save_rearrange_figure(ratios, Path(f"{stem}.png"), allowed)
    sys.stdout.write(
        f"{args.trials} trials at n={args.n}: {failures} failures "
        f"(energy factor allowed {allowed:.6g})\n"
    )
    return 0 if failures == 0 else 1


def _exp_upper_bound_scaling(args, out_dir: Path) -> int:
    lambdas = _parse_float_list(args.lambdas)
    profile = ground_state.solve_ground_state(args.d, args.tol)
    n = args.n or max(256, int(8 * max(lambdas)))
    quotients = []
    for lam in lambdas:
        gf = ground_state.scaled_test_function(profile, lam, n)
        quotients.append(cube_lab.quotient(gf).quotient)
    stem = out_dir / f"upper_bound_scaling_d{args.d}"
    _write(
        Path(f"{stem}.csv"),
        _csv_rows(
            ["lambda", "quotient"], [[lam, q] for lam, q in zip(lambdas, quotients)]
        ),
    )
    reference = ground_state.gns_numeric(profile) / 4.0
    if not args.no_figures:
        from . import figures

        figures.save_scaling_figure(lambdas, quotients, Path(f"{stem}.png"), reference)
    for lam, q in zip(lambdas, quotients):
        sys.stdout.write(f"lambda={lam:g}: quotient {q:.10g} (G/4 = {reference:.10g})\n")
    return 0


_EXPERIMENTS = {
    "ground-state": _exp_ground_state,
    "cube-minimize": _exp_cube_minimize,
    "concentration": _exp_concentration,
    "rearrange-check": _exp_rearrange_check,
    "upper-bound-scaling": _exp_upper_bound_scaling,
}


def _cmd_experiment(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return _EXPERIMENTS[args.name](args, out_dir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnsbounds",
        description="GNS constants on R^d, convex domains and cubes: tables, "
        "certificates and cube experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("table1", help="closed-form bounds vs numeric G(d)")
    p1.add_argument("--d-max", type=int, default=5)
    p1.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p1.add_argument("--tol", type=float, default=1e-12)
    p1.add_argument("--out", type=str, default=None)
    p1.add_argument("--no-figures", action="store_true")
    p1.set_defaults(func=_cmd_table1)

    p2 = sub.add_parser("table2", help="unit-cube bounds G(d)/4, G_1, G_2")
    p2.add_argument("--d-max", type=int, default=5)
    p2.add_argument("--nd-mode", choices=("default", "analytic", "refined"), default="default")
    p2.add_argument("--r-cut", type=str, default=None, help="cutoff for refined mode, e.g. sqrt(17)")
    p2.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    p2.add_argument("--tol", type=float, default=1e-12)
    p2.add_argument("--out", type=str, default=None)
    p2.add_argument("--no-figures", action="store_true")
    p2.set_defaults(func=_cmd_table2)

    pv = sub.add_parser("verify-counting", help="certify S(r) <= N r^d")
    pv.add_argument("--d", type=int, required=True)
    pv.add_argument("--n-candidate", type=float, required=True)
    pv.add_argument("--r-cut", type=str, required=True)
    pv.add_argument("--out", type=str, default=None)
    pv.set_defaults(func=_cmd_verify_counting)

    pe = sub.add_parser("experiment", help="run a named experiment")
    pe.add_argument("name", choices=sorted(_EXPERIMENTS))
    pe.add_argument("--d", type=int, default=2)
    pe.add_argument("--n", type=int, default=None)
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--tol", type=float, default=1e-12)
    pe.add_argument("--max-iters", type=int, default=4000)
    pe.add_argument("--rel-tol", type=float, default=1e-10)
    pe.add_argument("--trials", type=int, default=200)
    pe.add_argument("--init", choices=("random", "cos", "corner"), default="random")
    pe.add_argument("--resolutions", type=str, default="128,256,512,1024")
    pe.add_argument("--lambdas", type=str, default="4,8,16,32")
    pe.add_argument("--out-dir", type=str, default="reports")
    pe.add_argument("--no-figures", action="store_true")
    pe.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "experiment":
        # per-experiment defaults that differ from the generic ones
        if args.name == "rearrange-check" and args.n is None:
            args.n = 256
        if args.name == "cube-minimize" and args.n is None:
            args.n = 128
    try:
        return args.func(args)
    except (lattice.ResourceLimitError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (ground_state.ShootingError, FloatingPointError, ArithmeticError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

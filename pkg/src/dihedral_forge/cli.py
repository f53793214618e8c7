"""Command-line front end: solve, continue, mesh, verify.

Exit codes: 0 success, 1 verification failures, 2 solver failure,
3 bad input artifact, 64 usage error.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

EXIT_OK, EXIT_VERIFY, EXIT_SOLVER, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"not a number list: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dihedral-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve the period problem at one alpha")
    s.add_argument("--family", required=True, choices=("de", "dccw", "dks"))
    s.add_argument("--alpha", type=float, default=0.0)
    s.add_argument("--tau", type=float, default=None, help="Im tau (dks only)")
    s.add_argument("--init", type=str, default=None, help="comma-separated initial point")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--out", required=True)

    c = sub.add_parser("continue", help="continuation branch in alpha (or Im tau)")
    c.add_argument("--family", required=True, choices=("de", "dccw", "dks"))
    c.add_argument("--alpha", type=str, default=None, help="explicit alpha schedule a0,a1,...")
    c.add_argument("--alpha-max", type=float, default=None)
    c.add_argument("--steps", type=int, default=5)
    c.add_argument("--tau", type=str, default=None,
                   help="Im tau; a comma list sweeps tau at fixed --alpha (dks only)")
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("--out", required=True)

    m = sub.add_parser("mesh", help="mesh a solved record")
    m.add_argument("solution")
    m.add_argument("--record", type=int, default=-1, help="record index in a branch file")
    m.add_argument("--resolution", type=int, default=32)
    m.add_argument("--symmetry", default="fundamental", choices=("fundamental", "wedge", "full"))
    m.add_argument("--tol", type=float, default=1e-8)
    m.add_argument("--out", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="paper")
    return p


def _tau_of(args):
    if args.tau is None:
        return 1j
    if args.family != "dks":
        raise UsageError("--tau applies to the dks family only")
    t = float(args.tau)
    if t <= 0:
        raise UsageError("--tau must be positive")
    return 1j * t


def cmd_solve(args) -> int:
    from .io import write_solutions
    from .periods import solve_family
    tau = _tau_of(args)
    if args.alpha < 0:
        raise UsageError("--alpha must be >= 0")
    init = _floats(args.init) if args.init else None
    try:
        rec = solve_family(args.family, args.alpha, tau, init, tol=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_solutions(args.out, [rec])
    status = "solved" if rec.solved else "UNSOLVED"
    vec = ", ".join(f"{v:.12g}" for v in rec.params.vector)
    print(f"{args.family} alpha={args.alpha:g} ({vec}) residual={rec.residual_norm:.3e} {status}")
    return EXIT_OK if rec.solved else EXIT_SOLVER


def cmd_continue(args) -> int:
    from .io import write_solutions
    from .periods import continuation, tau_sweep
    taus = _floats(args.tau) if args.tau else None
    if taus and args.family != "dks":
        raise UsageError("--tau applies to the dks family only")
    if taus and len(taus) > 1:
        alpha = float(args.alpha) if args.alpha else 0.0
        recs = tau_sweep(taus, alpha)
        target = taus
    else:
        if args.alpha:
            sched = _floats(args.alpha)
        elif args.alpha_max is not None:
            if args.steps < 1:
                raise UsageError("--steps must be >= 1")
            sched = list(np.linspace(0.0, args.alpha_max, args.steps + 1))
        else:
            raise UsageError("give --alpha or --alpha-max")
        if not sched or sched[0] != 0.0 or any(b <= a for a, b in zip(sched, sched[1:])):
            raise UsageError("the alpha schedule must start at 0 and increase strictly")
        tau = 1j * taus[0] if taus else 1j
        recs = continuation(args.family, sched, tau=tau, tol=args.tol)
        target = sched
    if recs:
        write_solutions(args.out, recs)
    print(f"{'value':>12} {'residual':>10}  parameters")
    for r in recs:
        vec = ", ".join(f"{v:.10f}" for v in r.params.vector)
        print(f"{r.step['value']:12.6g} {r.residual_norm:10.2e}  {vec}")
    if not recs:
        print("no step solved")
        return EXIT_SOLVER
    if len(recs) < len(target):
        print(f"branch stopped after {recs[-1].step['value']:g}")
    return EXIT_OK


def cmd_mesh(args) -> int:
    from .builder import build_mesh
    from .io import read_solutions, write_mesh
    if args.resolution < 8:
        raise UsageError("--resolution must be at least 8")
    if not args.out.lower().endswith((".obj", ".ply")):
        raise UsageError("--out must end in .obj or .ply")
    try:
        recs = read_solutions(args.solution)
        rec = recs[args.record]
    except (OSError, ValueError, KeyError, IndexError) as exc:
        print(f"cannot read a solution from {args.solution}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not rec.solved or rec.residual_norm >= args.tol:
        print("the record is not solved; refusing to mesh it", file=sys.stderr)
        return EXIT_INPUT
    try:
        mesh = build_mesh(rec, args.resolution, args.symmetry)
    except ValueError as exc:
        print(f"cannot build the mesh: {exc}", file=sys.stderr)
        return EXIT_INPUT
    write_mesh(args.out, mesh)
    extra = ""
    if "copies" in mesh.meta:
        extra = f" copies={mesh.meta['copies']} weld_gap={mesh.meta['weld_gap']:.2e}"
    print(f"{len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles{extra} -> {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import SUITES, run_suite
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    results = run_suite(args.suite)
    for r in results:
        print(r.line())
    n_fail = sum(not r.passed for r in results)
    print(f"summary suite={args.suite} checks={len(results)} failed={n_fail}")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY


COMMANDS = {"solve": cmd_solve, "continue": cmd_continue, "mesh": cmd_mesh, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

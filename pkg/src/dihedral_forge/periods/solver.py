"""Damped Newton on the period residuals and continuation in alpha or tau."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..weierstrass import growth_rate
from .dccw import DCCW_ROOT, dccw_residual
from .de import DE_ROOT, de_residual, de_rho
from .dks import dks_residual
from .karcher import T_map, a0_torus, tildeP
from .params import DCCWParams, DEParams, DKSParams

SOLVE_TOL = 1e-8
FAMILIES = ("de", "dccw", "dks")


class SolverError(RuntimeError):
    def __init__(self, message, x, norm, iterations, cond=None):
        super().__init__(message)
        self.x, self.norm, self.iterations, self.cond = x, norm, iterations, cond


@dataclass
class PeriodResidual:
    r: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.r))


@dataclass
class SolutionRecord:
    family: str
    params: object
    residual_norm: float
    iterations: int
    solved: bool
    step: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)


def newton(F, x0, tol: float = SOLVE_TOL, fd_step: float = 1e-6, max_iter: int = 40,
           max_halvings: int = 30, admissible=lambda x: True, polish: float = 1e-13):
    """Damped Newton with a central-difference Jacobian.

    The step is halved until the residual norm decreases (at most
    ``max_halvings`` times) and the iterate stays admissible. Iteration
    continues past ``tol`` while the norm still drops, down to ``polish``.
    Returns (x, norm, iterations); raises SolverError on failure.
    """
    x = np.array(x0, dtype=float)
    r = np.asarray(F(x), dtype=float)
    nrm = float(np.linalg.norm(r))
    for it in range(1, max_iter + 1):
        if nrm < polish:
            return x, nrm, it - 1
        J = np.empty((r.size, x.size))
        for k in range(x.size):
            h = fd_step * (1.0 + abs(x[k]))
            e = np.zeros_like(x)
            e[k] = h
            if admissible(x + e) and admissible(x - e):
                J[:, k] = (np.asarray(F(x + e)) - np.asarray(F(x - e))) / (2 * h)
            elif admissible(x - e):
                J[:, k] = (r - np.asarray(F(x - e))) / h
            else:
                J[:, k] = (np.asarray(F(x + e)) - r) / h
        cond = float(np.linalg.cond(J))
        if not math.isfinite(cond) or cond > 1e14:
            raise SolverError(f"Jacobian numerically singular (cond {cond:.2e})", x, nrm, it, cond)
        dx = np.linalg.solve(J, -r)
        t = 1.0
        for _ in range(max_halvings + 1):
            xn = x + t * dx
            if admissible(xn):
                try:
                    rn = np.asarray(F(xn), dtype=float)
                except (ValueError, ArithmeticError):
                    rn = None
                if rn is not None and np.all(np.isfinite(rn)) and np.linalg.norm(rn) < nrm:
                    break
            t *= 0.5
        else:
            if nrm < tol:
                return x, nrm, it - 1
            raise SolverError("line search failed to reduce the residual", x, nrm, it, cond)
        x, r, nrm = xn, rn, float(np.linalg.norm(rn))
    if nrm < tol:
        return x, nrm, max_iter
    raise SolverError("Newton did not converge", x, nrm, max_iter)


def _problem(family: str, alpha: float, tau):
    """Residual, admissibility test and record builder for one family."""
    if family == "de":
        def F(x):
            return de_residual(x[0], x[1], alpha)

        def ok(x):
            return 1.0 < x[0] < x[1]

        def record(x):
            p = DEParams(x[0], x[1], alpha, de_rho(x[0], x[1], alpha))
            return p, {"rho": p.rho}
    elif family == "dccw":
        def F(x):
            return dccw_residual(x[0], x[1], x[1] ** 2 / x[0], alpha)

        def ok(x):
            return 1.0 < x[0] < x[1] < x[1] ** 2 / x[0]

        def record(x):
            p = DCCWParams.constrained(x[0], x[1], alpha)
            return p, {"c": p.c, "growth_a": growth_rate(p.a, p.b, p.c, "a"),
                       "growth_c": growth_rate(p.a, p.b, p.c, "c")}
    elif family == "dks":
        t = complex(tau).imag

        def F(x):
            return dks_residual(x[0], x[1], complex(tau), alpha)

        def ok(x):
            return 0.0 < x[0] < 0.5 and 0.0 < x[1] < t / 2

        def record(x):
            p = DKSParams(x[0], x[1], complex(tau), alpha)
            return p, {"b": p.b}
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return F, ok, record


def default_init(family: str):
    if family == "de":
        return DE_ROOT
    if family == "dccw":
        return DCCW_ROOT
    if family == "dks":
        a0 = a0_torus()
        return (a0, a0)
    raise ValueError(f"unknown family {family!r}")


def tilde_to_torus(at: float, ct: float):
    """(a, c) on the torus tau = i from half-plane coordinates (a~, c~)."""
    return 0.5 - T_map(at).real, 0.5 - T_map(ct).real


def solve_family(family: str, alpha: float = 0.0, tau=1j, init=None,
                 tol: float = SOLVE_TOL, tilde_init: bool = False) -> SolutionRecord:
    """Solve the period problem of ``family`` at (alpha, tau) from ``init``.

    With ``tilde_init`` (dks only) the initial point is read in the
    half-plane coordinates (a~, c~) of the tau = i, alpha = 0 model: the
    reduced map tildeP is solved there first and the result is carried to
    the torus through T. On failure the record holds the last iterate with
    solved=False.
    """
    F, ok, record = _problem(family, alpha, tau)
    x0 = default_init(family) if init is None else init
    if tilde_init:
        if family != "dks":
            raise ValueError("tilde_init applies to the dks family only")
        xt, _, _ = newton(lambda v: tildeP(v[0], v[1]), x0, tol * 1e-3,
                          admissible=lambda v: 0.0 < v[0] < 1.0 and 0.0 < v[1] < 1.0)
        x0 = tilde_to_torus(*xt)
    x0 = np.asarray(x0, dtype=float)
    if not ok(x0):
        raise ValueError(f"initial point {tuple(x0)} violates the parameter invariants")
    try:
        x, nrm, its = newton(F, x0, tol, admissible=ok)
        solved = nrm < tol
        info = {}
    except SolverError as exc:
        x, nrm, its, solved = exc.x, exc.norm, exc.iterations, False
        info = {"error": str(exc)}
    x = [float(v) for v in x]
    try:
        params, derived = record(x)
    except Exception as exc:  # noqa: BLE001 - derived values are best-effort on failure
        params, derived = record_fallback(family, x, alpha, tau), {"derived_error": str(exc)}
    rec = SolutionRecord(family, params, nrm, its, solved, info, derived)
    return rec


def record_fallback(family, x, alpha, tau):
    if family == "de":
        return DEParams(x[0], x[1], alpha)
    if family == "dccw":
        return DCCWParams.constrained(x[0], x[1], alpha)
    return DKSParams(x[0], x[1], complex(tau), alpha)


def continuation(family: str, schedule, tau=1j, alpha: float = 0.0, parameter: str = "alpha",
                 init=None, tol: float = SOLVE_TOL, max_depth: int = 4):
    """Solve along ``schedule`` (values of alpha, or of Im tau when
    ``parameter == 'tau'``), warm-starting each step from the previous one.

    A failed step is retried through bisected intermediate values, up to
    ``max_depth`` levels; the branch stops at the first unrecoverable step.
    Returns the solved records for the schedule values reached.
    """
    schedule = [float(s) for s in schedule]
    if parameter not in ("alpha", "tau"):
        raise ValueError("parameter must be 'alpha' or 'tau'")
    if parameter == "alpha" and (not schedule or schedule[0] != 0.0):
        raise ValueError("an alpha schedule must start at 0")
    if any(b <= a for a, b in zip(schedule, schedule[1:])) and parameter == "alpha":
        raise ValueError("alpha schedule must be strictly increasing")
    if parameter == "tau" and family != "dks":
        raise ValueError("tau continuation applies to the dks family only")

    def solve_at(v, x0):
        if parameter == "alpha":
            return solve_family(family, v, tau, x0, tol)
        return solve_family(family, alpha, 1j * v, x0, tol)

    def vec(rec):
        return np.array(rec.params.vector)

    out = []
    prev_v, prev_x = None, init
    for v in schedule:
        rec = _bisect_step(solve_at, vec, prev_v, prev_x, v, max_depth)
        if rec is None:
            break
        rec.step.update({"parameter": parameter, "value": v, "index": len(out)})
        out.append(rec)
        prev_v, prev_x = v, vec(rec)
    return out


def _bisect_step(solve_at, vec, v0, x0, v1, depth):
    rec = solve_at(v1, x0)
    if rec.solved:
        return rec
    if depth == 0 or v0 is None:
        return None
    mid = 0.5 * (v0 + v1)
    r_mid = _bisect_step(solve_at, vec, v0, x0, mid, depth - 1)
    if r_mid is None:
        return None
    return _bisect_step(solve_at, vec, mid, vec(r_mid), v1, depth - 1)


def tau_sweep(values, alpha: float = 0.0, init=None):
    """DKS branch in Im tau through tau = i: solved outward from the value
    closest to 1 in both directions; returns records sorted by Im tau."""
    values = sorted(float(v) for v in values)
    k = min(range(len(values)), key=lambda i: abs(values[i] - 1.0))
    up = continuation("dks", values[k:], alpha=alpha, parameter="tau", init=init)
    down = continuation("dks", values[k::-1], alpha=alpha, parameter="tau", init=init)
    recs = {r.step["value"]: r for r in up + down}
    return [recs[v] for v in sorted(recs)]

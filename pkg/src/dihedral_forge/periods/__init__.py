"""Period residuals, exact alpha = 0 data, and the continuation solver."""
from .contours import circle, circle_period, circle_window
from .dccw import (DCCW_ROOT, constrained_c, dccw_differences, dccw_jacobian_limit_det,
                   dccw_residual, dccw_residual_imag, dccw_residual_limit,
                   dccw_residual_limit_residues)
from .de import (DE_ROOT, de_circle_periods, de_jacobian_limit, de_jacobian_reference,
                 de_period_closure, de_residual, de_residual_complex, de_residual_imag,
                 de_residual_limit, de_residual_limit_residues, de_rho)
from .dks import dks_periods, dks_residual, dks_residual_complex
from .karcher import (T_inverse, T_map, a0_sign_scan, a0_tilde, a0_torus, f1, f1_from_psi, f2,
                      f2_from_psi, psi1, psi2, rho_prime, rho_tilde, tildeP, tildeP_jacobian_det)
from .params import DCCWParams, DEParams, DKSParams
from .solver import (FAMILIES, SOLVE_TOL, PeriodResidual, SolutionRecord, SolverError,
                     continuation, default_init, newton, solve_family, tau_sweep,
                     tilde_to_torus)

__all__ = [n for n in dir() if not n.startswith("_")]

"""Weierstrass data, null forms and the minimal map."""
from .data import (BranchPhaseError, EndClassification, MinimalMapSample, WeierstrassData,
                   classify_end, growth_rate, integrate_forms, integrate_map, lopez_ros_rho,
                   null_residual, omega_forms, periods_to_position, sample_map, unit_normal)
from .families import dccw_data, dccw_forms, de_data, de_forms, dks_b, dks_data, dks_forms
from .forms import (INF, BranchState, HalfPlaneForm, PoleError, ThetaBracket, TorusForm,
                    eval_form)

__all__ = [
    "BranchPhaseError", "EndClassification", "MinimalMapSample", "WeierstrassData",
    "classify_end", "growth_rate", "integrate_forms", "integrate_map", "lopez_ros_rho",
    "null_residual", "omega_forms", "periods_to_position", "sample_map", "unit_normal",
    "dccw_data", "dccw_forms", "de_data", "de_forms", "dks_b", "dks_data", "dks_forms",
    "INF", "BranchState", "HalfPlaneForm", "PoleError", "ThetaBracket", "TorusForm", "eval_form",
]

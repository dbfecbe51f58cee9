"""Hardy Z-function derivative chains for Selberg-class L-functions.

The package evaluates completed L-functions F(s) from axiomatic data
(gamma factors, root number, Dirichlet coefficients), builds the chain

    F_0 = F,    F_{k+1} = F_k' - (1/2) psi_F F_k,

whose critical-line restriction i^k F_k(1/2+it) e^{i theta_F(t)} is the
k-th derivative Z^(k)(t) of the Hardy Z-function, and provides the
instruments built on top: zero scans, interlacing audits, zero-count
comparisons against theta/pi + S(T), argument-principle rectangle counts,
and the mirrored-zero-sum derivative check.
"""

from .catalog import SelbergDatum, builtin, catalog_listing, coefficients
from .chain import (ChainValue, ZDerivative, chain_coeff, chain_coeff_tail,
                    chain_derivative, chain_grid, chain_value,
                    center_prefactor, coeff_stack_grid, completed_value,
                    z_derivative, z_grid)
from .context import DEFAULT_CONTEXT, EvalContext
from .errors import (CatalogError, ContextError, DomainError, GeometryError,
                     HardyZError, InconclusiveContourError, PoleError,
                     PrecisionError, ProximityError, RangeError,
                     TrackingError, UnsupportedOrderError)
from .evaluator import LValue, l_derivative, l_derivs_grid, l_value, l_value_grid
from .gamma_factor import (PhasePoint, fe_factor, fe_logderiv,
                           fe_logderiv_grid, psi_pole_distance, theta,
                           theta_asymptotic, theta_grid)
from .specfun import hurwitz_zeta, log_gamma, polygamma
from .zerolab import (CountReport, GapRecord, InterlaceReport, MirrorReport,
                      Rectangle, ZeroTable, argument_S, contour_count,
                      count_compare, interlace_audit, mirror_sum_check,
                      scan_zeros)

__version__ = "0.1.0"

__all__ = [
    "SelbergDatum", "builtin", "catalog_listing", "coefficients",
    "ChainValue", "ZDerivative", "chain_coeff", "chain_coeff_tail",
    "chain_derivative", "chain_grid", "chain_value", "center_prefactor",
    "coeff_stack_grid", "completed_value", "z_derivative", "z_grid",
    "DEFAULT_CONTEXT", "EvalContext",
    "CatalogError", "ContextError", "DomainError", "GeometryError",
    "HardyZError", "InconclusiveContourError", "PoleError", "PrecisionError",
    "ProximityError", "RangeError", "TrackingError", "UnsupportedOrderError",
    "LValue", "l_derivative", "l_derivs_grid", "l_value", "l_value_grid",
    "PhasePoint", "fe_factor", "fe_logderiv", "fe_logderiv_grid",
    "psi_pole_distance", "theta", "theta_asymptotic", "theta_grid",
    "hurwitz_zeta", "log_gamma", "polygamma",
    "CountReport", "GapRecord", "InterlaceReport", "MirrorReport",
    "Rectangle", "ZeroTable", "argument_S", "contour_count", "count_compare",
    "interlace_audit", "mirror_sum_check", "scan_zeros",
    "__version__",
]

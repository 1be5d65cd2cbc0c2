"""Spectra of the PT-symmetric oscillator family H = p^2 + x^(2M) (ix)^eps.

Complex-ray shooting for the finite-deformation eigenvalues, WKB
quantization (closed form and quadrature), the exactly solvable
large-deformation limit, and Richardson extrapolation toward that limit.
"""

from .classical import PeriodResult, period_asymptotic, period_exact
from .extrapolation import ExtrapolationTable, richardson, subtract_leading
from .geometry import (BranchCutError, ModelSpec, TurningPair, WedgePair,
                       potential_value, turning_points, wedge_angles)
from .limit import (CorrectionCoeffs, E_of_F, F_of_eps, LimitLevel,
                    boundary_log_decay, f1_ground, f1_oracle,
                    ground_state_coeffs, limit_wavefunction, nu_spectrum,
                    quantization_residual, scaled_ode_residual)
from .shooting import (EigenResult, RayContour, ShootingError, build_contour,
                       integrate_log_derivative, match_height, mismatch,
                       scan_levels, solve_level)
from .specfun import (EULER_GAMMA, SpecialFunctionError, bessel_I,
                      bessel_I_prime, bessel_I_scaled, bessel_J, bessel_K,
                      bessel_K_prime, bessel_K_scaled, bessel_Y, euler_gamma,
                      gamma_fn)
from .wkb import (WkbEstimate, action_integral, asymptotic_energy,
                  ground_expansion_exact, ground_expansion_wkb,
                  wkb_energy_closed, wkb_energy_next, wkb_energy_quadrature,
                  wkb_estimate)

__version__ = "0.1.0"

__all__ = [
    "BranchCutError", "CorrectionCoeffs", "E_of_F", "EULER_GAMMA",
    "EigenResult", "ExtrapolationTable", "F_of_eps", "LimitLevel",
    "ModelSpec", "PeriodResult", "RayContour", "ShootingError",
    "SpecialFunctionError", "TurningPair", "WedgePair", "WkbEstimate",
    "action_integral", "asymptotic_energy", "bessel_I", "bessel_I_prime",
    "bessel_I_scaled", "bessel_J", "bessel_K", "bessel_K_prime",
    "bessel_K_scaled", "bessel_Y", "boundary_log_decay", "build_contour",
    "euler_gamma", "f1_ground", "f1_oracle", "gamma_fn",
    "ground_expansion_exact", "ground_expansion_wkb", "ground_state_coeffs",
    "integrate_log_derivative", "limit_wavefunction", "match_height",
    "mismatch", "nu_spectrum", "period_asymptotic", "period_exact",
    "potential_value", "quantization_residual", "richardson", "scan_levels",
    "scaled_ode_residual", "solve_level", "subtract_leading",
    "turning_points", "wedge_angles", "wkb_energy_closed", "wkb_energy_next",
    "wkb_energy_quadrature", "wkb_estimate",
]

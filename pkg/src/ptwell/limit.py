"""The exactly solvable large-deformation limit.

After the scaling x = (-i + pi z/(2M + eps)) E^(1/(2M+eps)), the eigenproblem
collapses (as eps -> infinity) to

    psi''(z) + F pi^2 (1 + (-1)^(M+1) e^(i pi z)) psi(z) = 0,   F = E/eps^2,

a complex analog of the square well.  The substitution w = nu e^(i pi z / 2)
with nu = 2 sqrt(F) turns it into the modified Bessel equation for odd M and
the ordinary Bessel equation for even M.  Decay on the vertical boundary
lines Re z = +-(M+1) quantizes nu:

    M = 1:  cos(nu pi) = 0          ->  nu = k + 1/2,
    M = 2:  cos(2 nu pi) = -1/2     ->  nu = k + 1/3, k + 2/3,

and in general nu = k + P/(M+1), P = 1..M, so F = nu^2/4.

The refined deformation map F(eps) = E^((eps+4)/(eps+2)) / (eps+2)^2 (stated
for M = 1) expands as F = f0 + f1/eps + ..., and the ground-state correction
evaluates in closed form to f1 = gamma/4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad

from .specfun import (EULER_GAMMA, bessel_I_logw, bessel_J_logw,
                      bessel_K_logw, bessel_K_scaled, bessel_Y_logw)


@dataclass(frozen=True)
class LimitLevel:
    """One level of the solvable limit: indices (k, P), nu, and F = nu^2/4."""

    k: int
    P: int
    nu: float
    F: float


@dataclass(frozen=True)
class CorrectionCoeffs:
    """Leading coefficients of F(eps) = f0 + f1/eps + ... (f2 not evaluated)."""

    f0: float
    f1: float


def nu_spectrum(M: int, k_max: int) -> list[LimitLevel]:
    """All limit levels with k <= k_max, sorted by nu."""
    if M < 1:
        raise ValueError("M must be >= 1")
    levels = [LimitLevel(k, P, k + P / (M + 1.0), (k + P / (M + 1.0)) ** 2 / 4.0)
              for k in range(k_max + 1) for P in range(1, M + 1)]
    levels.sort(key=lambda lv: lv.nu)
    return levels


def quantization_residual(M: int, nu: float) -> float:
    """cos(nu pi) for M = 1, cos(2 nu pi) + 1/2 for M = 2.

    Arguments are reduced modulo the period before calling cos, so the
    residual vanishes to ~1e-16 at spectrum values of any index.

    Raises:
        ValueError: for M >= 3 (no closed condition is implemented; the
            spectrum itself is available through nu_spectrum).
    """
    if nu <= 0:
        raise ValueError("nu must be positive")
    if M == 1:
        t = nu - 2.0 * round(nu / 2.0)
        return math.cos(math.pi * t)
    if M == 2:
        t = nu - round(nu)
        return math.cos(2.0 * math.pi * t) + 0.5
    raise ValueError("closed quantization condition implemented for M in {1, 2}")


def ground_state_coeffs() -> CorrectionCoeffs:
    """f0 = 1/16 and f1 = gamma/4 for the M = 1 ground level."""
    return CorrectionCoeffs(f0=1.0 / 16.0, f1=EULER_GAMMA / 4.0)


# ---------------------------------------------------------------------------
# limit eigenfunctions
# ---------------------------------------------------------------------------

def _coeffs(M: int, nu: float) -> tuple[complex, complex]:
    """(C1, C2) enforcing decay on the left vertical; odd M uses (I, K) with
    C2 = 1/pi, even M uses (J, Y) with C2 = 1."""
    if M % 2 == 1:
        c2 = 1.0 / math.pi
        c1 = -1j * cmath.exp(1j * nu * math.pi) * math.pi * c2
        return c1, complex(c2)
    s = math.sin(nu * math.pi)
    c2 = 1.0 + 0j
    c1 = -c2 * (math.cos(nu * math.pi) - cmath.exp(3j * nu * math.pi)) / s
    return c1, c2


def _right_bc_residual(M: int, nu: float, c1: complex, c2: complex) -> float:
    """Growing-component coefficient on the right vertical, normalized."""
    if M % 2 == 1:
        val = c1 * cmath.exp(1j * nu * math.pi) - 1j * math.pi * c2
        scale = abs(c1) + math.pi * abs(c2)
    else:
        s = math.sin(nu * math.pi)
        e = cmath.exp(3j * nu * math.pi)
        val = c1 + c2 * (math.cos(nu * math.pi) - 1.0 / e) / s
        scale = abs(c1) + abs(c2) / abs(s)
    return abs(val) / scale


def limit_wavefunction(M: int, nu: float, z: complex) -> complex:
    """The limit eigenfunction at a point z of the arch region, M in {1, 2}.

    Odd M:  psi = C1 I_nu(w) + C2 K_nu(w), even M: psi = C1 J_nu(w) +
    C2 Y_nu(w), with w = nu e^(i pi z/2) evaluated through the log-argument
    series so the analytic continuation across |arg w| > pi (needed for
    |Re z| up to M + 1) is built in.  C2 is normalized to 1/pi for M = 1,
    which makes the ground function literally I_1/2 + K_1/2/pi =
    e^w / sqrt(2 pi w); the overall scale is otherwise arbitrary.

    Raises:
        ValueError: if nu is not a spectrum value (decay can then be
            enforced on one vertical only), or M not in {1, 2}.
    """
    if M not in (1, 2):
        raise ValueError("limit wavefunction implemented for M in {1, 2}")
    c1, c2 = _coeffs(M, nu)
    if _right_bc_residual(M, nu, c1, c2) > 1e-8:
        raise ValueError(f"nu = {nu} is not a limit eigenvalue for M = {M}")
    t = math.log(nu) + 1j * math.pi * z / 2.0
    if M % 2 == 1:
        return c1 * bessel_I_logw(nu, t) + c2 * bessel_K_logw(nu, t)
    return c1 * bessel_J_logw(nu, t) + c2 * bessel_Y_logw(nu, t)


def boundary_log_decay(M: int, nu: float, y: float) -> float:
    """ln |psi| on the vertical boundary lines z = +-(M+1) - i y.

    There the growing Bessel component cancels by construction and
    |psi| = c K_nu(r) with r = nu e^(pi y / 2); evaluated through the scaled
    K so arbitrarily deep points do not underflow.  Decreases monotonically
    in y (doubly exponential decay).
    """
    if M not in (1, 2):
        raise ValueError("implemented for M in {1, 2}")
    _, c2 = _coeffs(M, nu)
    c = abs(c2) if M % 2 == 1 else abs(c2) * 2.0 / math.pi
    r = nu * math.exp(math.pi * y / 2.0)
    return math.log(c) + math.log(abs(bessel_K_scaled(nu, complex(r)))) - r


def scaled_ode_residual(M: int, F: float, z: complex,
                        psi: Callable[[complex], complex]) -> float:
    """Relative residual of psi in the scaled equation at z.

    psi'' is formed by Richardson-refined central differences (base step
    1e-4), and the residual |psi'' + F pi^2 (1 + (-1)^(M+1) e^(i pi z)) psi|
    is normalized by |psi''| + F pi^2 (1 + |e^(i pi z)|) |psi|.
    """
    h = 1e-4
    pc = psi(z)

    def second(hh: float) -> complex:
        return (psi(z + hh) - 2.0 * pc + psi(z - hh)) / (hh * hh)

    d2 = (4.0 * second(h / 2.0) - second(h)) / 3.0
    sgn = 1.0 if M % 2 == 1 else -1.0
    coef = F * math.pi ** 2 * (1.0 + sgn * cmath.exp(1j * math.pi * z))
    resid = abs(d2 + coef * pc)
    scale = abs(d2) + F * math.pi ** 2 * (1.0 + abs(cmath.exp(1j * math.pi * z))) * abs(pc)
    return resid / max(scale, 1e-300)


# ---------------------------------------------------------------------------
# deformation map and the first correction
# ---------------------------------------------------------------------------

def F_of_eps(E: float, epsilon: float) -> float:
    """F = E^((eps+4)/(eps+2)) / (eps+2)^2, the refined scaling of E."""
    if E <= 0.0:
        raise ValueError("E must be positive")
    if epsilon < 0.0:
        raise ValueError("epsilon must be >= 0")
    return E ** ((epsilon + 4.0) / (epsilon + 2.0)) / (epsilon + 2.0) ** 2


def E_of_F(F: float, epsilon: float) -> float:
    """Exact inverse of F_of_eps."""
    if F <= 0.0:
        raise ValueError("F must be positive")
    if epsilon < 0.0:
        raise ValueError("epsilon must be >= 0")
    return (F * (epsilon + 2.0) ** 2) ** ((epsilon + 2.0) / (epsilon + 4.0))


def f1_ground() -> float:
    """The ground-state 1/eps correction coefficient, gamma/4."""
    return EULER_GAMMA / 4.0


def f1_oracle() -> float:
    """f1 from the wrap-around contour integrals, evaluated numerically.

    The ratio of contour integrals reduces to real quantities: the
    numerator's branch-cut discontinuity gives 4 pi i int_0^inf e^(-2t)
    ln(2t) dt (adaptive quadrature), the denominator is -4 pi i from the
    residue of e^(2w)/w^2 at the origin traversed clockwise (the analytic
    4 e^(2w) part integrates to zero).  Returns (1/2) numerator/denominator.
    """
    val, err = quad(lambda t: math.exp(-2.0 * t) * math.log(2.0 * t),
                    0.0, math.inf, limit=200)
    if err > 1e-7:
        raise RuntimeError(f"f1 quadrature error estimate too large: {err:.2e}")
    numerator = 4.0 * math.pi * val * 1j
    denominator = -4.0 * math.pi * 1j
    return 0.5 * (numerator / denominator).real

"""Complex-plane geometry of the deformed-oscillator eigenproblem.

The family of Hamiltonians is H = p^2 + x^(2M) (ix)^eps with integer M >= 1
and deformation eps >= 0.  This module fixes the branch convention of the
potential, the anti-Stokes wedge directions that carry the boundary
conditions, and the turning points of E - V.

Branch convention: (ix)^eps = exp(eps Log(ix)) with the principal logarithm,
so the potential is analytic on the cut plane with the cut along the
positive imaginary x-axis.  Every contour used by the solvers lives in the
closed lower half-plane where V is smooth.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


class BranchCutError(ValueError):
    """Evaluation requested on the branch cut (positive imaginary axis)."""


@dataclass(frozen=True)
class ModelSpec:
    """Hamiltonian parameters: power index M and deformation epsilon.

    The total potential power is 2M + epsilon; epsilon = 0 is the Hermitian
    x^(2M) oscillator whose boundary conditions are continued to eps > 0.
    """

    M: int
    epsilon: float

    def __post_init__(self) -> None:
        if self.M < 1 or self.M != int(self.M):
            raise ValueError("M must be a positive integer")
        if not (self.epsilon >= 0.0 and math.isfinite(self.epsilon)):
            raise ValueError("epsilon must be finite and >= 0")


@dataclass(frozen=True)
class WedgePair:
    """Anti-Stokes directions bounding-wedge centers for the two rays."""

    theta_left: float
    theta_right: float
    opening: float


@dataclass(frozen=True)
class TurningPair:
    """Zeros of E - V(x) adjacent to the two boundary wedges."""

    x_left: complex
    x_right: complex


def potential_value(model: ModelSpec, x: complex) -> complex:
    """V(x) = x^(2M) exp(eps Log(ix)) on the principal branch.

    Raises:
        BranchCutError: if x lies on the positive imaginary axis (arg(ix)
            would be pi exactly) and eps > 0.
    """
    x = complex(x)
    if x == 0:
        return 0j
    if model.epsilon == 0.0:
        return x ** (2 * model.M)
    ix = 1j * x
    if ix.real < 0.0 and ix.imag == 0.0:
        raise BranchCutError("potential branch cut along the positive imaginary axis")
    return x ** (2 * model.M) * cmath.exp(model.epsilon * cmath.log(ix))


def wedge_angles(model: ModelSpec) -> WedgePair:
    """Centers and opening of the decay wedges continued from eps = 0.

    theta_right = -eps pi / (4M + 2 eps + 4), theta_left mirrors it about
    the negative imaginary axis, and the opening is 2 pi/(2M + eps + 2).
    Both centers sink toward -pi/2 as eps grows.
    """
    d = 4.0 * model.M + 2.0 * model.epsilon + 4.0
    tr = -model.epsilon * math.pi / d
    tl = -math.pi - tr  # = -pi + eps*pi/d
    return WedgePair(theta_left=tl, theta_right=tr,
                     opening=2.0 * math.pi / (2.0 * model.M + model.epsilon + 2.0))


def turning_radius(model: ModelSpec, E: float) -> float:
    """|x| of the turning points, E^(1/(2M+eps))."""
    if E <= 0.0:
        raise ValueError("E must be positive")
    return E ** (1.0 / (2.0 * model.M + model.epsilon))


def turning_points(model: ModelSpec, E: float) -> TurningPair:
    """The PT-conjugate pair of zeros of E - V adjacent to the wedges.

    x_right = E^(1/(2M+eps)) exp(-i eps pi/(4M + 2 eps)) and x_left is its
    mirror through the imaginary axis; V(x) = E holds exactly at both.

    Raises:
        ValueError: for E <= 0.
    """
    r = turning_radius(model, E)
    d = model.epsilon * math.pi / (4.0 * model.M + 2.0 * model.epsilon)
    x_right = r * cmath.exp(-1j * d)
    x_left = r * cmath.exp(1j * (d - math.pi))
    return TurningPair(x_left=x_left, x_right=x_right)

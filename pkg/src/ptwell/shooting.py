"""Finite-deformation eigensolver by complex-ray shooting.

The Schroedinger equation -psi'' + V psi = E psi is integrated inward along
the two anti-Stokes rays that carry the decay boundary conditions, starting
from the leading WKB decaying solution at an outer radius chosen so the
accumulated decay exponent exceeds a fixed depth.  Eigenvalues are the zeros
of a normalized log-derivative matching defect, located by a damped complex
secant iteration.

Two matching surfaces exist:

* the public diagnostic `mismatch` matches psi'/psi at the origin, where
  both rays terminate (this is the simple, easily interpreted quantity, but
  its eigenvalue signal falls off exponentially once the deformation is
  large, because the origin then sits deep on the far side of a classically
  forbidden stretch);
* the solver matches on the negative imaginary axis at the height where the
  classically allowed arch joining the turning points crosses it, reached
  from each ray by a circular arc.  The signal there stays O(1) for every
  deformation, which is what makes the large-deformation golden values
  reachable in double precision.

All operations are pure; batch scans can run solves concurrently (set
PT_WELL_THREADS), with output order fixed by (epsilon, k).
"""

from __future__ import annotations

import cmath
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import ModelSpec, potential_value, turning_radius, wedge_angles
from .wkb import wkb_energy_closed, wkb_energy_quadrature

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 25.0        # target WKB decay exponent at the outer point
DEFAULT_RTOL = 1e-11        # embedded RK relative tolerance
DEFAULT_TOL = 1e-9          # secant convergence: |dE| <= tol |E|
MAX_DEPTH = 120.0           # cap so radius_factor cannot explode the run
MAX_ITER = 60


class ShootingError(RuntimeError):
    """Integration or convergence failure inside the shooting solver."""


@dataclass(frozen=True)
class RayContour:
    """One inward integration ray: direction, outer radius, matching point."""

    angle: float
    outer_radius: float
    matching_point: complex = 0j


@dataclass(frozen=True)
class EigenResult:
    """A converged (or failed) eigenvalue solve for one level."""

    k: int
    E: complex
    residual: float     # |matching defect| at the final iterate
    iterations: int
    converged: bool


# ---------------------------------------------------------------------------
# outer radius from the decay depth
# ---------------------------------------------------------------------------

_GL32 = np.polynomial.legendre.leggauss(32)


def _decay_depth(model: ModelSpec, E: float, theta: float, R: float) -> float:
    """int |sqrt(V - E)| d|x| along the ray between turning radius and R."""
    r0 = turning_radius(model, E)
    if R <= r0:
        return 0.0
    nodes, wts = _GL32
    ex = cmath.exp(1j * theta)
    total = 0.0
    for n, w in zip(nodes, wts):
        s = 0.5 * (R - r0) * n + 0.5 * (R + r0)
        total += w * abs(cmath.sqrt(potential_value(model, s * ex) - E))
    return 0.5 * (R - r0) * total


def _outer_radius(model: ModelSpec, E: float, theta: float, depth: float) -> float:
    r0 = turning_radius(model, E)
    R = r0 * 1.05
    while _decay_depth(model, E, theta, R) < depth:
        R *= 1.25
        if R > 1e9:
            raise ShootingError("outer radius runaway")
    lo, hi = R / 1.25, R
    for _ in range(20):
        mid = 0.5 * (lo + hi)
        if _decay_depth(model, E, theta, mid) < depth:
            lo = mid
        else:
            hi = mid
    return hi


def build_contour(model: ModelSpec, E_guess: float,
                  radius_factor: float = 1.0,
                  depth: float = DEFAULT_DEPTH) -> tuple[RayContour, RayContour]:
    """The two anti-Stokes rays for a given energy scale.

    The outer radius makes the WKB decay exponent along each ray at least
    `depth` (25 by default, truncation error ~ e^-50).  `radius_factor`
    enlarges the radius for discretization-independence checks; because the
    depth grows like R^(M + eps/2 + 1), the effective depth is capped at
    MAX_DEPTH to keep large-deformation runs finite.
    """
    if E_guess <= 0.0:
        raise ValueError("E_guess must be positive")
    w = wedge_angles(model)
    rays = []
    for theta in (w.theta_left, w.theta_right):
        R = _outer_radius(model, E_guess, theta, depth) * radius_factor
        if radius_factor != 1.0 and _decay_depth(model, E_guess, theta, R) > MAX_DEPTH:
            R = _outer_radius(model, E_guess, theta, MAX_DEPTH)
        rays.append(RayContour(angle=theta, outer_radius=R))
    return rays[0], rays[1]


# ---------------------------------------------------------------------------
# embedded Dormand-Prince 5(4) for the complex pair (psi, dpsi/ds)
# ---------------------------------------------------------------------------

_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
_E1, _E3, _E4, _E5, _E6, _E7 = (_B1 - 5179 / 57600, _B3 - 7571 / 16695,
                                _B4 - 393 / 640, _B5 + 92097 / 339200,
                                _B6 - 187 / 2100, -1 / 40)


def _integrate(f, s0: float, s1: float, y0: complex, y1: complex,
               rtol: float, h0: float, nseg: int = 8) -> tuple[complex, complex]:
    """Adaptive DP45 from s0 to s1 with per-segment amplitude renormalization.

    The state is the complex pair (psi, dpsi/ds) of a linear ODE, so dividing
    both components by a common scale between segments leaves the final
    log-derivative untouched while keeping amplitudes in range.
    """
    s, h = s0, h0
    k10, k11 = f(s, y0, y1)
    steps = 0
    for iseg in range(nseg):
        send = s0 + (s1 - s0) * (iseg + 1) / nseg
        while s < send:
            if s + h > send:
                h = send - s
            ya0 = y0 + h * _A21 * k10
            ya1 = y1 + h * _A21 * k11
            k20, k21 = f(s + h / 5, ya0, ya1)
            ya0 = y0 + h * (_A31 * k10 + _A32 * k20)
            ya1 = y1 + h * (_A31 * k11 + _A32 * k21)
            k30, k31 = f(s + 3 * h / 10, ya0, ya1)
            ya0 = y0 + h * (_A41 * k10 + _A42 * k20 + _A43 * k30)
            ya1 = y1 + h * (_A41 * k11 + _A42 * k21 + _A43 * k31)
            k40, k41 = f(s + 4 * h / 5, ya0, ya1)
            ya0 = y0 + h * (_A51 * k10 + _A52 * k20 + _A53 * k30 + _A54 * k40)
            ya1 = y1 + h * (_A51 * k11 + _A52 * k21 + _A53 * k31 + _A54 * k41)
            k50, k51 = f(s + 8 * h / 9, ya0, ya1)
            ya0 = y0 + h * (_A61 * k10 + _A62 * k20 + _A63 * k30 + _A64 * k40 + _A65 * k50)
            ya1 = y1 + h * (_A61 * k11 + _A62 * k21 + _A63 * k31 + _A64 * k41 + _A65 * k51)
            k60, k61 = f(s + h, ya0, ya1)
            yn0 = y0 + h * (_B1 * k10 + _B3 * k30 + _B4 * k40 + _B5 * k50 + _B6 * k60)
            yn1 = y1 + h * (_B1 * k11 + _B3 * k31 + _B4 * k41 + _B5 * k51 + _B6 * k61)
            k70, k71 = f(s + h, yn0, yn1)
            e0 = h * (_E1 * k10 + _E3 * k30 + _E4 * k40 + _E5 * k50 + _E6 * k60 + _E7 * k70)
            e1 = h * (_E1 * k11 + _E3 * k31 + _E4 * k41 + _E5 * k51 + _E6 * k61 + _E7 * k71)
            sc0 = 1e-300 + rtol * max(abs(y0), abs(yn0))
            sc1 = 1e-300 + rtol * max(abs(y1), abs(yn1))
            err = math.sqrt(0.5 * ((abs(e0) / sc0) ** 2 + (abs(e1) / sc1) ** 2))
            steps += 1
            if steps > 2_000_000:
                raise ShootingError("step underflow: integration not advancing")
            if err <= 1.0:
                s += h
                y0, y1, k10, k11 = yn0, yn1, k70, k71
                h *= min(5.0, max(0.2, 0.9 * err ** -0.2)) if err > 0.0 else 5.0
            else:
                h *= max(0.2, 0.9 * err ** -0.2)
        m = max(abs(y0), abs(y1))
        if not (m > 0.0 and math.isfinite(m)):
            raise ShootingError("renormalization overflow in ray integration")
        y0, y1, k10, k11 = y0 / m, y1 / m, k10 / m, k11 / m
    return y0, y1


def _ray_rhs(model: ModelSpec, E: complex, theta: float, R: float):
    ex = cmath.exp(1j * theta)
    ex2 = ex * ex

    def f(s, a, b):
        x = (R - s) * ex
        return b, ex2 * (potential_value(model, x) - E) * a

    return f, ex


def _outgoing_ic(model: ModelSpec, E: complex, theta: float, R: float):
    """(psi, dpsi/ds) of the WKB solution decaying outward, at s = 0."""
    ex = cmath.exp(1j * theta)
    q = cmath.sqrt(potential_value(model, R * ex) - E)
    if (q * ex).real < 0.0:
        q = -q
    return 1.0 + 0j, q * ex


def integrate_log_derivative(model: ModelSpec, E: complex, ray: RayContour,
                             tol: float = DEFAULT_RTOL) -> complex:
    """u = psi'/psi at the ray's matching point (the origin).

    Integrates the linear pair (psi, dpsi/ds) inward from the outer point
    with the decaying WKB initial condition, renormalizing the amplitude
    between segments (u is renormalization invariant).

    Raises:
        ShootingError: on step underflow or amplitude overflow.
    """
    if not 1e-13 <= tol <= 1e-6:
        raise ValueError("tol out of range [1e-13, 1e-6]")
    R = ray.outer_radius
    f, ex = _ray_rhs(model, E, ray.angle, R)
    y0, y1 = _outgoing_ic(model, E, ray.angle, R)
    h0 = min(0.1 / max(abs(y1), 1.0), R / 50.0)
    y0, y1 = _integrate(f, 0.0, R, y0, y1, tol, h0)
    # psi'(x) = -e^{-i theta} dpsi/ds
    return -y1 / (ex * y0)


def mismatch(model: ModelSpec, E: complex, tol: float = DEFAULT_RTOL,
             radius_factor: float = 1.0) -> complex:
    """Origin-matched defect D = (u_L - u_R) / (1 + |u_L| + |u_R|).

    Zero at eigenvalues whose eigenfunction does not vanish at the origin;
    see the module docstring for why the solver uses the interior matching
    point instead.
    """
    left, right = build_contour(model, abs(E), radius_factor)
    uL = integrate_log_derivative(model, E, left, tol)
    uR = integrate_log_derivative(model, E, right, tol)
    return (uL - uR) / (1.0 + abs(uL) + abs(uR))


# ---------------------------------------------------------------------------
# interior matching: arch height and ray + arc integration
# ---------------------------------------------------------------------------

_GL64 = np.polynomial.legendre.leggauss(64)


def _im_action_to_axis(model: ModelSpec, E: float, y: float) -> float:
    """Im of int sqrt(E - V) dx from the right turning point to -i y."""
    d = model.epsilon * math.pi / (4.0 * model.M + 2.0 * model.epsilon)
    xR = turning_radius(model, E) * cmath.exp(-1j * d)
    a, b = xR, -1j * y
    nodes, wts = _GL64
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = [E - potential_value(model, mid + half * t) for t in nodes]
    n = len(vals)
    roots: list[complex] = [0j] * n
    q = cmath.sqrt(vals[-1])
    if q.imag < 0.0:
        q = -q
    roots[-1] = q
    for i in range(n - 2, -1, -1):
        q = cmath.sqrt(vals[i])
        if abs(q - roots[i + 1]) > abs(q + roots[i + 1]):
            q = -q
        roots[i] = q
    tot = 0j
    for i in range(n):
        tot += wts[i] * roots[i]
    return (tot * half).imag


def match_height(model: ModelSpec, E: float) -> float:
    """Height y* where the classically allowed arch crosses -i y.

    Found as the zero of the imaginary part of the action accumulated from
    the right turning point (path independent).  This is the origin at
    eps = 0 and approaches the turning radius as the deformation grows.
    """
    if model.epsilon == 0.0 and model.M % 2 == 1:
        return 0.0
    r = turning_radius(model, E)
    ys = np.linspace(0.0, 1.25 * r, 26)
    gs = [_im_action_to_axis(model, E, float(y)) for y in ys]
    lo = hi = None
    for i in range(len(ys) - 1, 0, -1):
        if gs[i] * gs[i - 1] <= 0.0:
            lo, hi = float(ys[i - 1]), float(ys[i])
            break
    if lo is None:
        return float(ys[int(np.argmin(np.abs(gs)))])
    glo = _im_action_to_axis(model, E, lo)
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        gm = _im_action_to_axis(model, E, mid)
        if glo * gm <= 0.0:
            hi = mid
        else:
            lo, glo = mid, gm
        if hi - lo < 1e-12 * max(1.0, r):
            break
    return 0.5 * (lo + hi)


def _u_interior(model: ModelSpec, E: complex, side: str, ym: float,
                rtol: float, radius_factor: float, depth: float) -> complex:
    """psi'/psi at -i ym: ray from the outer point to radius ym, then the
    circular arc |x| = ym down to the negative imaginary axis."""
    w = wedge_angles(model)
    theta = w.theta_left if side == "L" else w.theta_right
    sgn = 1.0 if side == "L" else -1.0   # arc direction of phi toward -pi/2
    R = _outer_radius(model, abs(E), theta, depth) * radius_factor
    if radius_factor != 1.0 and _decay_depth(model, abs(E), theta, R) > MAX_DEPTH:
        R = _outer_radius(model, abs(E), theta, MAX_DEPTH)
    f, ex = _ray_rhs(model, E, theta, R)
    y0, y1 = _outgoing_ic(model, E, theta, R)
    send = R - ym
    h0 = min(0.1 / max(abs(y1), 1.0), send / 50.0)
    y0, y1 = _integrate(f, 0.0, send, y0, y1, rtol, h0)
    dpsi_dx = -y1 / ex
    if ym <= 0.0:
        return dpsi_dx / y0
    dphi = abs(-math.pi / 2.0 - theta)

    def farc(t, a, b):
        x = ym * cmath.exp(1j * (theta + sgn * t))
        xp = sgn * 1j * x
        return b, xp * xp * (potential_value(model, x) - E) * a + sgn * 1j * b

    b0 = dpsi_dx * sgn * 1j * ym * cmath.exp(1j * theta)
    y0, y1 = _integrate(farc, 0.0, dphi, y0, b0, rtol, dphi / 50.0, nseg=4)
    xm = -1j * ym
    return y1 / (sgn * 1j * xm * y0)


def _matching_defect(model: ModelSpec, E: complex, rtol: float = DEFAULT_RTOL,
                     radius_factor: float = 1.0,
                     depth: float = DEFAULT_DEPTH) -> complex:
    """Interior-matched defect (u_L - u_R) / ((1 + |u_L|)(1 + |u_R|)).

    The product normalization keeps the defect bounded and vanishing at
    every eigenvalue, including states whose wavefunction has a node at the
    matching point (the log-derivatives then diverge on both sides).
    """
    ym = match_height(model, abs(E))
    uL = _u_interior(model, E, "L", ym, rtol, radius_factor, depth)
    uR = _u_interior(model, E, "R", ym, rtol, radius_factor, depth)
    return (uL - uR) / ((1.0 + abs(uL)) * (1.0 + abs(uR)))


# ---------------------------------------------------------------------------
# eigenvalue iteration
# ---------------------------------------------------------------------------

def level_nu(M: int, k: int) -> float:
    """Limit index of the k-th level: nu = k//M + ((k mod M) + 1)/(M + 1)."""
    return k // M + ((k % M) + 1) / (M + 1.0)


def default_seed(model: ModelSpec, k: int) -> float:
    """Solver seed: closed-form WKB for M = 1, else the better of the WKB
    quadrature (small deformation) and the solvable-limit scale (large)."""
    if model.M == 1:
        return wkb_energy_closed(k, model.epsilon)
    if model.epsilon < 4.0:
        return wkb_energy_quadrature(model, k)
    nu = level_nu(model.M, k)
    n = 2.0 * model.M + model.epsilon
    return (0.25 * nu * nu * n * n) ** (n / (n + 2.0))


def solve_level(model: ModelSpec, k: int, seed: complex | None = None,
                tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL,
                radius_factor: float = 1.0,
                max_iter: int = MAX_ITER) -> EigenResult:
    """Converge level k by damped complex secant on the matching defect.

    Stops when |dE| <= tol |E|; the result is flagged converged only if the
    PT-reality check |Im E| <= 1e-8 |Re E| also holds.  Failures return an
    unconverged EigenResult instead of raising.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    E0 = complex(seed) if seed is not None else complex(default_seed(model, k))
    E1 = E0 * 1.001
    try:
        w0 = _matching_defect(model, E0, rtol, radius_factor)
        w1 = _matching_defect(model, E1, rtol, radius_factor)
    except ShootingError as exc:
        logger.warning("integration failed at seed for k=%d: %s", k, exc)
        return EigenResult(k, E0, math.inf, 0, False)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        if w1 == w0:
            break
        dE = -w1 * (E1 - E0) / (w1 - w0)
        cap = 0.25 * abs(E1)
        if abs(dE) > cap:
            dE *= cap / abs(dE)
        E0, w0 = E1, w1
        E1 = E1 + dE
        try:
            w1 = _matching_defect(model, E1, rtol, radius_factor)
        except ShootingError as exc:
            logger.warning("integration failed at E=%s for k=%d: %s", E1, k, exc)
            return EigenResult(k, E1, math.inf, iterations, False)
        if abs(dE) <= tol * abs(E1):
            converged = True
            break
    pt_real = abs(E1.imag) <= 1e-8 * abs(E1.real)
    if not pt_real:
        logger.warning("PT-reality violated for k=%d: E=%s", k, E1)
    return EigenResult(k, E1, abs(w1), iterations, converged and pt_real)


def scan_levels(model_grid: Sequence[ModelSpec], k_max: int,
                tol: float = DEFAULT_TOL, rtol: float = DEFAULT_RTOL) -> list[EigenResult]:
    """Levels k = 0..k_max over a deformation grid, with continuation seeds.

    Results are ordered by (epsilon, k) regardless of execution schedule.
    Per-point failures are reported as unconverged entries and the scan
    continues.  A level that stops rising with epsilon triggers a warning,
    as does a collision of two levels.
    """
    models = sorted(model_grid, key=lambda m: m.epsilon)
    threads = int(os.environ.get("PT_WELL_THREADS", "1"))
    out: list[EigenResult] = []
    prev: dict[int, complex] = {}
    prev_eps: float | None = None
    for model in models:
        seeds = {}
        for k in range(k_max + 1):
            est = default_seed(model, k)
            if k in prev and prev_eps is not None:
                prev_model = ModelSpec(model.M, prev_eps)
                ratio = est / default_seed(prev_model, k)
                seeds[k] = prev[k].real * ratio
            else:
                seeds[k] = est

        def run(k: int) -> EigenResult:
            return solve_level(model, k, seeds[k], tol, rtol)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run, range(k_max + 1)))
        else:
            results = [run(k) for k in range(k_max + 1)]
        for k, res in enumerate(results):
            if res.converged:
                if k in prev and res.E.real < prev[k].real - tol * abs(res.E):
                    logger.warning("level k=%d not rising at epsilon=%g",
                                   k, model.epsilon)
                prev[k] = res.E
            out.append(res)
        for i in range(len(results)):
            for j in range(i + 1, len(results)):
                if results[i].converged and results[j].converged and \
                        abs(results[i].E - results[j].E) < 1e-6 * abs(results[i].E):
                    logger.warning("level collision at epsilon=%g: k=%d and k=%d",
                                   model.epsilon, i, j)
        prev_eps = model.epsilon
    return out

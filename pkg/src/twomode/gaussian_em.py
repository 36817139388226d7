"""Gaussian convex-roof entanglement of two-mode states.

A Gaussian entanglement measure of a mixed state is the pure-state
entanglement of the least entangled pure Gaussian state whose covariance
matrix fits under the mixed one.  In standard form the mixed matrix splits
into a position block gamma_q and a momentum block gamma_p, and every
admissible pure state is described by a single 2x2 matrix Gamma with
gamma_p^{-1} <= Gamma <= gamma_q.  Writing Gamma in the Pauli basis,
Gamma = [[x0 + x3, x1], [x1, x0 - x3]], the coefficients (x0, x1, x3) act as
coordinates in a 3d Minkowski space where each ordering constraint carves
out a light cone; the optimum saturates both, so it lies on the rim where
the two cones intersect.  That rim is an ellipse, a circle of radius k/2
after boosting along the axis joining the cone apexes, and the polar angle
theta on that circle is the single optimization variable.

The quantity minimized is the single-mode determinant of the pure state,
m = 1 + x1^2 / det Gamma, since every pure-state entanglement monotone is an
increasing function of m.  ``m_theta`` evaluates the closed-form profile
m(theta); ``gamma_from_theta`` builds the rim point itself and is the
independent geometric cross-check for that closed form.  From the minimum,
nu_tilde = sqrt(m) - sqrt(m - 1) is the partially-transposed symplectic
eigenvalue of the optimal pure state and h(nu_tilde) its entanglement of
formation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, MinimizationError, UnphysicalStateError
from .negativity import SYMMETRY_RTOL, h_function, is_separable_ppt
from .symplectic import StandardForm

#: States with nu_tilde_minus inside [1 - this, 1] are treated as separable
#: by the minimizer, which then returns m_opt = 1 exactly.
NEAR_SEPARABLE_TOL = 1e-8

#: Square-root arguments in the angular profile may round slightly below
#: zero exactly on feasibility boundaries; this deep they are clamped to 0,
#: anything more negative raises.
SQRT_CLAMP = 1e-12

_INVPHI = 0.5 * (math.sqrt(5.0) - 1.0)
_ETA = np.array([1.0, -1.0, -1.0])  # Minkowski metric signature (+, -, -)


@dataclass(frozen=True)
class GammaCoordinates:
    """Minkowski coordinates of a pure-state position block Gamma."""

    x0: float
    x1: float
    x3: float

    def det(self) -> float:
        return self.x0 * self.x0 - self.x1 * self.x1 - self.x3 * self.x3

    def to_matrix(self) -> np.ndarray:
        return np.array([
            [self.x0 + self.x3, self.x1],
            [self.x1, self.x0 - self.x3],
        ])

    def single_mode_determinant(self) -> float:
        """m = 1 + x1^2 / det Gamma of the pure state Gamma (+) Gamma^{-1}."""
        d = self.det()
        if d <= 0.0:
            raise DomainError(f"Gamma is not positive definite (det = {d:g})")
        return 1.0 + self.x1 * self.x1 / d


@dataclass(frozen=True)
class GemResult:
    """Outcome of the angular minimization for one state."""

    m_opt: float
    theta_opt: float
    nu_tilde_opt: float
    gaussian_eof: float
    extrema_found: int


def nu_tilde_from_m(m: float) -> float:
    """sqrt(m) - sqrt(m - 1), the PT eigenvalue of a pure state with
    single-mode determinant m; evaluated as 1/(sqrt(m) + sqrt(m-1))."""
    if m < 1.0:
        raise DomainError(f"single-mode determinant must be >= 1, got {m!r}")
    return 1.0 / (math.sqrt(m) + math.sqrt(m - 1.0))


def m_from_nu_tilde(nu: float) -> float:
    """Inverse of ``nu_tilde_from_m``: m = ((nu + 1/nu) / 2)^2."""
    if not 0.0 < nu <= 1.0:
        raise DomainError(f"nu_tilde must lie in (0, 1], got {nu!r}")
    half_sum = 0.5 * (nu + 1.0 / nu)
    return half_sum * half_sum


def _require_entangled(sf: StandardForm) -> float:
    if sf.c_plus < abs(sf.c_minus) - SQRT_CLAMP or sf.c_plus < 0.0:
        raise DomainError(
            "standard form must be sign-ordered with c_plus >= |c_minus| >= 0; "
            "use StandardForm.sign_ordered()"
        )
    nu = sf.spectrum().nu_tilde_minus
    if nu >= 1.0:
        raise DomainError(f"state is separable (nu_tilde_minus = {nu:.12g})")
    return nu


class _ThetaProfile:
    """Precomputed coefficients of m(theta) = 1 + num(theta)/den(theta).

    num(theta) = (n0 + n1 cos theta)^2 and
    den(theta) = d0 + dc cos theta + ds sin theta; only the three
    theta-independent square roots need domain clamping.
    """

    __slots__ = ("n0", "n1", "d0", "dc", "ds")

    def __init__(self, sf: StandardForm):
        _require_entangled(sf)
        a, b, cp, cm = sf.a, sf.b, sf.c_plus, sf.c_minus
        dq = a * b - cm * cm
        n0 = cp * dq - cm
        r1 = a - b * dq
        r2 = b - a * dq
        rr = r1 * r2
        # Both differences above cancel as states approach purity, so the
        # degeneracy threshold covers the rounding envelope of rr, not just
        # a fixed epsilon.
        eps = 2.220446049250313e-16
        r_floor = max(
            SQRT_CLAMP * (1.0 + r1 * r1 + r2 * r2),
            64.0 * eps * ((abs(a) + abs(b * dq)) * abs(r2)
                          + (abs(b) + abs(a * dq)) * abs(r1) + 1.0),
        )
        if rr < -1e-6 * (1.0 + r1 * r1 + r2 * r2):
            raise DomainError(
                f"square-root argument R = {rr:g} is negative beyond tolerance; "
                "state lies outside the regime of the angular profile"
            )
        # The common factor 2(ab - c_minus^2) multiplies the whole angular
        # bracket of the denominator; together with the numerator square this
        # makes m - 1 = [2 dq x1]^2 / [(2 dq)^2 det Gamma] on the rim.
        d0 = 2.0 * dq * (a * a + b * b + 2.0 * cp * cm)
        if rr > r_floor:
            sqrt_r = math.sqrt(rr)
            quad = a * a + b * b
            h_coeff = (
                2.0 * a * b * cm**3
                + quad * cp * cm * cm
                + (quad - 2.0 * a * a * b * b) * cm
                - a * b * (quad - 2.0) * cp
            )
            dc = -2.0 * dq * h_coeff / sqrt_r
            # The remaining square root is sqrt(1 - A^2/R) with
            # A = cp dq + cm.  The stable route uses the identity
            # R - A^2 = dq (1 + Det sigma - Delta): the argument is the
            # uncertainty-relation slack, which vanishes identically for
            # partial-minimum-uncertainty states and is negative only for
            # unphysical input.
            inv = sf.invariants()
            slack = 1.0 + inv.det_sigma - inv.delta
            scale = max(1.0, inv.det_sigma, abs(inv.delta))
            if slack < -1e-9 * scale:
                raise DomainError(
                    f"uncertainty slack 1 + Det - Delta = {slack:g} is negative: "
                    "not a physical state"
                )
            if slack <= 1e-11 * scale:
                # at most rounding noise away from minimum uncertainty,
                # where the sin(theta) term vanishes identically
                slack = 0.0
            s_arg = dq * slack / rr
            ds = 2.0 * dq * (a * a - b * b) * math.sqrt(s_arg)
        else:
            # Degenerate rim (pure state): the profile is the constant
            # 1 + n0^2 / d0, the limit of the full expression.
            sqrt_r = 0.0
            dc = 0.0
            ds = 0.0
        self.n0 = n0
        self.n1 = sqrt_r
        self.d0 = d0
        self.dc = dc
        self.ds = ds

    def __call__(self, theta):
        ct = np.cos(theta)
        st = np.sin(theta)
        num = (self.n0 + self.n1 * ct) ** 2
        return 1.0 + num / (self.d0 + self.dc * ct + self.ds * st)

    def at(self, theta: float) -> float:
        ct = math.cos(theta)
        st = math.sin(theta)
        num = (self.n0 + self.n1 * ct) ** 2
        return 1.0 + num / (self.d0 + self.dc * ct + self.ds * st)


def m_theta(sf: StandardForm, theta):
    """Single-mode determinant of the rim pure state at polar angle theta.

    Accepts a scalar or an array of angles.  The state must be entangled and
    sign-ordered (c_plus >= |c_minus|); the result is >= 1 for every theta.
    """
    profile = _ThetaProfile(sf)
    out = profile(theta)
    return float(out) if np.isscalar(theta) else out


def _mdot(x, y) -> float:
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2]


def _rim_geometry(sf: StandardForm):
    """Center and semiaxis vectors of the rim in (x0, x1, x3) coordinates.

    Returns (center, W, P) with rim(theta) = center + cos(theta) W
    + sin(theta) P; W and P are zero vectors when the rim degenerates to a
    point (pure states).  W points along the in-plane direction of growing
    x1, which makes the angle here agree with the one in ``m_theta``.
    """
    a, b, cp, cm = sf.a, sf.b, sf.c_plus, sf.c_minus
    dq = a * b - cm * cm
    apex_q = np.array([0.5 * (a + b), cp, 0.5 * (a - b)])
    apex_p = np.array([0.5 * (a + b) / dq, -cm / dq, -0.5 * (a - b) / dq])
    center = 0.5 * (apex_q + apex_p)
    gap = apex_q - apex_p
    k_sq = _mdot(gap, gap)
    k = math.sqrt(max(k_sq, 0.0))
    if k <= 1e-9 * (1.0 + abs(apex_q[0])):
        return apex_q, np.zeros(3), np.zeros(3)
    u = gap / k
    w = np.array([u[1] * u[0], 1.0 + u[1] * u[1], u[1] * u[2]])
    w /= math.sqrt(1.0 + u[1] * u[1])
    p = _ETA * np.cross(u, w)
    p /= math.sqrt(-_mdot(p, p))
    # Orientation of the sin(theta) axis fixed so that the rim angle matches
    # the closed-form profile for both mode orderings (a > b and a < b).
    if _mdot(center, p) * (a * a - b * b) < 0.0:
        p = -p
    return center, 0.5 * k * w, 0.5 * k * p


def gamma_from_theta(sf: StandardForm, theta: float) -> GammaCoordinates:
    """Rim point at polar angle theta: the pure-state block Gamma that
    saturates det(gamma_q - Gamma) = det(Gamma - gamma_p^{-1}) = 0.

    For pure input states the rim collapses to the single point
    Gamma = gamma_q, returned for every theta.

    Raises:
        DomainError: if the state is separable (no optimization rim).
    """
    _require_entangled(sf)
    center, w_axis, p_axis = _rim_geometry(sf)
    x = center + math.cos(theta) * w_axis + math.sin(theta) * p_axis
    return GammaCoordinates(float(x[0]), float(x[1]), float(x[2]))


def _count_extrema(vals: np.ndarray) -> int:
    """Local extrema of the sampled profile over one period.

    Counts sign alternations of the circular finite differences, ignoring
    steps below the floating-point noise floor; a flat profile counts as a
    single (degenerate) extremum.
    """
    diffs = np.diff(vals, append=vals[:1])
    floor = 1e-13 * max(1.0, float(np.max(np.abs(vals))))
    signs = np.sign(diffs)
    signs[np.abs(diffs) <= floor] = 0.0
    compressed = signs[signs != 0.0]
    if compressed.size == 0:
        return 1
    flips = int(np.count_nonzero(compressed != np.roll(compressed, 1)))
    return max(flips, 1)


def _golden_refine(profile: _ThetaProfile, lo: float, hi: float, tol: float):
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = profile.at(x1)
    f2 = profile.at(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = profile.at(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = profile.at(x2)
    mid = 0.5 * (lo + hi)
    return mid, profile.at(mid)


def minimize_m(
    sf: StandardForm,
    *,
    grid_points: int = 720,
    refine_tol: float = 1e-12,
    near_separable_tol: float = NEAR_SEPARABLE_TOL,
    symmetric_shortcut: bool = True,
    log_base=2,
) -> GemResult:
    """Globally minimize the single-mode determinant over the rim angle.

    A uniform seed grid brackets every local minimum (the profile has at
    most four extrema per period), each bracket is narrowed by golden-section
    search to ``refine_tol`` in theta, and the best refined value wins.
    Separable states short-circuit to m_opt = 1; symmetric states take the
    closed result nu_tilde_opt = nu_tilde_minus(sigma) unless the shortcut is
    disabled.
    """
    # Polynomial-inequality check: for pure states nu_minus itself sits on a
    # vanishing discriminant and carries sqrt-amplified rounding noise.
    if not sf.is_physical(1e-9):
        raise UnphysicalStateError(f"not a physical state: {sf}")
    nu_sigma = sf.spectrum().nu_tilde_minus
    if nu_sigma >= 1.0 - near_separable_tol:
        return GemResult(1.0, 0.0, 1.0, 0.0, 1)
    if symmetric_shortcut and sf.is_symmetric(SYMMETRY_RTOL):
        m_opt = m_from_nu_tilde(nu_sigma)
        return GemResult(m_opt, math.pi, nu_sigma, h_function(nu_sigma, log_base), 2)

    ordered = sf.sign_ordered()
    profile = _ThetaProfile(ordered)
    step = 2.0 * math.pi / grid_points
    thetas = np.arange(grid_points) * step
    vals = profile(thetas)
    if not np.all(np.isfinite(vals)):
        bad = int(np.count_nonzero(~np.isfinite(vals)))
        raise MinimizationError(
            f"angular profile produced {bad}/{grid_points} non-finite values "
            f"for standard form {ordered}"
        )

    extrema = _count_extrema(vals)
    spread = float(np.max(vals) - np.min(vals))
    if spread <= 1e-13 * max(1.0, float(np.max(np.abs(vals)))):
        # Flat profile (degenerate rim): any angle realizes the minimum.
        m_opt = float(np.min(vals))
        theta_opt = 0.0
    else:
        is_min = (vals < np.roll(vals, 1)) & (vals <= np.roll(vals, -1))
        seeds = np.nonzero(is_min)[0]
        if seeds.size == 0:
            raise MinimizationError(
                f"no bracketable minimum on a {grid_points}-point grid "
                f"(spread {spread:g}) for standard form {ordered}"
            )
        m_opt = math.inf
        theta_opt = 0.0
        for idx in seeds:
            center = float(thetas[idx])
            theta, value = _golden_refine(
                profile, center - step, center + step, refine_tol
            )
            if value < m_opt:
                m_opt = value
                theta_opt = theta % (2.0 * math.pi)
    m_opt = max(m_opt, 1.0)
    nu_opt = nu_tilde_from_m(m_opt)
    geof = h_function(nu_opt, log_base) if nu_opt < 1.0 else 0.0
    return GemResult(m_opt, theta_opt, nu_opt, geof, extrema)


def gaussian_eof(sf: StandardForm, log_base=2, **kwargs) -> float:
    """Gaussian entanglement of formation: h applied to the optimal
    pure-state PT eigenvalue; 0 for separable states."""
    if is_separable_ppt(sf.spectrum()):
        return 0.0
    return minimize_m(sf, log_base=log_base, **kwargs).gaussian_eof

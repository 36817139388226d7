"""Extremal-negativity families of two-mode states and their orderings.

Entangled two-mode standard forms admit a parametrization by the average
local mixedness s, the mixedness asymmetry d, the global mixedness g, and a
residual coefficient lambda in [-1, +1]: the purities are
mu_1 = 1/(s+d), mu_2 = 1/(s-d), mu = 1/g.  At fixed purities, lambda = +1
gives the states of maximal negativity (GMEMS, nonsymmetric thermal
squeezed states) and lambda = -1 the states of minimal negativity (GLEMS,
partial minimum-uncertainty states with nu_minus = 1).  When g = 2|d| + 1
the two classes coalesce into the GMEMMS, fixed by the marginals alone.

Closed forms for the optimal single-mode determinant m of both families
allow comparing the ordering that Gaussian convex-roof measures induce
against the one the negativities induce, including the region where the two
orderings disagree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .gaussian_em import m_from_nu_tilde
from .symplectic import StandardForm

_PARAM_TOL = 1e-12

# Candidate closed-form values for the GLEMS optimum are accepted only if
# they clear m >= 1 and the universal sandwich
# ((nu + 1/nu)/2)^2 <= m <= 1/nu^2 up to this relative slack.
_BOUND_RTOL = 1e-9


@dataclass(frozen=True)
class ExtremalParams:
    """Mixedness parametrization (s, d, g, lambda) of a standard form."""

    s: float
    d: float
    g: float
    lam: float

    def validate(self) -> None:
        if not self.s >= 1.0 - _PARAM_TOL:
            raise DomainError(f"constraint s >= 1 violated (s = {self.s!r})")
        if not abs(self.d) <= self.s - 1.0 + _PARAM_TOL:
            raise DomainError(
                f"constraint |d| <= s - 1 violated (s = {self.s!r}, d = {self.d!r})"
            )
        if not self.g >= 2.0 * abs(self.d) + 1.0 - _PARAM_TOL:
            raise DomainError(
                f"constraint g >= 2|d| + 1 violated (d = {self.d!r}, g = {self.g!r})"
            )
        if not -1.0 - _PARAM_TOL <= self.lam <= 1.0 + _PARAM_TOL:
            raise DomainError(f"constraint -1 <= lambda <= 1 violated (lambda = {self.lam!r})")


class Entanglement(enum.Enum):
    ENTANGLED = "entangled"
    SEPARABLE = "separable"


class Regime(enum.Enum):
    """Classification of one (s, d, g) cell of the extremal-ordering map."""

    ORDERING_PRESERVED = "ordering_preserved"
    ORDERING_INVERTED = "ordering_inverted"
    COEXISTENCE = "coexistence"
    BOTH_SEPARABLE = "both_separable"
    UNPHYSICAL = "unphysical"


@dataclass(frozen=True)
class OrderingVerdict:
    m_gmems: float
    m_glems: float
    regime: Regime


def gmems_threshold(s: float) -> float:
    """GMEMS are entangled iff g < 2s - 1."""
    return 2.0 * s - 1.0


def glems_threshold(s: float, d: float) -> float:
    """GLEMS are entangled iff g < sqrt(2(s^2 + d^2) - 1)."""
    return math.sqrt(2.0 * (s * s + d * d) - 1.0)


def build_state(p: ExtremalParams) -> StandardForm:
    """Standard form (s + d, s - d, c_plus, c_minus) with purities
    (1/g, 1/(s+d), 1/(s-d)).

    The off-diagonal correlations are
    c_pm = [sqrt(Td^2 - 4g^2) +- sqrt(Ts^2 - 4g^2)] / (4 sqrt(s^2 - d^2))
    with Tx = 4x^2 + (g^2 + 1)(lambda - 1)/2 - (2d^2 + g)(lambda + 1).

    Raises:
        DomainError: when a constraint fails or either square-root argument
            is negative beyond tolerance (the parametrization covers
            entangled states; far into the separable region it leaves the
            real domain).
    """
    p.validate()
    s, d, g, lam = p.s, p.d, p.g, p.lam
    shift = 0.5 * (g * g + 1.0) * (lam - 1.0) - (2.0 * d * d + g) * (lam + 1.0)
    t_d = 4.0 * d * d + shift
    t_s = 4.0 * s * s + shift
    four_g_sq = 4.0 * g * g

    def _sqrt_arg(t: float, label: str) -> float:
        arg = t * t - four_g_sq
        scale = max(t * t, four_g_sq, 1.0)
        if arg < -1e-10 * scale:
            raise DomainError(
                f"square-root argument {label} = {arg:g} is negative: "
                f"(s, d, g, lambda) = ({s}, {d}, {g}, {lam}) is outside the "
                "real domain of the parametrization"
            )
        if arg <= 1e-12 * scale:
            # exactly zero at lambda = +1 and on the g = 2|d| + 1 line;
            # rounding noise under the square root would shift c_pm
            return 0.0
        return arg
    root_d = math.sqrt(_sqrt_arg(t_d, "Td^2 - 4g^2"))
    root_s = math.sqrt(_sqrt_arg(t_s, "Ts^2 - 4g^2"))
    norm = 4.0 * math.sqrt(s * s - d * d)
    return StandardForm(s + d, s - d, (root_d + root_s) / norm, (root_d - root_s) / norm)


def classify_entanglement(p: ExtremalParams) -> Entanglement:
    """Separability of the parametrized state.

    Closed thresholds for the extremal values of lambda; anything in between
    falls back to the PPT criterion on the built state.
    """
    p.validate()
    if abs(p.lam - 1.0) <= _PARAM_TOL:
        entangled = p.g < gmems_threshold(p.s)
    elif abs(p.lam + 1.0) <= _PARAM_TOL:
        entangled = p.g < glems_threshold(p.s, p.d)
    else:
        entangled = build_state(p).spectrum().nu_tilde_minus < 1.0
    return Entanglement.ENTANGLED if entangled else Entanglement.SEPARABLE


def _nu_tilde_from_closed(delta_tilde: float, det_sigma: float) -> float:
    disc = delta_tilde * delta_tilde - 4.0 * det_sigma
    if disc < 0.0 or delta_tilde <= 0.0:
        return math.nan
    return math.sqrt(2.0 * det_sigma / (delta_tilde + math.sqrt(disc)))


def nu_tilde_gmems(s: float, d: float, g: float) -> float:
    """Smallest PT symplectic eigenvalue of the GMEMS at (s, d, g);
    Delta_tilde reduces to 4s^2 - 2g."""
    return _nu_tilde_from_closed(4.0 * s * s - 2.0 * g, g * g)


def nu_tilde_glems(s: float, d: float, g: float) -> float:
    """Smallest PT symplectic eigenvalue of the GLEMS at (s, d, g);
    Delta_tilde reduces to 4(s^2 + d^2) - g^2 - 1."""
    return _nu_tilde_from_closed(4.0 * (s * s + d * d) - g * g - 1.0, g * g)


def m_opt_gmems(p: ExtremalParams | None = None, *, s=None, d=None, g=None) -> float:
    """Closed-form optimal single-mode determinant for GMEMS.

    m = 1 for g >= 2s - 1 (separable), otherwise
    {(g+1)s - sqrt([(g-1)^2 - 4d^2](s^2 - d^2 - g))}^2 / [4(d^2 + g)^2].
    """
    if p is not None:
        s, d, g = p.s, p.d, p.g
    ExtremalParams(s, d, g, 1.0).validate()
    if g >= gmems_threshold(s):
        return 1.0
    t1 = (g - 1.0) ** 2 - 4.0 * d * d
    t2 = s * s - d * d - g
    for label, val in (("(g-1)^2 - 4d^2", t1), ("s^2 - d^2 - g", t2)):
        if val < -1e-10 * max(1.0, s * s):
            raise DomainError(f"factor {label} = {val:g} is negative at (s, d, g) = ({s}, {d}, {g})")
    num = (g + 1.0) * s - math.sqrt(max(t1, 0.0) * max(t2, 0.0))
    den = 2.0 * (d * d + g)
    return (num / den) ** 2


def _glems_profile_constants(s: float, d: float, g: float):
    """(A, B) coefficients of the GLEMS angular profile
    m(theta) = 1 + (A cos theta + B)^2 / [2(ab - c_minus^2)((g^2-1)cos theta + g^2+1)]."""
    sf = build_state(ExtremalParams(s, d, g, -1.0))
    dq = sf.a * sf.b - sf.c_minus**2
    return sf.c_plus * dq + sf.c_minus, sf.c_plus * dq - sf.c_minus


def m_opt_glems(p: ExtremalParams | None = None, *, s=None, d=None, g=None) -> float:
    """Closed-form optimal single-mode determinant for GLEMS.

    m = 1 for g >= sqrt(2(s^2 + d^2) - 1) (separable).  Below that the
    profile depends on cos theta alone and its global minimum sits either at
    theta = pi, worth
    [-g^4 + 2(2d^2 + 2s^2 + 1)g^2 - (4d^2-1)(4s^2-1) - sqrt(delta)] / (8g^2),
    or at the interior critical angle, worth 16 s^2 d^2 / (g^2 - 1)^2, which
    exists only when its cosine lands in [-1, 1].  Both candidates are
    screened against m >= 1 and the universal sandwich
    ((nu + 1/nu)/2)^2 <= m <= 1/nu^2 before the smaller survivor is
    returned; theta = 0 never undercuts theta = pi for this family.
    """
    if p is not None:
        s, d, g = p.s, p.d, p.g
    ExtremalParams(s, d, g, -1.0).validate()
    g_sq = g * g
    if g_sq >= 2.0 * (s * s + d * d) - 1.0:
        return 1.0

    delta = (
        (4.0 * d * d - (g + 1.0) ** 2)
        * (4.0 * d * d - (g - 1.0) ** 2)
        * (g_sq - (2.0 * s + 1.0) ** 2)
        * (g_sq - (2.0 * s - 1.0) ** 2)
    )
    if delta < 0.0:
        if delta < -1e-9 * max(1.0, (4.0 * s * s) ** 2):
            raise DomainError(f"delta = {delta:g} is negative at (s, d, g) = ({s}, {d}, {g})")
        delta = 0.0
    m_pi = (
        -g_sq * g_sq
        + 2.0 * (2.0 * d * d + 2.0 * s * s + 1.0) * g_sq
        - (4.0 * d * d - 1.0) * (4.0 * s * s - 1.0)
        - math.sqrt(delta)
    ) / (8.0 * g_sq)
    candidates = [m_pi]
    if g > 1.0 + _PARAM_TOL:
        coeff_a, coeff_b = _glems_profile_constants(s, d, g)
        if coeff_a > 0.0:
            cos_star = coeff_b / coeff_a - 2.0 * (g_sq + 1.0) / (g_sq - 1.0)
            if abs(cos_star) <= 1.0:
                candidates.append(16.0 * s * s * d * d / (g_sq - 1.0) ** 2)

    nu = nu_tilde_glems(s, d, g)
    lo = m_from_nu_tilde(nu) * (1.0 - _BOUND_RTOL)
    hi = (1.0 + _BOUND_RTOL) / (nu * nu)
    survivors = [m for m in candidates if 1.0 - _BOUND_RTOL <= m and lo <= m <= hi]
    if not survivors:
        raise DomainError(
            f"no closed-form candidate in bounds at (s, d, g) = ({s}, {d}, {g}): "
            f"candidates {candidates}, sandwich [{lo:g}, {hi:g}]"
        )
    return max(min(survivors), 1.0)


def m_opt_gmemms(s: float, nu_tilde_minus: float) -> float:
    """Optimal single-mode determinant of the maximal-negativity-at-fixed-
    marginals states, as a function of s and their PT eigenvalue:
    (2s / (1 - nu^2 + 2 nu s))^2, increasing in s."""
    nu = float(nu_tilde_minus)
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu_tilde_minus must lie in (0, 1), got {nu!r}")
    s_min = (1.0 + nu * nu) / (2.0 * nu)
    if s < s_min - 1e-12 * s_min:
        raise DomainError(
            f"s = {s!r} below the minimum {s_min:g} admitting |d| >= 0 at nu = {nu}"
        )
    return (2.0 * s / (1.0 - nu * nu + 2.0 * nu * s)) ** 2


def m_max(nu_tilde_minus: float) -> float:
    """Large-s limit of the family above: 1 / nu^2, the conjectured ceiling
    for the optimal single-mode determinant at fixed negativity."""
    nu = float(nu_tilde_minus)
    if not 0.0 < nu < 1.0:
        raise DomainError(f"nu_tilde_minus must lie in (0, 1), got {nu!r}")
    return 1.0 / (nu * nu)


def ordering_compare(s: float, d: float, g: float) -> OrderingVerdict:
    """Compare the Gaussian-measure ordering of the two extremal families
    at one purity assignment."""
    try:
        ExtremalParams(s, d, g, 1.0).validate()
    except DomainError:
        return OrderingVerdict(math.nan, math.nan, Regime.UNPHYSICAL)
    if g >= gmems_threshold(s):
        return OrderingVerdict(1.0, 1.0, Regime.BOTH_SEPARABLE)
    if g >= glems_threshold(s, d):
        return OrderingVerdict(m_opt_gmems(s=s, d=d, g=g), 1.0, Regime.COEXISTENCE)
    m_g = m_opt_gmems(s=s, d=d, g=g)
    m_l = m_opt_glems(s=s, d=d, g=g)
    regime = Regime.ORDERING_PRESERVED if m_g >= m_l else Regime.ORDERING_INVERTED
    return OrderingVerdict(m_g, m_l, regime)


@dataclass(frozen=True)
class ScanCell:
    s: float
    d: float
    g: float
    m_gmems: float
    m_glems: float
    nu_tilde_gmems: float
    nu_tilde_glems: float
    regime: Regime


@dataclass(frozen=True)
class BoundaryPoint:
    s: float
    d: float
    g: float


def _scan_cell(s: float, d: float, g: float) -> ScanCell:
    verdict = ordering_compare(s, d, g)
    if verdict.regime is Regime.UNPHYSICAL:
        nan = math.nan
        return ScanCell(s, d, g, nan, nan, nan, nan, verdict.regime)
    return ScanCell(
        s, d, g,
        verdict.m_gmems, verdict.m_glems,
        nu_tilde_gmems(s, d, g), nu_tilde_glems(s, d, g),
        verdict.regime,
    )


def _ordering_gap(s: float, d: float, g: float) -> float:
    return m_opt_gmems(s=s, d=d, g=g) - m_opt_glems(s=s, d=d, g=g)


def _boundary_in_column(s: float, d: float, g_tol: float = 1e-9) -> list[float]:
    """g values where the two closed forms cross, bisected inside the
    window where both families are entangled."""
    lo = 2.0 * abs(d) + 1.0
    hi = glems_threshold(s, d)
    if hi - lo <= 4.0 * g_tol:
        return []
    samples = 64
    crossings = []
    gs = [lo + (hi - lo) * (i + 0.5) / samples for i in range(samples)]
    gaps = [_ordering_gap(s, d, g) for g in gs]
    for i in range(samples - 1):
        if gaps[i] == 0.0:
            crossings.append(gs[i])
        elif gaps[i] * gaps[i + 1] < 0.0:
            a, b = gs[i], gs[i + 1]
            fa = gaps[i]
            while b - a > g_tol:
                mid = 0.5 * (a + b)
                fm = _ordering_gap(s, d, mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            crossings.append(0.5 * (a + b))
    return crossings


def scan_ordering_slice(
    fixed_a: float,
    b_range: tuple[float, float],
    g_range: tuple[float, float],
    resolution: int = 200,
) -> tuple[list[ScanCell], list[BoundaryPoint]]:
    """Classify a (b, g) grid at fixed local mixedness a of mode 1.

    Returns the row-major cell table (b slow axis, g fast axis) and the
    bisected polyline where the two closed forms agree.
    """
    if resolution < 2:
        raise DomainError("resolution must be at least 2")
    bs = [b_range[0] + (b_range[1] - b_range[0]) * i / (resolution - 1) for i in range(resolution)]
    gs = [g_range[0] + (g_range[1] - g_range[0]) * i / (resolution - 1) for i in range(resolution)]
    cells = []
    boundary = []
    for b in bs:
        s = 0.5 * (fixed_a + b)
        d = 0.5 * (fixed_a - b)
        for g in gs:
            cells.append(_scan_cell(s, d, g))
        try:
            ExtremalParams(s, d, 2.0 * abs(d) + 1.0, 1.0).validate()
        except DomainError:
            continue
        boundary.extend(BoundaryPoint(s, d, g) for g in _boundary_in_column(s, d))
    return cells, boundary


def scan_ordering_3d(
    s_range: tuple[float, float],
    d_range: tuple[float, float],
    g_range: tuple[float, float],
    resolution: int = 48,
) -> tuple[list[ScanCell], list[BoundaryPoint]]:
    """Classify an (s, d, g) grid; same outputs as the fixed-a slice,
    with the boundary bisected in g for every (s, d) pair."""
    if resolution < 2:
        raise DomainError("resolution must be at least 2")

    def _axis(rng):
        return [rng[0] + (rng[1] - rng[0]) * i / (resolution - 1) for i in range(resolution)]

    cells = []
    boundary = []
    for s in _axis(s_range):
        for d in _axis(d_range):
            for g in _axis(g_range):
                cells.append(_scan_cell(s, d, g))
            try:
                ExtremalParams(s, d, 2.0 * abs(d) + 1.0, 1.0).validate()
            except DomainError:
                continue
            boundary.extend(BoundaryPoint(s, d, g) for g in _boundary_in_column(s, d))
    return cells, boundary

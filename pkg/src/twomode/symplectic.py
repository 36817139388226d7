"""Two-mode Gaussian covariance matrices: physicality, standard form, spectra.

Conventions: natural units with the vacuum covariance matrix equal to the
4x4 identity, quadratures ordered (q1, p1, q2, p2), and commutation
relations [X_i, X_j] = 2i * OMEGA_ij.  In these units every physicality
threshold sits at 1: a matrix is a valid state iff its smallest symplectic
eigenvalue is >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MalformedInputError, UnphysicalStateError

OMEGA = np.array([
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [0.0, 0.0, -1.0, 0.0],
])

#: Absolute slack allowed on the physicality inequalities.
DEFAULT_TOL = 1e-10

# Relative clamp for discriminants that should be non-negative but may round
# slightly below zero when two symplectic eigenvalues (almost) coincide.
_DISC_RTOL = 1e-9


@dataclass(frozen=True)
class SymplecticInvariants:
    """Local-symplectic invariants of a two-mode covariance matrix.

    ``delta`` is Det(alpha) + Det(beta) + 2 Det(gamma); ``delta_tilde`` is the
    same combination with the sign of Det(gamma) flipped, i.e. the value taken
    after partial transposition of the second mode.
    """

    det_alpha: float
    det_beta: float
    det_gamma: float
    det_sigma: float
    delta: float
    delta_tilde: float


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a state and of its partial transpose."""

    nu_minus: float
    nu_plus: float
    nu_tilde_minus: float
    nu_tilde_plus: float


@dataclass(frozen=True)
class StandardForm:
    """Canonical correlations (a, b, c_plus, c_minus) of a two-mode state.

    Every two-mode covariance matrix is equivalent, under local symplectic
    operations, to the matrix with diagonal blocks a*I, b*I and off-diagonal
    block diag(c_plus, c_minus).  The sign convention used throughout the
    package is c_plus >= |c_minus| and c_plus >= 0.
    """

    a: float
    b: float
    c_plus: float
    c_minus: float

    def __post_init__(self):
        vals = (self.a, self.b, self.c_plus, self.c_minus)
        if not all(math.isfinite(v) for v in vals):
            raise MalformedInputError(f"standard form entries must be finite, got {vals}")
        if self.a <= 0.0 or self.b <= 0.0:
            raise MalformedInputError("diagonal correlations a, b must be positive")

    def to_matrix(self) -> np.ndarray:
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        return np.array([
            [a, 0.0, cp, 0.0],
            [0.0, a, 0.0, cm],
            [cp, 0.0, b, 0.0],
            [0.0, cm, 0.0, b],
        ])

    def invariants(self) -> SymplecticInvariants:
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        det_gamma = cp * cm
        det_sigma = (a * b - cp * cp) * (a * b - cm * cm)
        quad = a * a + b * b
        return SymplecticInvariants(
            det_alpha=a * a,
            det_beta=b * b,
            det_gamma=det_gamma,
            det_sigma=det_sigma,
            delta=quad + 2.0 * det_gamma,
            delta_tilde=quad - 2.0 * det_gamma,
        )

    def spectrum(self) -> SymplecticSpectrum:
        return _spectrum_from_invariants(self.invariants())

    def is_symmetric(self, rtol: float = 1e-9) -> bool:
        return abs(self.a - self.b) <= rtol * max(self.a, self.b)

    def is_physical(self, tol: float = DEFAULT_TOL) -> bool:
        inv = self.invariants()
        if self.a < 1.0 - tol or self.b < 1.0 - tol:
            return False
        if inv.det_sigma < 1.0 - tol:
            return False
        if inv.delta > 1.0 + inv.det_sigma + tol:
            return False
        # positive semidefiniteness of the reassembled matrix
        ab = self.a * self.b
        return ab - self.c_plus**2 >= -tol and ab - self.c_minus**2 >= -tol

    def is_pure(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.invariants().det_sigma - 1.0) <= tol

    def sign_ordered(self) -> "StandardForm":
        """Equivalent standard form with c_plus >= |c_minus| and c_plus >= 0.

        The two residual local freedoms are a simultaneous sign flip of both
        off-diagonal correlations and the exchange of which quadrature pair
        carries the larger one; both are local rotations.
        """
        cp, cm = self.c_plus, self.c_minus
        if abs(cm) > abs(cp):
            cp, cm = -cm, -cp
        if cp < 0.0:
            cp, cm = -cp, -cm
        return StandardForm(self.a, self.b, cp, cm)


def _check_matrix(cm, tol: float) -> np.ndarray:
    arr = np.asarray(cm, dtype=float)
    if arr.shape != (4, 4):
        raise MalformedInputError(f"expected a 4x4 covariance matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MalformedInputError("covariance matrix contains non-finite entries")
    asym = np.max(np.abs(arr - arr.T))
    if asym > max(tol, 1e-8 * np.max(np.abs(arr))):
        raise MalformedInputError(f"covariance matrix is not symmetric (max asymmetry {asym:g})")
    return 0.5 * (arr + arr.T)


def _det2(m) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _invariants_of_matrix(arr: np.ndarray) -> SymplecticInvariants:
    det_alpha = _det2(arr[:2, :2])
    det_beta = _det2(arr[2:, 2:])
    det_gamma = _det2(arr[:2, 2:])
    det_sigma = float(np.linalg.det(arr))
    return SymplecticInvariants(
        det_alpha=det_alpha,
        det_beta=det_beta,
        det_gamma=det_gamma,
        det_sigma=det_sigma,
        delta=det_alpha + det_beta + 2.0 * det_gamma,
        delta_tilde=det_alpha + det_beta - 2.0 * det_gamma,
    )


def _nu_pair(delta: float, det_sigma: float) -> tuple[float, float]:
    """Both symplectic eigenvalues from (Delta, Det sigma).

    nu_-^2 and nu_+^2 are the roots of x^2 - Delta x + Det sigma; the smaller
    root is evaluated as Det sigma over the larger one to avoid cancellation.
    """
    disc = delta * delta - 4.0 * det_sigma
    scale = max(delta * delta, abs(4.0 * det_sigma), 1.0)
    if disc < 0.0:
        if disc < -_DISC_RTOL * scale:
            raise UnphysicalStateError(
                f"symplectic discriminant is negative (Delta={delta:g}, Det={det_sigma:g}); "
                "not a valid covariance matrix"
            )
        disc = 0.0
    hi_sq = 0.5 * (delta + math.sqrt(disc))
    if hi_sq <= 0.0 or det_sigma < 0.0:
        raise UnphysicalStateError(
            f"symplectic spectrum undefined (Delta={delta:g}, Det={det_sigma:g})"
        )
    lo_sq = det_sigma / hi_sq if hi_sq > 0.0 else 0.0
    return math.sqrt(lo_sq), math.sqrt(hi_sq)


def _spectrum_from_invariants(inv: SymplecticInvariants) -> SymplecticSpectrum:
    nu_minus, nu_plus = _nu_pair(inv.delta, inv.det_sigma)
    nu_t_minus, nu_t_plus = _nu_pair(inv.delta_tilde, inv.det_sigma)
    return SymplecticSpectrum(nu_minus, nu_plus, nu_t_minus, nu_t_plus)


def validate_physical(cm, tol: float = DEFAULT_TOL) -> bool:
    """Check the uncertainty principle for a candidate covariance matrix.

    True iff the matrix is positive semidefinite, Det sigma >= 1, and
    Delta <= 1 + Det sigma, all within ``tol``.  Together these are
    equivalent to both symplectic eigenvalues being >= 1.

    Raises:
        MalformedInputError: if the input is not a symmetric 4x4 matrix.
    """
    arr = _check_matrix(cm, tol)
    inv = _invariants_of_matrix(arr)
    if inv.det_sigma < 1.0 - tol:
        return False
    if inv.delta > 1.0 + inv.det_sigma + tol:
        return False
    return bool(np.linalg.eigvalsh(arr)[0] >= -tol)


def require_physical(cm, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validated, symmetrized copy of ``cm``; raises if unphysical."""
    arr = _check_matrix(cm, tol)
    inv = _invariants_of_matrix(arr)
    if inv.det_sigma < 1.0 - tol:
        raise UnphysicalStateError(
            f"Det sigma = {inv.det_sigma:.12g} < 1 violates the purity bound"
        )
    if inv.delta > 1.0 + inv.det_sigma + tol:
        raise UnphysicalStateError(
            f"Delta = {inv.delta:.12g} exceeds 1 + Det sigma = {1.0 + inv.det_sigma:.12g}"
        )
    if np.linalg.eigvalsh(arr)[0] < -tol:
        raise UnphysicalStateError("covariance matrix is not positive semidefinite")
    return arr


def local_invariants(cm, tol: float = DEFAULT_TOL) -> SymplecticInvariants:
    """Block determinants and the Delta invariants of a physical matrix."""
    arr = require_physical(cm, tol)
    return _invariants_of_matrix(arr)


def symplectic_spectrum(cm, tol: float = DEFAULT_TOL) -> SymplecticSpectrum:
    """Symplectic eigenvalues of ``cm`` and of its partial transpose.

    Computed from the invariants: 2 nu_{-+}^2 = Delta -+ sqrt(Delta^2 - 4 Det),
    and the same with Delta_tilde for the partially transposed matrix.
    """
    return _spectrum_from_invariants(local_invariants(cm, tol))


def spectrum_via_eigenvalues(cm) -> SymplecticSpectrum:
    """Spectrum through |i Omega sigma| eigenvalues; slow cross-check route.

    Kept as an independent oracle for the closed-form path, not for
    production use.
    """
    arr = _check_matrix(cm, DEFAULT_TOL)

    def _pair(mat):
        eigs = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ mat)))
        return float(0.5 * (eigs[0] + eigs[1])), float(0.5 * (eigs[2] + eigs[3]))

    nu_minus, nu_plus = _pair(arr)
    nu_t_minus, nu_t_plus = _pair(partial_transpose(arr))
    return SymplecticSpectrum(nu_minus, nu_plus, nu_t_minus, nu_t_plus)


def partial_transpose(cm) -> np.ndarray:
    """Covariance matrix after transposing the second mode (p2 -> -p2)."""
    arr = np.asarray(cm, dtype=float)
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ arr @ flip


def to_standard_form(cm, tol: float = DEFAULT_TOL) -> StandardForm:
    """Reduce a physical covariance matrix to its unique standard form.

    a and b are the square roots of the single-mode block determinants;
    c_plus and c_minus solve c_plus*c_minus = Det gamma together with
    (ab - c_plus^2)(ab - c_minus^2) = Det sigma, sign-ordered so that
    c_plus >= |c_minus| >= 0.
    """
    inv = local_invariants(cm, tol)
    a = math.sqrt(inv.det_alpha)
    b = math.sqrt(inv.det_beta)
    ab = a * b
    p = inv.det_gamma
    sq_sum = (inv.det_alpha * inv.det_beta + p * p - inv.det_sigma) / ab
    disc = (sq_sum - 2.0 * p) * (sq_sum + 2.0 * p)
    scale = max(sq_sum * sq_sum, 4.0 * p * p, 1.0)
    if disc < -_DISC_RTOL * scale:
        raise UnphysicalStateError(
            "no real standard-form correlations reproduce the invariants "
            f"(c+^2 + c-^2 = {sq_sum:g}, c+ c- = {p:g})"
        )
    if disc <= 1e-12 * scale:
        # c_plus = |c_minus| exactly (pure states sit here); rounding noise
        # under the square root would otherwise split the pair.
        disc = 0.0
    t_plus = 0.5 * (sq_sum + math.sqrt(disc))
    t_minus = (p * p / t_plus) if t_plus > 0.0 else 0.0
    c_plus = math.sqrt(max(t_plus, 0.0))
    c_minus = math.copysign(math.sqrt(max(t_minus, 0.0)), p) if t_minus > 0.0 else 0.0
    return StandardForm(a, b, c_plus, c_minus)


def global_purity(cm, tol: float = DEFAULT_TOL) -> float:
    """Tr rho^2 = 1 / sqrt(Det sigma)."""
    return 1.0 / math.sqrt(local_invariants(cm, tol).det_sigma)


def local_purities(cm, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Purities of the two reduced single-mode states."""
    inv = local_invariants(cm, tol)
    return 1.0 / math.sqrt(inv.det_alpha), 1.0 / math.sqrt(inv.det_beta)


def make_two_mode_squeezed(r: float) -> np.ndarray:
    """Covariance matrix of a pure two-mode squeezed state with parameter r.

    Diagonal blocks cosh(2r)*I, off-diagonal diag(sinh 2r, -sinh 2r);
    the partially transposed spectrum has nu_tilde_minus = exp(-2r).
    """
    if not math.isfinite(r) or r < 0.0:
        raise MalformedInputError(f"squeezing parameter must be finite and >= 0, got {r!r}")
    ch = math.cosh(2.0 * r)
    sh = math.sinh(2.0 * r)
    return StandardForm(ch, ch, sh, -sh).to_matrix()


def cm_from_json_dict(obj) -> np.ndarray:
    """Covariance matrix from the JSON wire format.

    Accepts ``{"cm": [[...4x4 row-major...]]}`` or
    ``{"standard_form": {"a":..., "b":..., "c_plus":..., "c_minus":...}}``.
    """
    if not isinstance(obj, dict):
        raise MalformedInputError("state JSON must be an object")
    if "cm" in obj:
        try:
            arr = np.asarray(obj["cm"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise MalformedInputError(f"invalid 'cm' entries: {exc}") from None
        if arr.shape != (4, 4):
            raise MalformedInputError(f"'cm' must be 4x4 row-major, got shape {arr.shape}")
        return arr
    if "standard_form" in obj:
        sf = obj["standard_form"]
        try:
            return StandardForm(
                float(sf["a"]), float(sf["b"]), float(sf["c_plus"]), float(sf["c_minus"])
            ).to_matrix()
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInputError(f"invalid 'standard_form' object: {exc}") from None
    raise MalformedInputError("state JSON needs a 'cm' or 'standard_form' key")

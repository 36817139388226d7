"""PPT separability, negativities, and the symmetric-state entanglement of formation.

For a two-mode Gaussian state everything here is a function of
nu_tilde_minus, the smallest symplectic eigenvalue of the partially
transposed covariance matrix: the state is separable iff
nu_tilde_minus >= 1, and below 1 the negativity, logarithmic negativity
and (for symmetric states) entanglement of formation are strictly
decreasing functions of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NotSymmetricError
from .symplectic import DEFAULT_TOL, StandardForm, SymplecticSpectrum

#: Relative tolerance below which a == b counts as symmetric.
SYMMETRY_RTOL = 1e-9

_LN2 = math.log(2.0)


def _log_divisor(log_base) -> float:
    if log_base == 2:
        return _LN2
    if log_base == "e":
        return 1.0
    raise DomainError(f"log_base must be 2 or 'e', got {log_base!r}")


@dataclass(frozen=True)
class NegativityReport:
    separable: bool
    negativity: float
    log_negativity: float
    eof_symmetric: float | None
    log_base: object = 2


def _nu_tilde(spectrum_or_value) -> float:
    if isinstance(spectrum_or_value, SymplecticSpectrum):
        return spectrum_or_value.nu_tilde_minus
    return float(spectrum_or_value)


def is_separable_ppt(spectrum, tol: float = DEFAULT_TOL) -> bool:
    """PPT criterion: separable iff nu_tilde_minus >= 1 (within tol)."""
    return _nu_tilde(spectrum) >= 1.0 - tol


def negativity(nu_tilde_minus: float) -> float:
    """max[0, (1 - nu) / (2 nu)] for nu = nu_tilde_minus; 0 when separable."""
    nu = float(nu_tilde_minus)
    if not nu > 0.0:
        raise DomainError(f"nu_tilde_minus must be positive, got {nu!r}")
    return max(0.0, (1.0 - nu) / (2.0 * nu))


def log_negativity(nu_tilde_minus: float, log_base=2) -> float:
    """max[0, -log nu_tilde_minus]; unbounded as the eigenvalue tends to 0."""
    nu = float(nu_tilde_minus)
    if not nu > 0.0:
        raise DomainError(f"nu_tilde_minus must be positive, got {nu!r}")
    return max(0.0, -math.log(nu) / _log_divisor(log_base))


def h_function(x: float, log_base=2) -> float:
    """Entanglement entropy of a pure two-mode Gaussian state, as a function
    of the smallest partially-transposed symplectic eigenvalue x in (0, 1].

    h(x) = u log u - t log t with t = (1-x)^2/(4x) and u = (1+x)^2/(4x) = 1+t.
    h(1) = 0 and h is strictly decreasing, diverging as x -> 0+.
    """
    div = _log_divisor(log_base)
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"h is defined on (0, 1], got {x!r}")
    if x > 1.0:
        if x > 1.0 + 1e-12:
            raise DomainError(f"h is defined on (0, 1], got {x!r}")
        x = 1.0
    t = (1.0 - x) ** 2 / (4.0 * x)
    if t == 0.0:
        return 0.0
    # u log u with u = 1 + t, via log1p; the t log t term vanishes at t -> 0.
    return ((1.0 + t) * math.log1p(t) - t * math.log(t)) / div


def eof_symmetric(sf: StandardForm, log_base=2, rtol: float = SYMMETRY_RTOL) -> float:
    """Entanglement of formation of a symmetric (a == b) two-mode state.

    Equals max[0, h(nu_tilde_minus)]; for symmetric states the optimal
    decomposition is Gaussian, so this coincides with the Gaussian
    convex-roof value.

    Raises:
        NotSymmetricError: if |a - b| exceeds ``rtol * max(a, b)``.
    """
    if not sf.is_symmetric(rtol):
        raise NotSymmetricError(
            f"closed-form entanglement of formation needs a == b, got a={sf.a!r}, b={sf.b!r}"
        )
    nu = sf.spectrum().nu_tilde_minus
    if nu >= 1.0:
        return 0.0
    return max(0.0, h_function(nu, log_base))


def negativity_report(
    sf: StandardForm,
    tol: float = DEFAULT_TOL,
    log_base=2,
    sym_rtol: float = SYMMETRY_RTOL,
) -> NegativityReport:
    """All PPT-based quantities for one state, plus the symmetric closed form
    when it applies."""
    nu = sf.spectrum().nu_tilde_minus
    separable = is_separable_ppt(nu, tol)
    eof = eof_symmetric(sf, log_base, sym_rtol) if sf.is_symmetric(sym_rtol) else None
    if separable:
        return NegativityReport(True, 0.0, 0.0, eof, log_base)
    return NegativityReport(
        False, negativity(nu), log_negativity(nu, log_base), eof, log_base
    )

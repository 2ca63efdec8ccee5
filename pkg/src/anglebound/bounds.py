"""Closed-form and quadrature-based cardinality bounds.

For an ambient dimension D and a maximum-angle cap theta, the bound is
1 / f_d(eta_d(theta)) with d = D - 1, where f_d(eta) is the fraction of the
unit sphere S^d covered by a circular cone's polar (normal) directions:

    f_d(eta) = int_0^{pi/2 - eta} sin^(d-1) t dt / int_0^pi sin^(d-1) t dt

All angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRange

PANEL_TOL = 1e-13
MAX_PANELS = 2**20


@dataclass(frozen=True)
class QuadratureResult:
    """Value of a 1-D integral with an a-posteriori error estimate."""

    value: float
    abs_error_estimate: float
    panels: int

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "panels": self.panels,
        }


@dataclass(frozen=True)
class BoundReport:
    theta: float
    ambient_dim: int
    eta: float
    f_value: QuadratureResult
    bound: float
    theorem_applicable: bool

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "ambient_dim": self.ambient_dim,
            "eta": self.eta,
            "f_value": self.f_value.to_dict(),
            "bound": self.bound,
            "theorem_applicable": self.theorem_applicable,
        }


def adaptive_simpson(f, a: float, b: float, tol: float = PANEL_TOL,
                     max_panels: int = MAX_PANELS) -> QuadratureResult:
    """Adaptive Simpson quadrature of f on [a, b].

    Panels split until the local Richardson discrepancy is below the panel
    tolerance (halved per split, so the total error target is ~tol * initial
    panel count). Once max_panels is reached remaining panels are accepted
    as-is and their discrepancy is folded into the error estimate.
    """
    if not b > a:
        if b == a:
            return QuadratureResult(0.0, 0.0, 0)
        raise OutOfRange("integration bounds must satisfy a <= b")
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol)]
    total = 0.0
    err = 0.0
    panels = 0
    while stack:
        a0, b0, fa0, fm0, fb0, s0, t0 = stack.pop()
        mid = 0.5 * (a0 + b0)
        lm = 0.5 * (a0 + mid)
        rm = 0.5 * (mid + b0)
        flm, frm = f(lm), f(rm)
        sl = (mid - a0) / 6.0 * (fa0 + 4.0 * flm + fm0)
        sr = (b0 - mid) / 6.0 * (fm0 + 4.0 * frm + fb0)
        delta = sl + sr - s0
        if abs(delta) <= 15.0 * t0 or panels + len(stack) + 2 > max_panels:
            total += sl + sr + delta / 15.0
            err += abs(delta) / 15.0
            panels += 1
        else:
            stack.append((a0, mid, fa0, flm, fm0, sl, 0.5 * t0))
            stack.append((mid, b0, fm0, frm, fb0, sr, 0.5 * t0))
    return QuadratureResult(total, err, panels)


def theta_d(d: int) -> float:
    """arccos(-1/d): strictly decreasing in d, in (pi/2, pi] for d >= 1."""
    if int(d) != d or d < 1:
        raise OutOfRange(f"d must be a positive integer, got {d!r}")
    return math.acos(-1.0 / d)


def sin_half_theta_d(d: int) -> float:
    """sin(theta_d / 2) = sqrt((d+1) / (2d))."""
    if int(d) != d or d < 1:
        raise OutOfRange(f"d must be a positive integer, got {d!r}")
    return math.sqrt((d + 1.0) / (2.0 * d))


def eta_of_theta(theta: float, d: int) -> float:
    """Cap half-angle eta_d(theta) = arcsin(sin(theta/2) / sin(theta_d/2)).

    Defined for 0 < theta <= theta_d; equals theta/2 when d = 1 and pi/2 at
    theta = theta_d.
    """
    s = sin_half_theta_d(d)
    if not theta > 0.0:
        raise OutOfRange(f"theta must be positive, got {theta}")
    if theta > math.pi + 1e-12:
        raise OutOfRange(f"theta must lie in (0, pi], got {theta}")
    ratio = math.sin(0.5 * theta) / s
    if ratio > 1.0 + 1e-12:
        raise OutOfRange(
            f"theta={theta:.12g} exceeds theta_d={2.0 * math.asin(s):.12g} for d={d}"
        )
    return math.asin(min(ratio, 1.0))


def f_fraction(d: int, eta: float) -> QuadratureResult:
    """Fraction of S^d polar to a cone of half-angle eta, by adaptive quadrature.

    The numerator integrand is evaluated as exp((d-1)(log sin t - log sin x0))
    with x0 = pi/2 - eta, i.e. rescaled by its maximum, so the ratio keeps full
    relative accuracy even when sin^(d-1) underflows for large d.
    """
    if int(d) != d or d < 1:
        raise OutOfRange(f"d must be a positive integer, got {d!r}")
    d = int(d)
    if eta < -1e-12 or eta > 0.5 * math.pi + 1e-12:
        raise OutOfRange(f"eta must lie in [0, pi/2], got {eta}")
    eta = min(max(eta, 0.0), 0.5 * math.pi)
    x0 = 0.5 * math.pi - eta

    def scaled_sin_power(log_scale: float):
        if d == 1:
            return lambda t: math.exp(-log_scale)

        def g(t: float) -> float:
            s = math.sin(t)
            if s <= 0.0:
                return 0.0
            return math.exp((d - 1) * math.log(s) - log_scale)

        return g

    # Denominator: symmetric about pi/2 with peak integrand value 1 there.
    den = adaptive_simpson(scaled_sin_power(0.0), 0.0, 0.5 * math.pi)
    den_value = 2.0 * den.value
    den_err = 2.0 * den.abs_error_estimate

    if x0 <= 0.0:
        return QuadratureResult(0.0, 0.0, den.panels)

    # Numerator rescaled by its maximum sin(x0)^(d-1) for relative accuracy.
    log_pref = 0.0 if d == 1 else (d - 1) * math.log(math.sin(x0))
    num = adaptive_simpson(scaled_sin_power(log_pref), 0.0, x0)
    prefactor = math.exp(log_pref)

    value = prefactor * num.value / den_value
    err = (prefactor * num.abs_error_estimate + value * den_err) / den_value
    return QuadratureResult(value, err, num.panels + den.panels)


def cardinality_bound(theta: float, ambient_dim: int) -> BoundReport:
    """Upper bound 1 / f_d(eta_d(theta)) on |A| for A in R^D with angles <= theta.

    Uses d = D - 1. The bound is rigorous for 0 < theta < theta_D; for
    theta in [theta_D, theta_(D-1)] the formula still evaluates and is
    reported with theorem_applicable = False.
    """
    D = ambient_dim
    if int(D) != D or D < 2:
        raise OutOfRange(f"ambient_dim must be an integer >= 2, got {D!r}")
    D = int(D)
    d = D - 1
    eta = eta_of_theta(theta, d)
    f = f_fraction(d, eta)
    bound = 1.0 / f.value if f.value > 0.0 else math.inf
    # Strict hypothesis theta < theta_D; values within 1e-12 of the threshold
    # count as the boundary so that e.g. theta = 2*pi/3 at D = 2 is flagged.
    return BoundReport(
        theta=float(theta),
        ambient_dim=D,
        eta=eta,
        f_value=f,
        bound=bound,
        theorem_applicable=bool(theta < theta_d(D) - 1e-12),
    )


def asymptotic_envelope(d: int) -> float:
    """Growth envelope 2 (pi/2)^(2d-1) d^(d/2) of the right-angle bound in dimension d."""
    if int(d) != d or d < 2:
        raise OutOfRange(f"d must be an integer >= 2, got {d!r}")
    d = int(d)
    log_val = math.log(2.0) + (2 * d - 1) * math.log(0.5 * math.pi) + 0.5 * d * math.log(d)
    if log_val > math.log(1.7976931348623157e308):
        raise OverflowError(f"envelope exceeds float range at d={d}")
    return math.exp(log_val)

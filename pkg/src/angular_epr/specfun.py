"""Special functions used by the closed-form amplitude and normalization formulas.

Conventions are fixed by the asymptotics the amplitude formulas rely on:

* Fresnel integrals with the sqrt-weight normalization,
  C2(x) = (2 pi)^(-1/2) int_0^x cos(t) / sqrt(t) dt  (and S2 with sin),
  so that both tend to 1/2 as x -> infinity.
* erf is the standard error function.
* gamma_upper(a, x) is the unnormalized upper incomplete Gamma integral,
  with gamma_upper(a, 0) equal to the complete Gamma(a).

All functions are pure and evaluate through scipy.special, which meets the
1e-10 absolute accuracy contract for |inputs| <= 100; ``self_check`` verifies
that contract against adaptive quadrature of the defining integrals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.special as sp

__all__ = [
    "SpecFunResult",
    "fresnel_c2",
    "fresnel_s2",
    "erf",
    "re_erf_complex",
    "re_erf_complex_scaled",
    "gamma_upper",
    "self_check",
]

# exp(b^2 - a^2) must stay below the double-precision range
_RE_ERF_OVERFLOW = 700.0


@dataclass(frozen=True)
class SpecFunResult:
    """Value of a special function together with an estimated absolute error."""

    value: float
    est_abs_error: float


def fresnel_c2(x: float) -> float:
    """Fresnel cosine integral C2(x), normalized so C2(inf) = 1/2.

    Related to the standard Fresnel integral C by C2(x) = C(sqrt(2x/pi)).
    """
    if x < 0:
        raise ValueError(f"fresnel_c2: x must be nonnegative, got {x}")
    return float(sp.fresnel(np.sqrt(2.0 * x / np.pi))[1])


def fresnel_s2(x: float) -> float:
    """Fresnel sine integral S2(x), normalized so S2(inf) = 1/2."""
    if x < 0:
        raise ValueError(f"fresnel_s2: x must be nonnegative, got {x}")
    return float(sp.fresnel(np.sqrt(2.0 * x / np.pi))[0])


def erf(x: float) -> float:
    """Standard error function."""
    return float(sp.erf(x))


def re_erf_complex(a: float, b: float) -> float:
    """Real part of erf(a + i b).

    The value grows like exp(b^2 - a^2), so arguments with
    b^2 - a^2 > 700 overflow double precision and raise OverflowError.
    Use :func:`re_erf_complex_scaled` when the caller multiplies by
    exp(-b^2) anyway.
    """
    if b * b - a * a > _RE_ERF_OVERFLOW:
        raise OverflowError(
            f"re_erf_complex: |Re erf({a} + {b}i)| ~ exp(b^2-a^2) exceeds double "
            f"range (threshold b^2-a^2 > {_RE_ERF_OVERFLOW})"
        )
    return float(sp.erf(complex(a, b)).real)


def re_erf_complex_scaled(a: float, b: float) -> float:
    """exp(-b^2) * Re[erf(a + i b)], stable for any b.

    Uses the Faddeeva function w(z): for z = a + ib,
    erf(z) = 1 - exp(-z^2) w(iz), hence
    exp(-b^2) Re[erf(z)] = exp(-b^2) - exp(-a^2) Re[exp(-2iab) w(-b + ia)],
    where every factor is bounded for a >= 0.
    """
    w = sp.wofz(complex(-b, a))
    return float(np.exp(-b * b) - np.exp(-a * a) * (np.exp(-2j * a * b) * w).real)


def gamma_upper(a: float, x: float) -> float:
    """Upper incomplete Gamma integral int_x^inf t^(a-1) e^(-t) dt.

    gamma_upper(a, 0) is the complete Gamma(a).
    """
    if a <= 0:
        raise ValueError(f"gamma_upper: a must be positive, got {a}")
    if x < 0:
        raise ValueError(f"gamma_upper: x must be nonnegative, got {x}")
    return float(sp.gammaincc(a, x) * sp.gamma(a))


def _oracle_fresnel_c2(x: float) -> tuple[float, float]:
    # substitute t = u^2 to remove the endpoint singularity
    v, err = scipy.integrate.quad(
        lambda u: np.cos(u * u), 0.0, np.sqrt(x), limit=800, epsabs=1e-13, epsrel=1e-13
    )
    s = 2.0 / np.sqrt(2.0 * np.pi)
    return s * v, s * err


def _oracle_fresnel_s2(x: float) -> tuple[float, float]:
    v, err = scipy.integrate.quad(
        lambda u: np.sin(u * u), 0.0, np.sqrt(x), limit=800, epsabs=1e-13, epsrel=1e-13
    )
    s = 2.0 / np.sqrt(2.0 * np.pi)
    return s * v, s * err


def _oracle_erf(x: float) -> tuple[float, float]:
    v, err = scipy.integrate.quad(lambda t: np.exp(-t * t), 0.0, x, limit=400, epsabs=1e-14, epsrel=1e-14)
    s = 2.0 / np.sqrt(np.pi)
    return s * v, s * err


def _oracle_re_erf_complex(a: float, b: float) -> tuple[float, float]:
    # integrate d/ds erf(a + is) along the vertical segment of the path
    va, ea = _oracle_erf(a)
    vb, eb = scipy.integrate.quad(
        lambda s: np.exp(s * s - a * a) * np.sin(2.0 * a * s), 0.0, b, limit=800,
        epsabs=1e-14, epsrel=1e-14
    )
    s = 2.0 / np.sqrt(np.pi)
    return va + s * vb, ea + s * eb


def _oracle_gamma_upper(a: float, x: float) -> tuple[float, float]:
    v, err = scipy.integrate.quad(
        lambda t: t ** (a - 1.0) * np.exp(-t), x, np.inf, limit=800,
        epsabs=1e-14, epsrel=1e-14
    )
    return v, err


_ORACLES = {
    "fresnel_c2": (fresnel_c2, _oracle_fresnel_c2),
    "fresnel_s2": (fresnel_s2, _oracle_fresnel_s2),
    "erf": (erf, _oracle_erf),
    "re_erf_complex": (re_erf_complex, _oracle_re_erf_complex),
    "gamma_upper": (gamma_upper, _oracle_gamma_upper),
}


def self_check(name: str, *args: float) -> SpecFunResult:
    """Evaluate a special function and bound its error by independent quadrature.

    ``est_abs_error`` is the deviation from an adaptive quadrature of the
    defining integral plus that quadrature's own error estimate.
    """
    if name not in _ORACLES:
        raise ValueError(f"self_check: unknown function {name!r}")
    fn, oracle = _ORACLES[name]
    value = fn(*args)
    ref, ref_err = oracle(*args)
    return SpecFunResult(value=value, est_abs_error=abs(value - ref) + ref_err)

"""Log-domain special functions and arithmetic primitives.

Everything downstream works with natural logs of positive magnitudes:
transmission probabilities reach e^-1000 and below, far outside the range
of IEEE doubles, while their logs stay comfortably representable.  The
helpers here are the only places allowed to move between a magnitude and
its log, apart from final display code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import DomainError

__all__ = [
    "LogMagnitude",
    "log_gamma",
    "log_bessel_k1",
    "log_bessel_k1_asymptotic",
    "log_sum_exp",
    "log_diff_exp",
]

_LN10 = math.log(10.0)


@dataclass(frozen=True)
class LogMagnitude:
    """A strictly positive quantity stored as its natural log.

    ``exp(ln_value)`` may underflow or overflow a double; ``ln_value``
    itself must stay finite.  Multiplication and division of magnitudes
    are addition and subtraction here, which is the entire point.
    """

    ln_value: float

    def __post_init__(self):
        if not math.isfinite(self.ln_value):
            raise DomainError("LogMagnitude requires a finite log value, got %r"
                              % (self.ln_value,))

    @classmethod
    def from_value(cls, x: float) -> "LogMagnitude":
        if not (x > 0) or not math.isfinite(x):
            raise DomainError("LogMagnitude.from_value needs x > 0, got %r" % (x,))
        return cls(math.log(x))

    @property
    def log10(self) -> float:
        return self.ln_value / _LN10

    @property
    def value(self) -> float:
        """The represented magnitude; may underflow to 0.0 or overflow to inf."""
        try:
            return math.exp(self.ln_value)
        except OverflowError:
            return math.inf

    def __mul__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.ln_value + other.ln_value)

    def __truediv__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.ln_value - other.ln_value)

    def scientific(self, digits: int = 6) -> str:
        """Render as ``m.mmm...e±XXX`` in base 10 without ever exponentiating.

        The decimal exponent can exceed the double range (e.g. e^-1000 is
        about 5.1e-435), so mantissa and exponent are split from log10
        directly.
        """
        l10 = self.log10
        exp10 = math.floor(l10)
        mantissa = 10.0 ** (l10 - exp10)
        # rounding the mantissa may carry it to 10.0; renormalize
        if round(mantissa, digits) >= 10.0:
            mantissa /= 10.0
            exp10 += 1
        return f"{mantissa:.{digits}f}e{exp10:+d}"


def _require_positive_scalar(x, name: str) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return x


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0.

    Thin validated wrapper over :func:`scipy.special.gammaln`; only
    positive arguments arise here (1/γ and 3/γ with γ > 0).
    """
    x = _require_positive_scalar(x, "x")
    return float(sp.gammaln(x))


def log_bessel_k1(z: float) -> float:
    """ln K₁(z) for z > 0, the modified Bessel function of the second kind.

    Uses the exponentially scaled ``k1e(z) = e^z K₁(z)``, so the result is
    accurate for arguments up to 10⁴ and beyond where K₁ itself underflows
    (K₁(1000) ≈ e^-1003).
    """
    z = _require_positive_scalar(z, "z")
    return float(np.log(sp.k1e(z)) - z)


def log_bessel_k1_asymptotic(z: float) -> float:
    """Leading large-argument form ln[√(π/(2z)) e^-z].

    Exposed separately because the closed-form transmission result is often
    quoted with this replacement; the difference from :func:`log_bessel_k1`
    is ln(1 + 3/(8z) + ...) and vanishes as z → ∞.
    """
    z = _require_positive_scalar(z, "z")
    return 0.5 * math.log(math.pi / (2.0 * z)) - z


def log_sum_exp(terms, weights=None) -> float:
    """ln Σᵢ wᵢ exp(termᵢ) with positive weights, stabilized by the max term.

    ``terms`` of -inf are allowed (zero contributions); an all--inf input
    returns -inf.  Exact under a uniform additive shift of all terms.
    """
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        raise DomainError("log_sum_exp needs at least one term")
    if np.any(np.isnan(terms)) or np.any(terms == np.inf):
        raise DomainError("log_sum_exp terms must be < +inf and not NaN")
    if weights is None:
        return float(sp.logsumexp(terms))
    weights = np.asarray(weights, dtype=float)
    if weights.shape != terms.shape:
        raise DomainError("weights must match terms in shape")
    if np.any(~np.isfinite(weights)) or np.any(weights <= 0.0):
        raise DomainError("weights must be positive and finite")
    return float(sp.logsumexp(terms, b=weights))


def log_diff_exp(ln_hi: float, ln_lo: float) -> float:
    """ln(exp(ln_hi) - exp(ln_lo)) for ln_hi ≥ ln_lo; -inf when equal."""
    if ln_lo == -math.inf:
        return ln_hi
    if ln_lo > ln_hi:
        raise DomainError("log_diff_exp needs ln_hi >= ln_lo")
    d = ln_lo - ln_hi
    if d == 0.0:
        return -math.inf
    return ln_hi + math.log1p(-math.exp(d))

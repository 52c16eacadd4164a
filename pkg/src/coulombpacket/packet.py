"""Generalized-Gaussian momentum packets in reduced units y = p/p0.

The family is parametrized by a shape exponent gamma and the dimensionless
variance B = sigma_p/p0^2.  The two derived constants

    beta = [Gamma(3/gamma)/Gamma(1/gamma)]^(gamma/2)
    N    = gamma sqrt(Gamma(3/gamma)) / (2 Gamma(1/gamma)^(3/2))

are fixed so that the density integrates to 1 over the whole real line and
its second central moment equals B.  gamma = 2 is the Gaussian case
(beta = 1/2), gamma = 1 the two-sided exponential (beta = sqrt(2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special as sp

from .errors import DomainError, RangeError, TableFormatError
from .specfun import log_gamma

__all__ = [
    "GAMMA_MIN",
    "GAMMA_MAX",
    "PacketShape",
    "DensityTable",
    "shape_constants",
    "log_density",
    "central_moment",
    "read_density_table",
]

_trapz = getattr(np, "trapezoid", None) or np.trapz  # numpy 2.x rename

# Supported shape-exponent range.  Outside it the Gamma arguments 1/gamma,
# 3/gamma or the tail decay exp(-|u|^gamma) make quadrature unreliable.
GAMMA_MIN = 0.1
GAMMA_MAX = 10.0


def shape_constants(gamma: float) -> tuple[float, float]:
    """Return (beta, log_N) for a shape exponent gamma > 0.

    beta is evaluated as the direct ratio power [Gamma(3/g)/Gamma(1/g)]^(g/2)
    rather than exp(lgamma differences): the Gamma arguments stay below 30
    across the supported range so nothing overflows, and the direct ratio is
    exact at the reference points (sqrt(2) at gamma=1, 1/2 at gamma=2, where
    Gamma(1.5) is bit-for-bit half of Gamma(0.5)).  The normalizer is O(1)
    but kept as a log since it always enters log-domain sums.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma) or gamma <= 0.0:
        raise DomainError(f"gamma must be positive and finite, got {gamma!r}")
    if gamma >= 3.0 / 170.0:
        beta = float((sp.gamma(3.0 / gamma) / sp.gamma(1.0 / gamma))
                     ** (0.5 * gamma))
    else:
        beta = math.exp(0.5 * gamma * (log_gamma(3.0 / gamma)
                                       - log_gamma(1.0 / gamma)))
    log_N = (math.log(gamma) + 0.5 * log_gamma(3.0 / gamma) - math.log(2.0)
             - 1.5 * log_gamma(1.0 / gamma))
    return beta, log_N


@dataclass(frozen=True)
class PacketShape:
    """Immutable packet descriptor: (gamma, B) plus the derived constants."""

    gamma: float
    B: float
    beta: float
    log_N: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError("gamma must be finite")
        if not (GAMMA_MIN < self.gamma <= GAMMA_MAX):
            raise RangeError(
                f"gamma={self.gamma} outside supported range "
                f"({GAMMA_MIN}, {GAMMA_MAX}]")
        if not math.isfinite(self.B) or self.B <= 0.0:
            raise DomainError(f"B must be positive and finite, got {self.B!r}")

    @classmethod
    def from_gamma(cls, gamma: float, B: float) -> "PacketShape":
        # resolve shape_constants through the module at call time so a
        # perturbed constant (fault injection in the validation suite)
        # propagates into every derived quantity
        beta, log_N = shape_constants(gamma)
        return cls(gamma=float(gamma), B=float(B), beta=beta, log_N=log_N)


def log_density(y, shape: PacketShape):
    """ln of the dimensionless momentum density at y (scalar or array).

    log_N - (1/2) ln B - beta (|y-1|^2 / B)^(gamma/2), finite for every
    finite y.  The power is evaluated as exp(gamma (ln|y-1| - ln sqrt(B)))
    so extreme B cause no premature under/overflow; at y = 1 the exponent
    term is exactly zero (for gamma > 0 the |u|^gamma limit).
    """
    y_arr = np.asarray(y, dtype=float)
    u = np.abs(y_arr - 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        # ln|u| = -inf at u=0 gives exp(-inf) = 0, the correct limit
        pow_term = np.exp(shape.gamma * (np.log(u) - 0.5 * math.log(shape.B)))
    out = shape.log_N - 0.5 * math.log(shape.B) - shape.beta * pow_term
    if np.ndim(y) == 0:
        return float(out)
    return out


def _moment_integrand_factory(shape: PacketShape, k: int):
    """Smooth positive-side moment integrand in a gamma-dependent variable.

    gamma < 1: substitute s = beta (|u|/sqrt(B))^gamma, which makes the
    density exponent exactly linear and lifts the cusp at u = 0; the
    jacobian factor s^((k+1)/gamma - 1) is then smooth (positive exponent).
    gamma >= 1: that same factor would be singular at s = 0, but the plain
    scaled variable w = u/sqrt(B) is already smooth, so integrate in w.
    Either way the integrand routes through log_density so the constants
    under test are actually exercised.
    """
    g = shape.gamma
    sqB = math.sqrt(shape.B)

    if g >= 1.0:
        def f(w):
            if w <= 0.0:
                return 0.0
            ln_u = math.log(sqB) + math.log(w)
            ln_val = (log_density(1.0 + sqB * w, shape)
                      + math.log(sqB) + k * ln_u)
            if ln_val != ln_val or ln_val == -math.inf:
                return 0.0
            return math.exp(ln_val) if ln_val < 700.0 else math.inf

        return f

    ln_du_ds_const = 0.5 * math.log(shape.B) - math.log(g) - math.log(shape.beta) / g

    def f(s):
        if s <= 0.0:
            return 0.0
        ln_s = math.log(s)
        ln_u = math.log(sqB) + (ln_s - math.log(shape.beta)) / g
        with np.errstate(over="ignore"):
            u = float(np.exp(ln_u))  # inf at extreme probe points is harmless
        ln_jac = ln_du_ds_const + (1.0 / g - 1.0) * ln_s
        ln_val = log_density(1.0 + u, shape) + ln_jac
        if k:
            ln_val += k * ln_u
        if ln_val != ln_val or ln_val == -math.inf:
            return 0.0
        return math.exp(ln_val) if ln_val < 700.0 else math.inf

    return f


def central_moment(shape: PacketShape, k: int) -> float:
    """k-th central moment <(y-1)^k> of the packet density, k in {0,1,2,4}.

    Evaluated by adaptive quadrature in the substituted variable (see
    :func:`_moment_integrand_factory`); odd moments vanish by the exact
    y -> 2-y symmetry of the density.
    """
    if k not in (0, 1, 2, 4):
        raise DomainError(f"central moment order k={k!r} not supported")
    if k == 1:
        return 0.0
    f = _moment_integrand_factory(shape, k)
    # density mass and moments split evenly between u < 0 and u > 0
    val, _err = integrate.quad(f, 0.0, np.inf, epsabs=0.0, epsrel=1e-11,
                               limit=200)
    return 2.0 * val


@dataclass(frozen=True)
class DensityTable:
    """Tabulated momentum density |phi(y)|^2 on strictly increasing y >= 0."""

    y: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        d = np.asarray(self.density, dtype=float)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "density", d)
        if y.ndim != 1 or d.ndim != 1 or y.size != d.size:
            raise TableFormatError("table needs matching 1-d y and density columns")
        if y.size < 2:
            raise TableFormatError("table needs at least two points")
        if not np.all(np.isfinite(y)) or not np.all(np.isfinite(d)):
            raise TableFormatError("table entries must be finite")
        if y[0] < 0.0:
            raise TableFormatError("y must be non-negative (reduced momentum)")
        if not np.all(np.diff(y) > 0.0):
            raise TableFormatError("y must be strictly increasing")
        if np.any(d < 0.0):
            raise TableFormatError("densities must be non-negative")
        if self.mass() > 1.0 + 1e-6:
            raise TableFormatError(
                f"table mass {self.mass():.8f} exceeds 1 beyond tolerance")

    def mass(self) -> float:
        """Trapezoid mass of the table; at most 1 + 1e-6 by construction."""
        return float(_trapz(self.density, self.y))

    def reduced_variance(self) -> float:
        """B-like diagnostic: Var[y]/E[y]^2 under the (mass-normalized) table."""
        m0 = self.mass()
        if m0 <= 0.0:
            return 0.0
        m1 = float(_trapz(self.density * self.y, self.y)) / m0
        m2 = float(_trapz(self.density * self.y ** 2, self.y)) / m0
        var = max(m2 - m1 * m1, 0.0)
        if m1 <= 0.0:
            return math.inf
        return var / (m1 * m1)


def read_density_table(path) -> DensityTable:
    """Parse a density-table CSV: header ``y,density``, ``#`` comments allowed.

    Raises TableFormatError with a 1-based line number on malformed input.
    """
    ys: list[float] = []
    ds: list[float] = []
    header_seen = False
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if not header_seen:
                    if [c.strip().lower() for c in line.split(",")] != ["y", "density"]:
                        raise TableFormatError(
                            f"expected header 'y,density', got {line!r}",
                            line=lineno)
                    header_seen = True
                    continue
                cells = line.split(",")
                if len(cells) != 2:
                    raise TableFormatError(
                        f"expected two comma-separated values, got {line!r}",
                        line=lineno)
                try:
                    ys.append(float(cells[0]))
                    ds.append(float(cells[1]))
                except ValueError as exc:
                    raise TableFormatError(f"non-numeric cell in {line!r}",
                                           line=lineno) from exc
                if len(ys) >= 2 and ys[-1] <= ys[-2]:
                    raise TableFormatError(
                        f"y values must be strictly increasing "
                        f"({ys[-2]!r} then {ys[-1]!r})", line=lineno)
    except OSError as exc:
        raise TableFormatError(f"cannot read table file: {exc}") from exc
    if not header_seen:
        raise TableFormatError("missing 'y,density' header", line=1)
    try:
        return DensityTable(y=np.asarray(ys), density=np.asarray(ds))
    except TableFormatError:
        raise

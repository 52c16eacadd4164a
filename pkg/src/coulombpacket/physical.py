"""Map physical particle/barrier parameters to the reduced barrier strength A.

For a Coulomb barrier Z e^2/x and a particle of mass m at mean kinetic
energy E, the dimensionless strength is

    A = 2 pi Z e^2 / (hbar v0) = 2 pi Z alpha / (v0/c),

written through the fine-structure constant so no unit-system choice for
e^2 ever enters.  The momentum-space barrier scale a = 2 pi Z e^2 m/hbar
is reported both as the dimensionless a/(m c) = 2 pi Z alpha and in SI.
All constants are CODATA-2018, pinned in one table for reproducible output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, RegimeError

__all__ = [
    "FINE_STRUCTURE",
    "AMU_EV",
    "AMU_KG",
    "SPEED_OF_LIGHT",
    "ELECTRON_MASS_AMU",
    "DEUTERON_MASS_AMU",
    "RELATIVISTIC_THRESHOLD",
    "ParticleSpec",
    "BarrierScale",
    "v0_over_c",
    "big_A",
    "little_a",
]

# CODATA-2018
FINE_STRUCTURE = 7.2973525693e-3      # alpha
AMU_EV = 931494102.42                 # 1 u in eV/c^2
AMU_KG = 1.66053906660e-27            # 1 u in kg
SPEED_OF_LIGHT = 299792458.0          # m/s
ELECTRON_MASS_AMU = 5.48579909065e-4
DEUTERON_MASS_AMU = 2.013553212745

# above v0/c = 0.1 the non-relativistic kinematics stop being trustworthy
RELATIVISTIC_THRESHOLD = 0.1


@dataclass(frozen=True)
class ParticleSpec:
    """Charge-number product, particle mass (amu), kinetic energy (eV)."""

    Z: float
    mass_amu: float
    kinetic_energy_ev: float

    def __post_init__(self):
        for name in ("Z", "mass_amu", "kinetic_energy_ev"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be positive and finite, got {v!r}")


class BarrierScale(NamedTuple):
    a_over_mc: float  # a/(m c) = 2 pi Z alpha, energy-independent
    a_si: float       # kg m/s


def _effective_mass(spec: ParticleSpec, reduced_mass: bool) -> float:
    # reduced-mass convention: identical colliding pair, m -> m/2
    return spec.mass_amu / 2.0 if reduced_mass else spec.mass_amu


def v0_over_c(spec: ParticleSpec, reduced_mass: bool = False) -> float:
    """Mean packet velocity over c: sqrt(2 E / m c^2), non-relativistic."""
    m = _effective_mass(spec, reduced_mass)
    return math.sqrt(2.0 * spec.kinetic_energy_ev / (m * AMU_EV))


def big_A(spec: ParticleSpec, reduced_mass: bool = False) -> float:
    """Reduced barrier strength A = 2 pi Z alpha / (v0/c).

    Raises RegimeError when v0/c exceeds 0.1: the map uses p0 = m v0 and
    E = p0^2/(2m), neither of which survives relativistic speeds.
    """
    v0c = v0_over_c(spec, reduced_mass)
    if v0c > RELATIVISTIC_THRESHOLD:
        raise RegimeError(
            f"v0/c = {v0c:.4f} exceeds {RELATIVISTIC_THRESHOLD}; "
            "non-relativistic map invalid")
    return 2.0 * math.pi * spec.Z * FINE_STRUCTURE / v0c


def little_a(spec: ParticleSpec, reduced_mass: bool = False) -> BarrierScale:
    """Momentum scale a = 2 pi Z e^2 m / hbar of the barrier kernel.

    Dimensionless form a/(m c) = 2 pi Z alpha does not depend on energy or
    mass; the SI value scales it by m c.  Consistency: big_A = a/p0 with
    p0 = m v0, i.e. big_A = (a/(m c)) / (v0/c).
    """
    v0c = v0_over_c(spec, reduced_mass)
    if v0c > RELATIVISTIC_THRESHOLD:
        raise RegimeError(
            f"v0/c = {v0c:.4f} exceeds {RELATIVISTIC_THRESHOLD}; "
            "non-relativistic map invalid")
    a_over_mc = 2.0 * math.pi * spec.Z * FINE_STRUCTURE
    m_kg = _effective_mass(spec, reduced_mass) * AMU_KG
    return BarrierScale(a_over_mc=a_over_mc, a_si=a_over_mc * m_kg * SPEED_OF_LIGHT)

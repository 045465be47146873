"""TM/TE reflection coefficients at imaginary frequency.

Sign convention.  The raw sheet formulas and the thick-slab Fresnel
formulas disagree on the overall sign of the 2D TE channel: taken
literally they would give an ideal 2D-3D pair a repulsive TE product.
We therefore fix the global convention channel by channel so that the
product r1 * r2 of two identical ideal plates tends to +1:

  * TM -> +1 in the perfect-conductor limit for both 2D and 3D plates;
  * TE -> -1 for both (the standard Fresnel sign), so products are +1.

Only products of coefficients enter the mode sums, so the physics is
unchanged; this is simply the one self-consistent choice.

The n = 0 Matsubara term is always evaluated from the analytic limits
(`zero_mode_reflection`), never by plugging a tiny frequency into the
finite-frequency formulas, whose TM branch is 0/0 there.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import MU_0
from .errors import ValidationError, ZeroFrequencyError
from .materials import Dimensionality
from .response import ResponseKind, ResponseModel, _drude_weight, pi_reduced


@dataclass(frozen=True)
class Mode:
    """One (q, xi) point; q_perp = sqrt(q^2 + xi^2), lengths in 1/m."""

    q: float
    xi: float

    def __post_init__(self):
        if self.q < 0:
            raise ValidationError("q", "must be >= 0")
        if self.xi < 0:
            raise ValidationError("xi", "must be >= 0")

    @property
    def q_perp(self) -> float:
        return math.hypot(self.q, self.xi)


@dataclass(frozen=True)
class ReflectionPair:
    r_tm: float
    r_te: float


def dielectric_from_pi(pi, xi):
    """eps(i xi) = 1 - pi / xi^2 for a bulk (1/m^2) response."""
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0):
        raise ZeroFrequencyError(
            "xi = 0 has no dielectric function; use the n = 0 analytic limit")
    out = 1.0 - np.asarray(pi, dtype=float) / xi**2
    return float(out) if out.ndim == 0 else out


def _r2d_arrays(pi, q_perp, xi):
    """Sheet coefficients; requires xi > 0 elementwise."""
    r_tm = pi / (pi - 2.0 * xi**2 / q_perp)
    r_te = pi / (2.0 * q_perp - pi)
    return r_tm, r_te


def _r3d_arrays(pi, q_perp, xi):
    """Thick-slab Fresnel coefficients via eps; requires xi > 0."""
    eps = 1.0 - pi / xi**2
    s = np.sqrt(q_perp**2 - pi)
    r_tm = (eps * q_perp - s) / (eps * q_perp + s)
    r_te = -(s - q_perp) / (s + q_perp)
    return r_tm, r_te


def reflect_2d(mode: Mode, pi: float) -> ReflectionPair:
    """Reflection off a conducting sheet with reduced response pi (1/m)."""
    if not np.isfinite(pi):
        raise ValidationError("pi", "must be finite")
    if mode.xi == 0:
        raise ZeroFrequencyError("use zero_mode_reflection for the n = 0 term")
    r_tm, r_te = _r2d_arrays(float(pi), mode.q_perp, mode.xi)
    return ReflectionPair(r_tm=float(r_tm), r_te=float(r_te))


def reflect_3d(mode: Mode, pi: float) -> ReflectionPair:
    """Reflection off a thick slab with reduced response pi (1/m^2)."""
    if pi > mode.q_perp**2:
        raise ValidationError("pi", "q_perp^2 - pi < 0: not a passive response")
    if mode.xi == 0:
        raise ZeroFrequencyError("use zero_mode_reflection for the n = 0 term")
    r_tm, r_te = _r3d_arrays(float(pi), mode.q_perp, mode.xi)
    return ReflectionPair(r_tm=float(r_tm), r_te=float(r_te))


def zero_mode_reflection(model: ResponseModel, polarization: str, q=None):
    """Analytic n = 0 reflection coefficient.

    TM: every metallic model (and the ideal reflector) reaches the
    perfect-conductor value +1.  TE: a finite DC conductivity (Drude,
    with or without WL) reflects nothing at zero frequency; the plasma
    model keeps a finite q-dependent value; the ideal reflector gives
    the Fresnel limit -1.
    """
    if polarization not in ("TM", "TE"):
        raise ValidationError("polarization", "must be 'TM' or 'TE'")
    kind = model.kind
    if polarization == "TM":
        return 1.0 if q is None or np.isscalar(q) else np.ones_like(np.asarray(q, dtype=float))
    if kind is ResponseKind.IDEAL:
        return -1.0 if q is None or np.isscalar(q) else -np.ones_like(np.asarray(q, dtype=float))
    if kind in (ResponseKind.DRUDE, ResponseKind.DRUDE_WL):
        return 0.0 if q is None or np.isscalar(q) else np.zeros_like(np.asarray(q, dtype=float))
    # plasma: static limit with the frequency-independent response
    if q is None:
        raise ValidationError("q", "required for the plasma TE zero mode")
    q = np.asarray(q, dtype=float)
    weight = _drude_weight(model.material)
    if model.dimensionality is Dimensionality.TWO_D:
        out = -weight / (2.0 * q + weight)
    else:
        s = np.sqrt(q**2 + weight)
        out = -(s - q) / (s + q)
    return float(out) if out.ndim == 0 else out


def reflection_arrays(model: ResponseModel, q_perp, xi, omega, temperature=None,
                      field=0.0):
    """(r_tm, r_te) on a broadcastable (q_perp, xi) grid with xi > 0.

    omega is xi * c in rad/s with the same shape as xi; split out so the
    caller can precompute it once per Matsubara block.
    """
    if model.kind is ResponseKind.IDEAL:
        # scalars broadcast against any grid; avoids large constant arrays
        return 1.0, -1.0
    pi = pi_reduced(model, omega, temperature, field)
    if model.dimensionality is Dimensionality.TWO_D:
        return _r2d_arrays(pi, q_perp, xi)
    return _r3d_arrays(pi, q_perp, xi)


def zero_mode_arrays(model: ResponseModel, q):
    """(r_tm, r_te) arrays for the n = 0 term over a q grid."""
    q = np.asarray(q, dtype=float)
    r_tm = np.ones_like(q)
    if model.kind is ResponseKind.IDEAL:
        return r_tm, -np.ones_like(q)
    if model.kind in (ResponseKind.DRUDE, ResponseKind.DRUDE_WL):
        return r_tm, np.zeros_like(q)
    return r_tm, np.asarray(zero_mode_reflection(model, "TE", q))

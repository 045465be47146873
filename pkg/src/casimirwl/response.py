"""Electromagnetic linear response of the plates on the imaginary axis.

Three models are supported: a dissipationless plasma response, the
Drude response of diffusive electrons with relaxation time tau, and
Drude plus the Hikami-Larkin-Nagaoka weak-localization correction for a
2D film in a perpendicular magnetic field.  An `IDEAL` kind stands in
for a perfect reflector and is resolved directly at the reflection
layer.

All responses are returned in reduced units (see `constants`): the
common building block is

    pi(i omega_n) = -mu_0 * (n e**2 / m*) * omega_n / (omega_n + 1/tau)

with the carrier density n picked per dimensionality, which gives 1/m**2
for a bulk plate and 1/m for a sheet.  The WL correction is carried by
the same mu_0 factor, so that sigma(i omega_n) = -pi / (mu_0 omega_n)
recovers the sheet conductivity in siemens.
"""

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT as _C
from .constants import E_CHARGE, HBAR, K_B, MU_0
from .errors import DomainError, ModelMismatchError, ValidationError
from .materials import Dimensionality, MaterialSpec

_EULER_GAMMA = 0.5772156649015328606

# switch from the full HLN bracket to its H -> 0 closed form once the
# digamma argument exceeds this; both agree to double precision there
_WL_FIELD_CROSSOVER = 1e8


class ResponseKind(enum.Enum):
    IDEAL = "ideal"
    PLASMA = "plasma"
    DRUDE = "drude"
    DRUDE_WL = "drude_wl"


@dataclass(frozen=True)
class ResponseModel:
    """A response evaluator for one plate."""

    kind: ResponseKind
    material: MaterialSpec | None = None

    def __post_init__(self):
        if self.kind is ResponseKind.IDEAL:
            return
        if self.material is None:
            raise ValidationError("material", f"required for kind {self.kind.value}")
        if (self.kind is ResponseKind.DRUDE_WL
                and self.material.dimensionality is not Dimensionality.TWO_D):
            raise ValidationError(
                "dimensionality",
                "weak localization is only applied to the 2D plate")

    @property
    def dimensionality(self) -> Dimensionality:
        if self.material is None:
            raise ValidationError("material", "ideal model has no dimensionality")
        return self.material.dimensionality


@dataclass(frozen=True)
class ResponseValue:
    """A response sample: pi in reduced units, omega_n as inverse length."""

    pi: float
    omega_n: float


def _drude_weight(material: MaterialSpec) -> float:
    """mu_0 n e^2 / m*, with n per dimensionality (1/m 2D, 1/m^2 3D)."""
    n = (material.n_2d if material.dimensionality is Dimensionality.TWO_D
         else material.n_3d)
    return MU_0 * n * E_CHARGE**2 / material.m_star


def digamma(x):
    """Digamma function for x > 0.

    Recurrence up to x >= 10 followed by the 8-term asymptotic series;
    relative accuracy better than 1e-12 over [1e-6, 1e12].
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x).copy()
    if np.any(x <= 0):
        raise DomainError("digamma requires x > 0")
    acc = np.zeros_like(x)
    # psi(x) = psi(x + 1) - 1/x, applied until the argument reaches 10
    small = x < 10.0
    while np.any(small):
        acc[small] -= 1.0 / x[small]
        x[small] += 1.0
        small = x < 10.0
    inv2 = 1.0 / (x * x)
    series = inv2 * (1.0 / 12.0 + inv2 * (-1.0 / 120.0 + inv2 * (
        1.0 / 252.0 + inv2 * (-1.0 / 240.0 + inv2 * (
            1.0 / 132.0 + inv2 * (-691.0 / 32760.0 + inv2 * (
                1.0 / 12.0 - inv2 * 3617.0 / 8160.0)))))))
    out = acc + np.log(x) - 0.5 / x - series
    return float(out[0]) if scalar else out


def dephasing_time(material: MaterialSpec, temperature: float) -> float:
    """Nyquist electron-electron dephasing time of a 2D film.

    1/tau_phi = (k_B T / (2 pi D nu hbar^2)) ln(pi D nu hbar), valid
    when pi D nu hbar > 1; scales exactly as 1/T.
    """
    if not temperature > 0:
        raise ValidationError("temperature", "must be > 0")
    if material.dimensionality is not Dimensionality.TWO_D:
        raise DomainError("dephasing time is defined for 2D films only")
    g = math.pi * material.diffusion * material.dos_2d * HBAR
    if g <= 1.0:
        raise DomainError(
            "pi * D * nu * hbar <= 1: dephasing formula invalid "
            "(unphysical material input)")
    rate = (K_B * temperature / (2.0 * math.pi * material.diffusion
                                 * material.dos_2d * HBAR**2)) * math.log(g)
    return 1.0 / rate


def wl_bracket(material: MaterialSpec, temperature: float, field: float) -> float:
    """Frequency-independent HLN factor of the WL correction.

    Returns psi(1/2 + hbar/(4 e H D tau_phi)) - ln(hbar/(4 e H D tau)),
    with the analytic H -> 0 limit -ln(tau_phi / tau) substituted below
    the field crossover.  Depends on |H| only.  Returns 0 (with a
    warning) outside the diffusive regime tau_phi > tau.
    """
    if field < 0:
        field = -field
    tau_phi = dephasing_time(material, temperature)
    tau = material.tau
    if tau_phi <= tau:
        warnings.warn(
            "tau_phi <= tau: outside the diffusive regime, "
            "weak-localization correction set to zero", stacklevel=2)
        return 0.0
    if field == 0.0:
        return -math.log(tau_phi / tau)
    t_h = HBAR / (4.0 * E_CHARGE * field * material.diffusion)  # seconds
    x_phi = t_h / tau_phi
    if x_phi > _WL_FIELD_CROSSOVER:
        return -math.log(tau_phi / tau)
    return digamma(0.5 + x_phi) - math.log(t_h / tau)


def _drude_pi_reduced(material, omega_n):
    w = np.asarray(omega_n, dtype=float)
    return -_drude_weight(material) * w / (w + 1.0 / material.tau)


def _wl_delta_reduced(material, omega_n, temperature, field):
    w = np.abs(np.asarray(omega_n, dtype=float))
    b = wl_bracket(material, temperature, field)
    return -MU_0 * E_CHARGE**2 * w / (2.0 * math.pi**2 * HBAR) * b


def pi_reduced(model: ResponseModel, omega_n, temperature=None, field=0.0):
    """Vectorized response pi(i omega_n) in reduced units.

    omega_n is in rad/s (scalar or array).  The Drude+WL total is
    clamped at zero from above: the HLN term grows linearly in omega_n
    and would otherwise overtake the saturated Drude part far outside
    the formula's validity window, producing an active (gain) sheet.
    """
    w = np.asarray(omega_n, dtype=float)
    if np.any(w < 0):
        raise ValidationError("omega_n", "must be >= 0")
    if model.kind is ResponseKind.IDEAL:
        raise ModelMismatchError("ideal reflector has no finite response")
    if model.kind is ResponseKind.PLASMA:
        out = np.broadcast_to(-_drude_weight(model.material), w.shape).copy()
    elif model.kind is ResponseKind.DRUDE:
        out = _drude_pi_reduced(model.material, w)
    else:
        if temperature is None:
            raise ValidationError("temperature", "required for drude_wl")
        out = (_drude_pi_reduced(model.material, w)
               + _wl_delta_reduced(model.material, w, temperature, field))
        out = np.minimum(out, 0.0)
    return float(out) if out.ndim == 0 else out


def drude_pi(model: ResponseModel, omega_n: float) -> ResponseValue:
    """Drude response sample; rejects plasma/ideal models."""
    if model.kind not in (ResponseKind.DRUDE, ResponseKind.DRUDE_WL):
        raise ModelMismatchError(f"drude_pi called with kind {model.kind.value}")
    value = float(_drude_pi_reduced(model.material, omega_n))
    return ResponseValue(pi=value, omega_n=omega_n / _C)


def plasma_pi(model: ResponseModel, omega_n: float) -> ResponseValue:
    """Frequency-independent plasma response sample."""
    if model.kind is not ResponseKind.PLASMA:
        raise ModelMismatchError(f"plasma_pi called with kind {model.kind.value}")
    return ResponseValue(pi=-_drude_weight(model.material), omega_n=omega_n / _C)


def wl_correction(material: MaterialSpec, omega_n: float, temperature: float,
                  field: float) -> ResponseValue:
    """Weak-localization correction delta pi (reduced units)."""
    value = float(_wl_delta_reduced(material, omega_n, temperature, field))
    return ResponseValue(pi=value, omega_n=omega_n / _C)


def total_pi(model: ResponseModel, omega_n: float, temperature=None,
             field=0.0) -> ResponseValue:
    """Dispatch to the model's total response."""
    value = pi_reduced(model, omega_n, temperature, field)
    return ResponseValue(pi=float(value), omega_n=omega_n / _C)


def dc_conductivity(model: ResponseModel, temperature=None, field=0.0) -> float:
    """DC conductivity: sheet value (S) in 2D, bulk value (S/m) in 3D.

    Drude gives n e^2 tau / m*; Drude+WL adds the HLN magnetoconductance
    correction delta sigma(T, H).
    """
    if model.kind in (ResponseKind.PLASMA, ResponseKind.IDEAL):
        raise ModelMismatchError(
            f"{model.kind.value} model has no finite DC conductivity")
    mat = model.material
    n = mat.n_2d if mat.dimensionality is Dimensionality.TWO_D else mat.n_3d
    sigma = n * E_CHARGE**2 * mat.tau / mat.m_star
    if model.kind is ResponseKind.DRUDE_WL:
        if temperature is None:
            raise ValidationError("temperature", "required for drude_wl")
        b = wl_bracket(mat, temperature, field)
        sigma += E_CHARGE**2 / (2.0 * math.pi**2 * HBAR) * b
    return sigma

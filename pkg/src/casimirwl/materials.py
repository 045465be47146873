"""Electronic material parameters derived from user-facing inputs.

The user supplies a Fermi energy (eV), an effective-mass ratio and an
elastic mean free path (nm); everything else (Fermi velocity,
relaxation time, diffusion constant, densities of states and carriers)
follows from the free-electron relations, so downstream formulas are
dimensionally closed over `MaterialSpec` and `PhysicalConstants` alone.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, EV, HBAR, K_B, M_ELECTRON
from .errors import ValidationError


class Dimensionality(enum.Enum):
    TWO_D = "2d"
    THREE_D = "3d"


@dataclass(frozen=True)
class MaterialInput:
    """Raw plate parameters in experimentalist units.

    epsilon_f_ev : Fermi energy in eV
    mstar_ratio  : effective mass over the free electron mass
    mfp_nm       : elastic mean free path in nm
    """

    epsilon_f_ev: float
    mstar_ratio: float
    mfp_nm: float
    dimensionality: Dimensionality

    def __post_init__(self):
        if not self.epsilon_f_ev > 0:
            raise ValidationError("epsilon_f_ev", "must be > 0")
        if not self.mstar_ratio > 0:
            raise ValidationError("mstar_ratio", "must be > 0")
        if not self.mfp_nm > 0:
            raise ValidationError("mfp_nm", "must be > 0")
        if not isinstance(self.dimensionality, Dimensionality):
            raise ValidationError("dimensionality", "must be a Dimensionality")


@dataclass(frozen=True)
class MaterialSpec:
    """Derived electronic parameters of one plate, all SI.

    dos_2d is the density of states per spin of a 2D parabolic band;
    n_2d / n_3d are the carrier densities closing the free-electron
    relations (spin factor 2).
    """

    epsilon_f: float      # J
    m_star: float         # kg
    v_f: float            # m/s
    tau: float            # s
    diffusion: float      # m^2/s
    dos_2d: float         # 1/(J m^2), per spin
    n_2d: float           # 1/m^2
    n_3d: float           # 1/m^3
    mfp: float            # m
    dimensionality: Dimensionality


def derive_material(inp: MaterialInput) -> MaterialSpec:
    """Close the free-electron relations over a `MaterialInput`.

    v_F = sqrt(2 eps_F / m*), tau = l / v_F, and the diffusion constant
    uses the d-dimensional v_F^2 tau / d.
    """
    eps_f = inp.epsilon_f_ev * EV
    m_star = inp.mstar_ratio * M_ELECTRON
    mfp = inp.mfp_nm * 1e-9
    v_f = math.sqrt(2.0 * eps_f / m_star)
    tau = mfp / v_f
    ndim = 2 if inp.dimensionality is Dimensionality.TWO_D else 3
    diffusion = v_f**2 * tau / ndim
    dos_2d = m_star / (2.0 * math.pi * HBAR**2)
    n_2d = 2.0 * dos_2d * eps_f
    n_3d = (2.0 * m_star * eps_f / HBAR**2) ** 1.5 / (3.0 * math.pi**2)
    return MaterialSpec(
        epsilon_f=eps_f,
        m_star=m_star,
        v_f=v_f,
        tau=tau,
        diffusion=diffusion,
        dos_2d=dos_2d,
        n_2d=n_2d,
        n_3d=n_3d,
        mfp=mfp,
        dimensionality=inp.dimensionality,
    )


def material_with_tau(spec: MaterialSpec, tau: float) -> MaterialSpec:
    """Same electronic structure, different scattering time (mfp = v_F tau)."""
    if not tau > 0:
        raise ValidationError("tau", "must be > 0")
    ndim = 2 if spec.dimensionality is Dimensionality.TWO_D else 3
    return MaterialSpec(
        epsilon_f=spec.epsilon_f,
        m_star=spec.m_star,
        v_f=spec.v_f,
        tau=tau,
        diffusion=spec.v_f**2 * tau / ndim,
        dos_2d=spec.dos_2d,
        n_2d=spec.n_2d,
        n_3d=spec.n_3d,
        mfp=spec.v_f * tau,
        dimensionality=spec.dimensionality,
    )


def matsubara_frequency(n, temperature):
    """Bosonic imaginary frequency 2 pi n k_B T / hbar in rad/s.

    Accepts scalar or array n; monotone increasing in n and T.
    """
    if not temperature > 0:
        raise ValidationError("temperature", "must be > 0")
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValidationError("n", "must be >= 0")
    out = 2.0 * np.pi * n * K_B * temperature / HBAR
    return float(out) if out.ndim == 0 else out


def to_wavevector(omega):
    """Convert an angular frequency (rad/s) to inverse-length form omega/c."""
    omega = np.asarray(omega)
    if np.any(omega < 0):
        raise ValidationError("omega", "must be >= 0")
    out = omega / C_LIGHT
    return float(out) if out.ndim == 0 else out


GOLD = MaterialInput(epsilon_f_ev=5.53, mstar_ratio=1.10, mfp_nm=15.0,
                     dimensionality=Dimensionality.THREE_D)
GOLD_FILM = MaterialInput(epsilon_f_ev=5.53, mstar_ratio=1.10, mfp_nm=15.0,
                          dimensionality=Dimensionality.TWO_D)

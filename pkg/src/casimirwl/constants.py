"""Physical constants and the internal unit convention.

Everything in the package is SI.  Frequencies live on the imaginary axis
and are carried in two interchangeable forms: angular frequency omega
(rad/s) for response-function evaluation and the inverse-length form
xi = omega / c (1/m) inside the mode sums, so that the round-trip factor
exp(-2 * sqrt(q**2 + xi**2) * a) is dimensionally literal.

Response functions are stored in "reduced" units that absorb one factor
of mu_0: a 3D bulk response has units 1/m**2 (so that
eps = 1 - pi / xi**2 is dimensionless) and a 2D sheet response has units
1/m (so that it compares directly against the in-plane wavevector in the
sheet reflection coefficients).
"""

from dataclasses import dataclass

from scipy.constants import (
    Boltzmann as _kB,
    c as _c,
    e as _e,
    elementary_charge as _ec,
    epsilon_0 as _eps0,
    fine_structure as _alpha,
    hbar as _hbar,
    m_e as _me,
    mu_0 as _mu0,
)


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA SI constants used throughout; all strictly positive."""

    hbar: float = _hbar          # J s
    c: float = _c                # m/s
    k_B: float = _kB             # J/K
    e_charge: float = _ec        # C
    m0: float = _me              # kg, free electron mass

    def __post_init__(self):
        for name in ("hbar", "c", "k_B", "e_charge", "m0"):
            if getattr(self, name) <= 0:
                raise ValueError(f"constant {name} must be positive")


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
C_LIGHT = CONSTANTS.c
K_B = CONSTANTS.k_B
E_CHARGE = CONSTANTS.e_charge
M_ELECTRON = CONSTANTS.m0
MU_0 = _mu0
EPSILON_0 = _eps0
FINE_STRUCTURE = _alpha

EV = _e                       # J per eV
GAUSS = 1e-4                  # tesla per gauss

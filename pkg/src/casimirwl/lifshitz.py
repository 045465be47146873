"""Finite-temperature Casimir energy and pressure between two plates.

The energy per unit area is a sum over positive Matsubara frequencies
(n = 0 at half weight) of wavevector integrals over the two polarization
channels, each of the form ln(1 - r1 r2 exp(-2 q_perp a)).  The pressure
is obtained by differentiating the integrand analytically in the plate
separation, never by finite differences, which avoids catastrophic
cancellation; the finite-difference consistency of the two is a test.

All integrals are taken in y = 2 q_perp a (see `quadrature`); Matsubara
terms are evaluated in vectorized blocks and truncated once three
consecutive terms fall below tolerance, after which a geometric tail
estimate is folded in.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C_LIGHT, HBAR, K_B
from .errors import CasimirError, ConvergenceError, ValidationError
from .materials import (Dimensionality, MaterialInput, derive_material,
                        matsubara_frequency, GOLD, GOLD_FILM)
from .quadrature import integrate_offset
from .reflection import reflection_arrays, zero_mode_arrays
from .response import ResponseKind, ResponseModel

# Eq. (7) diverges as T -> 0; below this the low-but-finite-temperature
# regime assumed throughout is gone.
MIN_TEMPERATURE = 0.01

_BLOCK = 4096
_HARD_Y_STOP = 200.0


@dataclass(frozen=True)
class NumericsConfig:
    quad_rel_tol: float = 1e-9
    matsubara_rel_tol: float = 1e-9
    max_matsubara: int = 2_000_000
    quad_max_subdivisions: int = 12

    def __post_init__(self):
        for name in ("quad_rel_tol", "matsubara_rel_tol"):
            v = getattr(self, name)
            if not (0.0 < v <= 1e-2):
                raise ValidationError(name, "must be in (0, 1e-2]")
        if self.max_matsubara < 10:
            raise ValidationError("max_matsubara", "must be >= 10")
        if self.quad_max_subdivisions < 0:
            raise ValidationError("quad_max_subdivisions", "must be >= 0")


@dataclass(frozen=True)
class LifshitzJob:
    """Geometry, thermodynamic state and plate models for one evaluation."""

    separation_a: float           # m
    temperature: float            # K
    field_h: float                # tesla
    plate1: ResponseModel         # thick (3D) plate
    plate2: ResponseModel         # 2D plate
    numerics: NumericsConfig = field(default_factory=NumericsConfig)

    def __post_init__(self):
        if not self.separation_a > 0:
            raise ValidationError("separation_a", "must be > 0")
        if self.temperature < MIN_TEMPERATURE:
            raise ValidationError(
                "temperature", f"must be >= {MIN_TEMPERATURE} K")
        if self.field_h < 0:
            raise ValidationError("field_h", "must be >= 0")
        for name, plate, want in (("plate1", self.plate1, Dimensionality.THREE_D),
                                  ("plate2", self.plate2, Dimensionality.TWO_D)):
            if plate.kind is not ResponseKind.IDEAL and plate.dimensionality is not want:
                raise ValidationError(name, f"must be {want.value} (or ideal)")


@dataclass(frozen=True)
class PressureResult:
    pressure: float               # Pa, negative = attractive
    energy_per_area: float        # J/m^2
    normalized: float             # pressure / P0(a)
    n_terms_used: int
    quad_error_est: float
    converged: bool


def ideal_pressure(separation_a: float) -> float:
    """Perfect-conductor zero-temperature pressure -hbar c pi^2 / (240 a^4)."""
    if not separation_a > 0:
        raise ValidationError("separation_a", "must be > 0")
    return -HBAR * C_LIGHT * math.pi**2 / (240.0 * separation_a**4)


def ideal_energy(separation_a: float) -> float:
    """Perfect-conductor zero-temperature energy -hbar c pi^2 / (720 a^3)."""
    if not separation_a > 0:
        raise ValidationError("separation_a", "must be > 0")
    return -HBAR * C_LIGHT * math.pi**2 / (720.0 * separation_a**3)


def _products_finite(job, y, xi_col, omega_col):
    """(rho_tm, rho_te) reflection products on an (n, nodes) grid."""
    kappa = y / (2.0 * job.separation_a)
    r1tm, r1te = reflection_arrays(job.plate1, kappa, xi_col, omega_col,
                                   job.temperature, job.field_h)
    r2tm, r2te = reflection_arrays(job.plate2, kappa, xi_col, omega_col,
                                   job.temperature, job.field_h)
    return r1tm * r2tm, r1te * r2te


def _products_zero_mode(job, y):
    q = y / (2.0 * job.separation_a)
    r1tm, r1te = zero_mode_arrays(job.plate1, q)
    r2tm, r2te = zero_mode_arrays(job.plate2, q)
    return r1tm * r2tm, r1te * r2te


def _stacked_integrand(y, rho_tm, rho_te, ey):
    """Energy rows stacked over pressure rows for one shared quadrature.

    ey = exp(-y) is passed in so callers can build it as an outer
    product exp(-y0) * exp(-t), which is much cheaper than a full-grid
    exponential.
    """
    both_unity = (np.isscalar(rho_tm) and np.isscalar(rho_te)
                  and rho_tm == rho_te)
    channels = (rho_tm,) if both_unity else (rho_tm, rho_te)
    out_e = 0.0
    out_p = 0.0
    for rho in channels:
        x = rho * ey
        if np.any(x >= 1.0):
            raise CasimirError(
                "log argument <= 0 in mode integrand: reflection product "
                "convention violated")
        out_e = out_e + y * np.log1p(-x)
        out_p = out_p + y * y * x / (1.0 - x)
    if both_unity:
        out_e = 2.0 * out_e
        out_p = 2.0 * out_p
    return np.vstack([out_e, out_p])


def _term_integrals(job, n_values):
    """Per-term (energy, pressure) y-integrals for an array of n >= 1."""
    a = job.separation_a
    omega = matsubara_frequency(n_values, job.temperature)
    xi = omega / C_LIGHT
    y0 = 2.0 * xi * a

    def func(t_flat):
        y = y0[:, None] + t_flat[None, :]
        rho_tm, rho_te = _products_finite(job, y, xi[:, None], omega[:, None])
        ey = np.exp(-y0)[:, None] * np.exp(-t_flat)[None, :]
        return _stacked_integrand(y, rho_tm, rho_te, ey)

    totals, err = integrate_offset(func, job.numerics.quad_rel_tol,
                                   job.numerics.quad_max_subdivisions)
    m = len(n_values)
    return totals[:m], totals[m:], err


def _zero_term_integrals(job):
    def func(t_flat):
        y = t_flat[None, :]
        rho_tm, rho_te = _products_zero_mode(job, y)
        return _stacked_integrand(y, rho_tm, rho_te, np.exp(-y))

    totals, err = integrate_offset(func, job.numerics.quad_rel_tol,
                                   job.numerics.quad_max_subdivisions)
    return totals[0], totals[1], err


def _sum_terms(job):
    """Matsubara sum of the raw y-integrals with truncation bookkeeping."""
    tol = job.numerics.matsubara_rel_tol
    e0, p0, err0 = _zero_term_integrals(job)
    e_sum = 0.5 * e0
    p_sum = 0.5 * p0
    quad_err = err0
    last_e = np.array([])
    last_p = np.array([])
    n_used = 0
    converged = False
    a = job.separation_a
    xi1 = matsubara_frequency(1, job.temperature) / C_LIGHT
    while n_used < job.numerics.max_matsubara:
        block = min(_BLOCK, job.numerics.max_matsubara - n_used)
        n_values = np.arange(n_used + 1, n_used + block + 1)
        if 2.0 * n_values[0] * xi1 * a > _HARD_Y_STOP:
            converged = True
            break
        e_terms, p_terms, err = _term_integrals(job, n_values)
        quad_err = max(quad_err, err)
        e_sum += e_terms.sum()
        p_sum += p_terms.sum()
        n_used += block
        last_e = e_terms[-3:] if block >= 3 else np.concatenate([last_e, e_terms])[-3:]
        last_p = p_terms[-3:] if block >= 3 else np.concatenate([last_p, p_terms])[-3:]
        if (len(last_p) == 3
                and np.all(np.abs(last_p) < tol * abs(p_sum))
                and np.all(np.abs(last_e) < tol * abs(e_sum))):
            converged = True
            break
    # geometric tail estimate from the last two retained terms
    tail_e = tail_p = 0.0
    if len(last_p) >= 2 and last_p[-2] != 0.0:
        r = abs(last_p[-1] / last_p[-2])
        if 0.0 < r < 1.0:
            tail_p = last_p[-1] * r / (1.0 - r)
            tail_e = last_e[-1] * r / (1.0 - r)
    e_sum += tail_e
    p_sum += tail_p
    if not converged:
        pref_e = K_B * job.temperature / (8.0 * math.pi * a**2)
        pref_p = -K_B * job.temperature / (8.0 * math.pi * a**3)
        raise ConvergenceError(
            f"Matsubara sum not converged after {n_used} terms",
            partial_energy=pref_e * e_sum,
            partial_pressure=pref_p * p_sum,
            tail_estimate=abs(tail_p) / max(abs(p_sum), 1e-300),
            n_terms=n_used)
    return e_sum, p_sum, quad_err, n_used


def casimir_pressure(job: LifshitzJob) -> PressureResult:
    """Pressure and energy per area for one job, with diagnostics."""
    e_sum, p_sum, quad_err, n_used = _sum_terms(job)
    a = job.separation_a
    energy = K_B * job.temperature / (8.0 * math.pi * a**2) * e_sum
    pressure = -K_B * job.temperature / (8.0 * math.pi * a**3) * p_sum
    return PressureResult(
        pressure=float(pressure),
        energy_per_area=float(energy),
        normalized=float(pressure / ideal_pressure(a)),
        n_terms_used=int(n_used),
        quad_error_est=float(quad_err),
        converged=bool(quad_err <= job.numerics.quad_rel_tol),
    )


def casimir_energy(job: LifshitzJob) -> float:
    """Casimir energy per unit area (J/m^2)."""
    return casimir_pressure(job).energy_per_area


def mode_integrand(job: LifshitzJob, n: int, q: float) -> float:
    """Summed log-bracket of both channels at one (n, q) point."""
    if n < 0:
        raise ValidationError("n", "must be >= 0")
    if q < 0:
        raise ValidationError("q", "must be >= 0")
    a = job.separation_a
    if n == 0:
        y = np.array([[2.0 * q * a]])
        rho_tm, rho_te = _products_zero_mode(job, y)
    else:
        omega = matsubara_frequency(n, job.temperature)
        xi = omega / C_LIGHT
        kappa = math.hypot(q, xi)
        y = np.array([[2.0 * kappa * a]])
        rho_tm, rho_te = _products_finite(
            job, y, np.array([[xi]]), np.array([[omega]]))
    ey = np.exp(-y)
    for rho in (rho_tm, rho_te):
        if np.any(rho * ey >= 1.0):
            raise CasimirError("log argument <= 0 in mode integrand")
    val = np.log1p(-rho_tm * ey) + np.log1p(-rho_te * ey)
    return float(val[0, 0])


def _pair_job(kind3, kind2, separation_a, temperature, field_h,
              material_3d, material_2d, numerics):
    plate1 = ResponseModel(kind3, derive_material(material_3d))
    plate2 = ResponseModel(kind2, derive_material(material_2d))
    return LifshitzJob(separation_a=separation_a, temperature=temperature,
                       field_h=field_h, plate1=plate1, plate2=plate2,
                       numerics=numerics)


@dataclass(frozen=True)
class SuppressionMetrics:
    p_plasma: float
    p_drude: float
    p_wl: float
    numerator: float      # P_drude - P_wl
    denominator: float    # P_plasma - P_drude
    ratio: float


def suppression_metrics(temperature: float, separation_a: float,
                        material_3d: MaterialInput = GOLD,
                        material_2d: MaterialInput = GOLD_FILM,
                        numerics: NumericsConfig = NumericsConfig()) -> SuppressionMetrics:
    """Compare the three model pairs (plasma, Drude, Drude+WL) at H = 0."""
    if not temperature > 0:
        raise ValidationError("temperature", "must be > 0")
    args = (separation_a, temperature, 0.0, material_3d, material_2d, numerics)
    p_pl = casimir_pressure(_pair_job(ResponseKind.PLASMA, ResponseKind.PLASMA, *args)).pressure
    p_dr = casimir_pressure(_pair_job(ResponseKind.DRUDE, ResponseKind.DRUDE, *args)).pressure
    p_wl = casimir_pressure(_pair_job(ResponseKind.DRUDE, ResponseKind.DRUDE_WL, *args)).pressure
    num = p_dr - p_wl
    den = p_pl - p_dr
    return SuppressionMetrics(p_plasma=p_pl, p_drude=p_dr, p_wl=p_wl,
                              numerator=num, denominator=den,
                              ratio=num / den)

"""Lifshitz summation: limits, convergence, model ordering."""

import math

import numpy as np
import pytest
from scipy import constants as sc

from casimirwl.errors import ConvergenceError, ValidationError
from casimirwl.lifshitz import (LifshitzJob, NumericsConfig, casimir_energy,
                                casimir_pressure, ideal_energy, ideal_pressure,
                                mode_integrand, suppression_metrics)
from casimirwl.materials import derive_material, GOLD, GOLD_FILM
from casimirwl.response import ResponseKind, ResponseModel

from conftest import gold_job

IDEAL = ResponseModel(ResponseKind.IDEAL)


def ideal_job(**kwargs):
    args = dict(separation_a=250e-9, temperature=0.1, field_h=0.0,
                plate1=IDEAL, plate2=IDEAL)
    args.update(kwargs)
    return LifshitzJob(**args)


def test_ideal_pressure_closed_form():
    a = 250e-9
    expected = -sc.hbar * sc.c * math.pi**2 / (240.0 * a**4)
    assert ideal_pressure(a) == pytest.approx(expected, rel=1e-15)
    assert ideal_pressure(a) == pytest.approx(-0.333, rel=2e-3)
    assert ideal_pressure(2 * a) == pytest.approx(ideal_pressure(a) / 16.0,
                                                  rel=1e-12)
    assert ideal_pressure(1e-6) == pytest.approx(-1.30e-3, rel=2e-3)
    with pytest.raises(ValidationError):
        ideal_pressure(0.0)


def test_mode_integrand_values():
    job = ideal_job()
    a = job.separation_a
    # ideal plates, n = 0, q = 1/(2a): both channels give ln(1 - e^{-1})
    val = mode_integrand(job, 0, 1.0 / (2.0 * a))
    assert val == pytest.approx(2.0 * math.log(1.0 - math.exp(-1.0)),
                                rel=1e-12)
    assert val < 0
    # exponential decay in q
    wl_job = gold_job(ResponseKind.DRUDE_WL)
    near = mode_integrand(wl_job, 1, 1.0 / a)
    far = mode_integrand(wl_job, 1, 20.0 / a)
    assert abs(far) < 1e-15 * abs(near)


def test_ideal_limit_energy_and_pressure():
    job = ideal_job(temperature=0.01)
    result = casimir_pressure(job)
    assert result.converged
    assert result.pressure == pytest.approx(ideal_pressure(250e-9), rel=5e-3)
    assert result.energy_per_area == pytest.approx(ideal_energy(250e-9),
                                                   rel=5e-3)
    assert result.normalized == pytest.approx(1.0, abs=5e-3)


def test_validation():
    with pytest.raises(ValidationError):
        ideal_job(temperature=0.001)
    with pytest.raises(ValidationError):
        ideal_job(separation_a=-1.0)
    with pytest.raises(ValidationError):
        ideal_job(field_h=-1.0)
    # plate dimensionalities enforced
    mat2 = derive_material(GOLD_FILM)
    with pytest.raises(ValidationError):
        ideal_job(plate1=ResponseModel(ResponseKind.DRUDE, mat2))


def test_convergence_error_carries_partials():
    job = ideal_job(numerics=NumericsConfig(max_matsubara=16))
    with pytest.raises(ConvergenceError) as err:
        casimir_pressure(job)
    assert err.value.partial_pressure is not None
    assert err.value.partial_energy is not None
    assert err.value.n_terms == 16


def test_model_ordering_and_normalization(pressures_01k):
    p_pl = pressures_01k["plasma"].pressure
    p_dr = pressures_01k["drude"].pressure
    p_wl = pressures_01k["wl"].pressure
    p0 = ideal_pressure(250e-9)
    assert abs(p_wl) < abs(p_dr) < abs(p_pl) < abs(p0)
    for result in pressures_01k.values():
        assert 0.0 < result.normalized < 1.05
        assert result.converged
        assert result.pressure < 0
        assert result.energy_per_area < 0


def test_energy_matches_pressure_result():
    job = gold_job(ResponseKind.DRUDE, temperature=1.0)
    assert casimir_energy(job) == casimir_pressure(job).energy_per_area


def test_suppression_metrics_structure(pressures_01k):
    m = suppression_metrics(0.1, 250e-9)
    assert m.p_plasma == pytest.approx(pressures_01k["plasma"].pressure,
                                       rel=1e-9)
    assert m.p_drude == pytest.approx(pressures_01k["drude"].pressure,
                                      rel=1e-9)
    assert m.p_wl == pytest.approx(pressures_01k["wl"].pressure, rel=1e-9)
    assert m.numerator == m.p_drude - m.p_wl
    assert m.denominator == m.p_plasma - m.p_drude
    assert m.ratio == pytest.approx(m.numerator / m.denominator, rel=1e-15)


def test_ratio_grows_as_t_drops():
    r01 = suppression_metrics(0.1, 250e-9).ratio
    r005 = suppression_metrics(0.05, 250e-9).ratio
    assert r005 > r01


def test_field_weakens_suppression(pressures_01k):
    p_wl_0 = pressures_01k["wl"].pressure
    p_wl_h = casimir_pressure(gold_job(ResponseKind.DRUDE_WL,
                                       field_h=40e-4)).pressure
    # field restores the pressure toward the Drude value
    assert abs(p_wl_h) > abs(p_wl_0)

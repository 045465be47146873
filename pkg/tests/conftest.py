"""Shared fixtures: the expensive gold-pair pressures at 0.1 K."""

import pytest

from casimirwl.lifshitz import LifshitzJob, casimir_pressure
from casimirwl.materials import GOLD, GOLD_FILM, derive_material
from casimirwl.response import ResponseKind, ResponseModel

GOLD_3D = derive_material(GOLD)
GOLD_2D = derive_material(GOLD_FILM)


def gold_job(kind2, temperature=0.1, field_h=0.0, separation_a=250e-9,
             kind1=ResponseKind.DRUDE, **kwargs):
    """3D gold plate + 2D gold film with the requested model kinds."""
    return LifshitzJob(
        separation_a=separation_a, temperature=temperature, field_h=field_h,
        plate1=ResponseModel(kind1, GOLD_3D),
        plate2=ResponseModel(kind2, GOLD_2D), **kwargs)


@pytest.fixture(scope="session")
def pressures_01k():
    """Plasma / Drude / Drude+WL pair pressures at T = 0.1 K, H = 0."""
    return {
        "plasma": casimir_pressure(
            gold_job(ResponseKind.PLASMA, kind1=ResponseKind.PLASMA)),
        "drude": casimir_pressure(gold_job(ResponseKind.DRUDE)),
        "wl": casimir_pressure(gold_job(ResponseKind.DRUDE_WL)),
    }

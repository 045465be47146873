"""Finite-temperature Casimir pressure with weak-localization physics.

A numerical engine for the thermal Casimir interaction between a thick
metallic plate and a quasi-2D film under plasma, Drude, and
Drude-plus-weak-localization response models, together with the
mesoscopic disorder statistics of the Casimir energy (Gaussian
distribution, width functional, and scaling-law fits).
"""

__version__ = "0.1.0"

from .constants import CONSTANTS, PhysicalConstants
from .errors import (CasimirError, ConfigError, ConvergenceError,
                     DegenerateDistributionError, DomainError, FitError,
                     ModelMismatchError, RPAPoleError, ValidationError,
                     ZeroFrequencyError)
from .materials import (Dimensionality, MaterialInput, MaterialSpec,
                        derive_material, material_with_tau,
                        matsubara_frequency, GOLD, GOLD_FILM)
from .response import (ResponseKind, ResponseModel, ResponseValue,
                       dc_conductivity, dephasing_time, digamma, pi_reduced,
                       total_pi, wl_bracket)
from .reflection import (Mode, ReflectionPair, reflect_2d, reflect_3d,
                         reflection_arrays, zero_mode_reflection)
from .lifshitz import (LifshitzJob, NumericsConfig, PressureResult,
                       SuppressionMetrics, casimir_energy, casimir_pressure,
                       ideal_energy, ideal_pressure, mode_integrand,
                       suppression_metrics)
from .fluctuations import (DistanceFit, FluctuationKernel, FluctuationReport,
                           PhotonPropagator, ScreenedResponse, TauFit,
                           WidthGapRatio, distribution_width,
                           energy_distribution, fit_scaling_distance,
                           fit_scaling_tau, fluctuation_report,
                           one_loop_energy, width_gap_ratio)
from .config import RunConfig, build_job, parse_config, serialize

__all__ = [name for name in dir() if not name.startswith("_")]

"""Flat dotted key-value run configuration.

Grammar: one `section.key = value` pair per line; `#` starts a comment;
blank lines ignored.  Values are numbers, bare words, or comma-separated
number lists.  Unknown keys are an error in strict mode and a warning
otherwise.  `serialize` emits every key (defaults included) so that
parse(serialize(cfg)) == cfg.

Known keys and defaults (gold-on-gold, the standard geometry):

    plate1.model = drude            # ideal | plasma | drude  (3D plate)
    plate1.epsilon_f_ev = 5.53
    plate1.mstar_ratio = 1.1
    plate1.mfp_nm = 15.0
    plate2.model = drude_wl         # ideal | plasma | drude | drude_wl
    plate2.epsilon_f_ev = 5.53
    plate2.mstar_ratio = 1.1
    plate2.mfp_nm = 15.0
    geometry.separation_nm = 250.0
    state.temperature_K = 0.1
    state.field_gauss = 0.0
    sweep.variable = none           # none | field | temperature | separation
    sweep.min = 0.0
    sweep.max = 1.0
    sweep.count = 2
    sweep.spacing = linear          # linear | log
    numerics.quad_rel_tol = 1e-09
    numerics.matsubara_rel_tol = 1e-09
    numerics.max_matsubara = 2000000
    output.path =                   # empty = stdout
    output.format = csv             # csv | json
    fluctuations.kernel_amplitude = 0.3534
    fluctuations.cooperon_factor = 2.0
    fluctuations.spectral_tilt = 0.3
    fluctuations.diffusive_weight = 1.0
    fluctuations.sweep = none       # none | tau | separation
    fluctuations.separations_nm = 250,400,800,1600
"""

import warnings
from dataclasses import dataclass, fields

from .errors import ConfigError
from .fluctuations import DEFAULT_AMPLITUDE, FluctuationKernel
from .lifshitz import LifshitzJob, NumericsConfig
from .materials import Dimensionality, MaterialInput, derive_material
from .response import ResponseKind, ResponseModel

GAUSS = 1e-4  # tesla


@dataclass(frozen=True)
class RunConfig:
    plate1_model: str = "drude"
    plate1_epsilon_f_ev: float = 5.53
    plate1_mstar_ratio: float = 1.1
    plate1_mfp_nm: float = 15.0
    plate2_model: str = "drude_wl"
    plate2_epsilon_f_ev: float = 5.53
    plate2_mstar_ratio: float = 1.1
    plate2_mfp_nm: float = 15.0
    separation_nm: float = 250.0
    temperature_k: float = 0.1
    field_gauss: float = 0.0
    sweep_variable: str = "none"
    sweep_min: float = 0.0
    sweep_max: float = 1.0
    sweep_count: int = 2
    sweep_spacing: str = "linear"
    quad_rel_tol: float = 1e-9
    matsubara_rel_tol: float = 1e-9
    max_matsubara: int = 2_000_000
    output_path: str = ""
    output_format: str = "csv"
    fluct_kernel_amplitude: float = DEFAULT_AMPLITUDE
    fluct_cooperon_factor: float = 2.0
    fluct_spectral_tilt: float = 0.3
    fluct_diffusive_weight: float = 1.0
    fluct_sweep: str = "none"
    fluct_separations_nm: tuple = (250.0, 400.0, 800.0, 1600.0)


def _as_float(raw):
    return float(raw)


def _as_int(raw):
    v = float(raw)
    if v != int(v):
        raise ValueError("not an integer")
    return int(v)


def _as_word(options):
    def conv(raw):
        if raw not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return raw
    return conv


def _as_float_list(raw):
    return tuple(float(p) for p in raw.split(","))


def _as_path(raw):
    return raw


# dotted key -> (RunConfig attribute, converter)
_KEYS = {
    "plate1.model": ("plate1_model", _as_word(("ideal", "plasma", "drude"))),
    "plate1.epsilon_f_ev": ("plate1_epsilon_f_ev", _as_float),
    "plate1.mstar_ratio": ("plate1_mstar_ratio", _as_float),
    "plate1.mfp_nm": ("plate1_mfp_nm", _as_float),
    "plate2.model": ("plate2_model",
                     _as_word(("ideal", "plasma", "drude", "drude_wl"))),
    "plate2.epsilon_f_ev": ("plate2_epsilon_f_ev", _as_float),
    "plate2.mstar_ratio": ("plate2_mstar_ratio", _as_float),
    "plate2.mfp_nm": ("plate2_mfp_nm", _as_float),
    "geometry.separation_nm": ("separation_nm", _as_float),
    "state.temperature_K": ("temperature_k", _as_float),
    "state.field_gauss": ("field_gauss", _as_float),
    "sweep.variable": ("sweep_variable",
                       _as_word(("none", "field", "temperature", "separation"))),
    "sweep.min": ("sweep_min", _as_float),
    "sweep.max": ("sweep_max", _as_float),
    "sweep.count": ("sweep_count", _as_int),
    "sweep.spacing": ("sweep_spacing", _as_word(("linear", "log"))),
    "numerics.quad_rel_tol": ("quad_rel_tol", _as_float),
    "numerics.matsubara_rel_tol": ("matsubara_rel_tol", _as_float),
    "numerics.max_matsubara": ("max_matsubara", _as_int),
    "output.path": ("output_path", _as_path),
    "output.format": ("output_format", _as_word(("csv", "json"))),
    "fluctuations.kernel_amplitude": ("fluct_kernel_amplitude", _as_float),
    "fluctuations.cooperon_factor": ("fluct_cooperon_factor", _as_float),
    "fluctuations.spectral_tilt": ("fluct_spectral_tilt", _as_float),
    "fluctuations.diffusive_weight": ("fluct_diffusive_weight", _as_float),
    "fluctuations.sweep": ("fluct_sweep",
                           _as_word(("none", "tau", "separation"))),
    "fluctuations.separations_nm": ("fluct_separations_nm", _as_float_list),
}

_ATTR_TO_KEY = {attr: key for key, (attr, _) in _KEYS.items()}

# range checks applied after parsing, reported by dotted key name
def _validate(cfg: RunConfig):
    def bad(key, message):
        raise ConfigError(f"{key}: {message}")

    for key, attr in (("geometry.separation_nm", "separation_nm"),
                      ("plate1.epsilon_f_ev", "plate1_epsilon_f_ev"),
                      ("plate1.mstar_ratio", "plate1_mstar_ratio"),
                      ("plate1.mfp_nm", "plate1_mfp_nm"),
                      ("plate2.epsilon_f_ev", "plate2_epsilon_f_ev"),
                      ("plate2.mstar_ratio", "plate2_mstar_ratio"),
                      ("plate2.mfp_nm", "plate2_mfp_nm"),
                      ("state.temperature_K", "temperature_k")):
        if not getattr(cfg, attr) > 0:
            bad(key, "must be > 0")
    if cfg.field_gauss < 0:
        bad("state.field_gauss", "must be >= 0")
    if cfg.sweep_variable != "none":
        if not cfg.sweep_min < cfg.sweep_max:
            bad("sweep.min", "sweep bounds must satisfy min < max")
        if cfg.sweep_count < 2:
            bad("sweep.count", "must be >= 2")
        if cfg.sweep_variable in ("temperature", "separation") and cfg.sweep_min <= 0:
            bad("sweep.min", "must be > 0 for this sweep variable")
        if cfg.sweep_variable == "field" and cfg.sweep_min < 0:
            bad("sweep.min", "must be >= 0")
        if cfg.sweep_spacing == "log" and cfg.sweep_min <= 0:
            bad("sweep.min", "must be > 0 for log spacing")
    if not (0 < cfg.quad_rel_tol <= 1e-2):
        bad("numerics.quad_rel_tol", "must be in (0, 1e-2]")
    if not (0 < cfg.matsubara_rel_tol <= 1e-2):
        bad("numerics.matsubara_rel_tol", "must be in (0, 1e-2]")
    if cfg.max_matsubara < 10:
        bad("numerics.max_matsubara", "must be >= 10")
    if cfg.fluct_kernel_amplitude < 0:
        bad("fluctuations.kernel_amplitude", "must be >= 0")
    if cfg.fluct_cooperon_factor not in (1.0, 2.0):
        bad("fluctuations.cooperon_factor", "must be 1 or 2")
    if any(a <= 0 for a in cfg.fluct_separations_nm):
        bad("fluctuations.separations_nm", "entries must be > 0")


def parse_config(text: str, strict: bool = True) -> RunConfig:
    """Parse the flat key-value format; errors carry line and column."""
    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        if not line.strip():
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno,
                              column=len(line) - len(line.lstrip()) + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        value = value_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        if key not in _KEYS:
            if strict:
                raise ConfigError(f"unknown key '{key}'", line=lineno,
                                  column=key_col)
            warnings.warn(f"ignoring unknown config key '{key}' "
                          f"(line {lineno})", stacklevel=2)
            continue
        attr, conv = _KEYS[key]
        value_col = len(line) - len(line.split("=", 1)[1].lstrip()) + 1
        try:
            values[attr] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"{key}: invalid value '{value}' ({exc})",
                              line=lineno, column=value_col) from None
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


def serialize(cfg: RunConfig) -> str:
    """Emit every key in the documented order; round-trips through parse."""
    lines = []
    for f in fields(RunConfig):
        key = _ATTR_TO_KEY[f.name]
        value = getattr(cfg, f.name)
        if isinstance(value, tuple):
            value = ",".join(repr(v) for v in value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


_KIND = {
    "ideal": ResponseKind.IDEAL,
    "plasma": ResponseKind.PLASMA,
    "drude": ResponseKind.DRUDE,
    "drude_wl": ResponseKind.DRUDE_WL,
}


def plate_model(cfg: RunConfig, which: int) -> ResponseModel:
    """Build the ResponseModel for plate 1 (3D) or plate 2 (2D)."""
    prefix = f"plate{which}_"
    kind = _KIND[getattr(cfg, prefix + "model")]
    if kind is ResponseKind.IDEAL:
        return ResponseModel(kind)
    dim = Dimensionality.THREE_D if which == 1 else Dimensionality.TWO_D
    material = derive_material(MaterialInput(
        epsilon_f_ev=getattr(cfg, prefix + "epsilon_f_ev"),
        mstar_ratio=getattr(cfg, prefix + "mstar_ratio"),
        mfp_nm=getattr(cfg, prefix + "mfp_nm"),
        dimensionality=dim))
    return ResponseModel(kind, material)


def numerics_config(cfg: RunConfig) -> NumericsConfig:
    return NumericsConfig(quad_rel_tol=cfg.quad_rel_tol,
                          matsubara_rel_tol=cfg.matsubara_rel_tol,
                          max_matsubara=cfg.max_matsubara)


def build_job(cfg: RunConfig, *, field_gauss=None, temperature_k=None,
              separation_nm=None) -> LifshitzJob:
    """One Lifshitz job from the config, with optional swept overrides."""
    if field_gauss is None:
        field_gauss = cfg.field_gauss
    if temperature_k is None:
        temperature_k = cfg.temperature_k
    if separation_nm is None:
        separation_nm = cfg.separation_nm
    return LifshitzJob(
        separation_a=separation_nm * 1e-9,
        temperature=temperature_k,
        field_h=field_gauss * GAUSS,
        plate1=plate_model(cfg, 1),
        plate2=plate_model(cfg, 2),
        numerics=numerics_config(cfg))


def build_kernel(cfg: RunConfig) -> FluctuationKernel:
    return FluctuationKernel(amplitude=cfg.fluct_kernel_amplitude,
                             cooperon_factor=cfg.fluct_cooperon_factor,
                             spectral_tilt=cfg.fluct_spectral_tilt,
                             diffusive_weight=cfg.fluct_diffusive_weight)

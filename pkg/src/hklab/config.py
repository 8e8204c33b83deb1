"""Run configuration: desk-scale defaults, INI-style config files, and
command-line overrides (flags win over the file, the file over defaults)."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace


class ConfigError(ValueError):
    """Invalid configuration; the CLI maps this to exit code 2."""


DEFAULT_TOLERANCES = {
    "oscillator_eigenvalue": 1e-6,
    "kernel_eps": 1e-8,
    "kernel_gap": 1e-6,
    "kernel_overlap": 1e-8,
    "trace_heat": 1e-8,
    "spectral_mapping": 1e-8,
    "beta_sigma": 1e-14,
    "beta_zero_scale": 1e-14,
    "beta_homomorphism": 1e-12,
    "beta_rho_constant_rel": 0.05,
    "mult_identity": 1e-10,
    "alpha_defect": 5e-7,
    "cross_validation": 1e-8,
    "operator_unit_norm": 1e-12,
    "compactness_ratio": 1e-6,
    "sigma_calculus": 1e-8,
    "gamma_homomorphism": 1e-8,
    "gamma_equivariance": 1e-8,
    "homotopy_match": 1e-6,
    "projection_identity": 1e-10,
    "tensor_axioms": 1e-12,
    "crossed_axioms": 1e-12,
    "crossed_covariance": 1e-10,
    "norm_oracle": 1e-6,
    "hermite_gram": 1e-10,
}

# slope window for the translation-equivariance decay of the dual-Dirac family
BETA_SLOPE_RANGE = (-1.2, -0.8)
REFLECTION_NORM_FLOOR = 1.99

SUITE_NAMES = ("spectrum", "beta", "alpha", "gamma-homotopy", "tensor", "crossed",
               "properness", "all")


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one verification run.

    A fixed seed makes the emitted CSV files byte-identical between runs.
    """

    grid_l: float = 20.0
    grid_n: int = 1024
    # alignment-mode half-width: 2L must divide N so that whole times are
    # whole numbers of grid steps; used for the exact conjugation identities
    grid_l_aligned: float = 32.0
    hermite_m: int = 256
    t_operator: tuple = (1.0, 2.0, 4.0)
    t_function: tuple = (1e1, 10 ** 1.5, 1e2, 10 ** 2.5, 1e3, 10 ** 3.5, 1e4)
    t_algebraic: tuple = (1.0, 2.0, 4.0, 8.0, 16.0)
    s_values: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    homotopy_s: tuple = (1.0, 0.5, 0.25)
    seed: int = 42
    out_dir: str = "reports"
    parallel: int = 1
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def validate(self) -> "RunConfig":
        if self.grid_n <= 0 or self.grid_n % 2 != 0:
            raise ConfigError(f"grid size must be a positive even integer, got {self.grid_n}")
        if not self.grid_l > 0:
            raise ConfigError(f"grid half-width must be positive, got {self.grid_l}")
        if not self.grid_l_aligned > 0:
            raise ConfigError("aligned half-width must be positive")
        ratio = self.grid_n / (2.0 * self.grid_l_aligned)
        if abs(ratio - round(ratio)) > 1e-9:
            raise ConfigError(
                f"alignment mode needs 2L | N: N={self.grid_n}, L={self.grid_l_aligned}")
        if self.hermite_m < 24:
            raise ConfigError("hermite basis must have at least 24 functions")
        if self.hermite_m > self.grid_n // 4:
            raise ConfigError(
                f"hermite size {self.hermite_m} exceeds a quarter of the grid size {self.grid_n}")
        if self.parallel < 1:
            raise ConfigError("parallel worker count must be >= 1")
        for grid_name in ("t_operator", "t_function", "t_algebraic"):
            ts = getattr(self, grid_name)
            if not ts or any(t < 1 for t in ts):
                raise ConfigError(f"{grid_name} must be nonempty with all entries >= 1")
        if any(not 0 <= s <= 1 for s in self.s_values):
            raise ConfigError("action scales must lie in [0, 1]")
        if any(not 0 < s <= 1 for s in self.homotopy_s):
            raise ConfigError("homotopy parameters must lie in (0, 1]")
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys: {sorted(unknown)}")
        bad = {k: v for k, v in self.tolerances.items() if not v > 0}
        if bad:
            raise ConfigError(f"tolerances must be positive: {bad}")
        return self

    def tol(self, key: str) -> float:
        return self.tolerances[key]


def _parse_floats(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.replace(";", ",").split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse float list from {text!r}") from exc


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Build a RunConfig from defaults, an optional INI file, and overrides."""
    cfg = RunConfig()
    if path is not None:
        parser = configparser.ConfigParser()
        read = parser.read(path)
        if not read:
            raise ConfigError(f"cannot read config file {path}")
        updates = {}
        if parser.has_section("grid"):
            if parser.has_option("grid", "n"):
                updates["grid_n"] = parser.getint("grid", "n")
            if parser.has_option("grid", "l"):
                updates["grid_l"] = parser.getfloat("grid", "l")
            if parser.has_option("grid", "l_aligned"):
                updates["grid_l_aligned"] = parser.getfloat("grid", "l_aligned")
        if parser.has_section("hermite") and parser.has_option("hermite", "m"):
            updates["hermite_m"] = parser.getint("hermite", "m")
        if parser.has_section("sweeps"):
            sweeps = parser["sweeps"]
            if "t_operator" in sweeps:
                updates["t_operator"] = _parse_floats(sweeps["t_operator"])
            if "t_function_log10" in sweeps:
                updates["t_function"] = tuple(10.0 ** e for e in _parse_floats(sweeps["t_function_log10"]))
            elif "t_function" in sweeps:
                updates["t_function"] = _parse_floats(sweeps["t_function"])
            if "t_algebraic" in sweeps:
                updates["t_algebraic"] = _parse_floats(sweeps["t_algebraic"])
            if "s_values" in sweeps:
                updates["s_values"] = _parse_floats(sweeps["s_values"])
            if "homotopy_s" in sweeps:
                updates["homotopy_s"] = _parse_floats(sweeps["homotopy_s"])
        if parser.has_section("run"):
            run = parser["run"]
            if "seed" in run:
                updates["seed"] = parser.getint("run", "seed")
            if "out" in run:
                updates["out_dir"] = run["out"]
            if "parallel" in run:
                updates["parallel"] = parser.getint("run", "parallel")
        if parser.has_section("tolerances"):
            tols = dict(cfg.tolerances)
            for key, value in parser["tolerances"].items():
                try:
                    tols[key] = float(value)
                except ValueError as exc:
                    raise ConfigError(f"tolerance {key} is not a number: {value!r}") from exc
            updates["tolerances"] = tols
        cfg = replace(cfg, **updates)
    if overrides:
        clean = {k: v for k, v in overrides.items() if v is not None}
        if clean:
            cfg = replace(cfg, **clean)
    return cfg.validate()

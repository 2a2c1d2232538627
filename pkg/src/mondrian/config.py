"""Shipped defaults and configuration loading.

All tunables live here: clustering weights and radius, the region and
layout similarity thresholds, and the flooding stop parameters. A config
file (JSON or TOML) can override any field; CLI flags override the file.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

__all__ = [
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "DEFAULT_GAMMA",
    "DEFAULT_RADIUS",
    "DEFAULT_MIN_POINTS",
    "DEFAULT_TAU_R",
    "DEFAULT_TAU_F",
    "FLOOD_STOP_EPS",
    "FLOOD_MAX_ITER",
    "default_radius_grid",
    "AppConfig",
    "load_config",
]

DEFAULT_ALPHA = 1.0
DEFAULT_BETA = 0.5
DEFAULT_GAMMA = 1.0
DEFAULT_RADIUS = 1.5
DEFAULT_MIN_POINTS = 1
DEFAULT_TAU_R = 0.75
DEFAULT_TAU_F = 0.99
FLOOD_STOP_EPS = 0.1
FLOOD_MAX_ITER = 10


def default_radius_grid() -> tuple[float, ...]:
    """Radius search grid: 0.1..2 by 0.1, then 3..10 by 1, then 20..100 by 10."""
    fine = [round(0.1 * k, 1) for k in range(1, 21)]
    mid = [float(k) for k in range(3, 11)]
    coarse = [float(k) for k in range(20, 101, 10)]
    return tuple(fine + mid + coarse)


@dataclass(frozen=True)
class AppConfig:
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    radius: float = DEFAULT_RADIUS
    min_points: int = DEFAULT_MIN_POINTS
    tau_r: float = DEFAULT_TAU_R
    tau_f: float = DEFAULT_TAU_F
    flood_stop_eps: float = FLOOD_STOP_EPS
    flood_max_iter: int = FLOOD_MAX_ITER
    delimiter: str = ","
    quote: str = '"'

    def cluster_params(self):
        from .cluster import ClusterParams

        return ClusterParams(
            alpha=self.alpha,
            beta=self.beta,
            gamma=self.gamma,
            epsilon=self.radius,
            min_points=self.min_points,
        )

    def thresholds(self):
        from .templates import Thresholds

        return Thresholds(tau_r=self.tau_r, tau_f=self.tau_f)

    def replace(self, **overrides) -> "AppConfig":
        """New config with the non-None overrides applied."""
        updates = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **updates)


def load_config(path: str | Path) -> AppConfig:
    """Load an ``AppConfig`` from a JSON or TOML file."""
    path = Path(path)
    if path.suffix.lower() == ".toml":
        try:
            import tomllib as toml  # type: ignore[import-not-found]
        except ModuleNotFoundError:
            import tomli as toml  # type: ignore[import-not-found]
        raw = toml.loads(path.read_text())
    else:
        raw = json.loads(path.read_text())
    known = {f.name for f in dataclasses.fields(AppConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return AppConfig(**raw)

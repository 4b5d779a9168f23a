"""Tolerances and default depths, collected in one place."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

CONFIG_ENV_VAR = "SCHURKERNEL_CONFIG"


@dataclass(frozen=True)
class Tolerances:
    """Every numeric threshold used by a verdict lives here.

    ``tol_sigma`` is relative: a determinant counts as zero when it drops
    below ``tol_sigma`` times its predecessor.
    """

    tol_unit: float = 1e-12
    tol_psd: float = 1e-10
    tol_sigma: float = 1e-8
    tol_margin: float = 1e-10
    tol_kernel: float = 1e-6
    tol_sep: float = 10.0
    tol_level: float = 1e-6
    tol_nilp: float = 1e-8
    tol_range: float = 1e-8
    sigma_floor: float = 1e-3
    hs_floor: float = 1e-3
    refresh_every: int = 64

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"tolerance {f.name} must be positive, got {value!r}")


@dataclass(frozen=True)
class Depths:
    n_max: int = 12
    m_max: int = 4
    model_size: int = 12
    extend_count: int = 10


@dataclass(frozen=True)
class Config:
    tolerances: Tolerances = Tolerances()
    depths: Depths = Depths()

    def to_dict(self) -> dict:
        return {"tolerances": asdict(self.tolerances), "depths": asdict(self.depths)}

    def with_overrides(self, tolerances: dict | None = None, depths: dict | None = None) -> "Config":
        tol = _merge(Tolerances, self.tolerances, tolerances or {})
        dep = _merge(Depths, self.depths, depths or {})
        return Config(tolerances=tol, depths=dep)

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        return cls().with_overrides(data.get("tolerances"), data.get("depths"))


def _merge(kind, base, overrides: dict):
    known = {f.name for f in fields(kind)}
    unknown = set(overrides) - set(known)
    if unknown:
        raise ValueError(f"unknown {kind.__name__.lower()} keys: {sorted(unknown)}")
    cast = {}
    for key, value in overrides.items():
        current = getattr(base, key)
        cast[key] = type(current)(value)
    return replace(base, **cast)


DEFAULT = Config()


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Read a JSON config file, falling back to ``$SCHURKERNEL_CONFIG`` and then defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return DEFAULT
    data = json.loads(Path(path).read_text())
    return Config.from_dict(data)

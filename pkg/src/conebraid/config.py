"""Run configuration: a single JSON file with every physical parameter explicit.

The dialect is plain JSON with a fixed key tree; serialization is canonical
(sorted keys, two-space indent, trailing newline), so parse -> dump is
idempotent and the config digest is reproducible.  Defaults reproduce the
reference experiment: the unit Gaussian charge pair, a 30 degree cone along
z, radii 10..40, the (64, 26, 10) momentum grid, and the default tail
policy.  Unknown keys are rejected rather than ignored.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .errors import ConfigError

_PROFILE_KINDS = ("gaussian-momentum", "bump-position")
_BUMP_SHAPES = ("indicator", "smooth")


@dataclass(frozen=True)
class GridCfg:
    n_radial: int = 64
    n_angular: int = 26
    r_max: float = 10.0


@dataclass(frozen=True)
class ChargeCfg:
    name: str
    profile: str = "gaussian-momentum"
    channel: str = "g"
    q: float = 1.0
    s: float = 1.0
    support_radius: float = 1.0
    shape: str = "indicator"


@dataclass(frozen=True)
class ConeCfg:
    axis: tuple[float, float, float] = (0.0, 0.0, 1.0)
    half_angle_deg: float = 30.0
    time_slope: float = 0.0
    time_exponent: float = 0.0


@dataclass(frozen=True)
class HomotopyCfg:
    steps: int = 6
    step_deg: float = 30.0


@dataclass(frozen=True)
class TailCfg:
    window_start: int = 32
    sample_count: int = 16
    tolerance: float = 1e-6


@dataclass(frozen=True)
class ThresholdCfg:
    laws: float = 1e-12
    gram: float = 1e-10
    braiding: float = 1e-3
    homotopy: float = 1e-3
    decay: float = 1e-2
    extension: float = 1e-2


@dataclass(frozen=True)
class RunConfig:
    grid: GridCfg = field(default_factory=GridCfg)
    charges: tuple[ChargeCfg, ...] = (
        ChargeCfg(name="gamma", profile="gaussian-momentum", channel="g", q=1.0, s=1.0),
        ChargeCfg(name="delta", profile="gaussian-momentum", channel="h", q=1.0, s=1.0),
    )
    cone: ConeCfg = field(default_factory=ConeCfg)
    homotopy: HomotopyCfg = field(default_factory=HomotopyCfg)
    radii: tuple[float, ...] = (10.0, 20.0, 30.0, 40.0)
    transporter_offset: float = 2.0
    tail_policy: TailCfg = field(default_factory=TailCfg)
    thresholds: ThresholdCfg = field(default_factory=ThresholdCfg)
    law_samples: int = 100
    seed: int = 0
    out_dir: str = "out"

    def validate(self) -> "RunConfig":
        names = [c.name for c in self.charges]
        if len(names) != len(set(names)):
            raise ConfigError(f"charge names must be unique, got {names}")
        if len(self.charges) < 2:
            raise ConfigError("at least two charges are required")
        for c in self.charges:
            if c.profile not in _PROFILE_KINDS:
                raise ConfigError(f"charge {c.name!r}: unknown profile {c.profile!r}")
            if c.channel not in ("g", "h"):
                raise ConfigError(f"charge {c.name!r}: channel must be 'g' or 'h'")
            if c.s <= 0 or c.support_radius <= 0:
                raise ConfigError(f"charge {c.name!r}: widths must be positive")
            if c.shape not in _BUMP_SHAPES:
                raise ConfigError(f"charge {c.name!r}: unknown bump shape {c.shape!r}")
            if not c.name:
                raise ConfigError("charge names must be nonempty")
        if len(self.radii) < 3 or any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ConfigError("radii must be strictly increasing with at least 3 entries")
        if not (0.0 < self.half_angle_rad() < math.pi / 2.0):
            raise ConfigError("cone half angle must lie strictly between 0 and 90 degrees")
        for name, value in asdict(self.thresholds).items():
            if value <= 0:
                raise ConfigError(f"threshold {name!r} must be positive")
        if self.transporter_offset <= 0:
            raise ConfigError("transporter_offset must be positive")
        if self.law_samples < 1:
            raise ConfigError("law_samples must be positive")
        if self.homotopy.steps < 1 or self.homotopy.step_deg <= 0:
            raise ConfigError("homotopy chain needs at least one positive step")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        return self

    def half_angle_rad(self) -> float:
        return math.radians(self.cone.half_angle_deg)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["charges"] = [asdict(c) for c in self.charges]
        return out

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_canonical_json().encode()).hexdigest()[:16]


def _build(cls, data: dict, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object, got {type(data).__name__}")
    fields = {f.name for f in cls.__dataclass_fields__.values()}
    unknown = set(data) - fields
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    known = {f.name for f in RunConfig.__dataclass_fields__.values()}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"config: unknown keys {sorted(unknown)}")
    kwargs = {}
    if "grid" in data:
        kwargs["grid"] = _build(GridCfg, data["grid"], "grid")
    if "charges" in data:
        if not isinstance(data["charges"], list):
            raise ConfigError("charges must be a list")
        kwargs["charges"] = tuple(
            _build(ChargeCfg, c, f"charges[{i}]") for i, c in enumerate(data["charges"])
        )
    if "cone" in data:
        cone = dict(data["cone"])
        if "axis" in cone:
            cone["axis"] = tuple(float(x) for x in cone["axis"])
        kwargs["cone"] = _build(ConeCfg, cone, "cone")
    if "homotopy" in data:
        kwargs["homotopy"] = _build(HomotopyCfg, data["homotopy"], "homotopy")
    if "tail_policy" in data:
        kwargs["tail_policy"] = _build(TailCfg, data["tail_policy"], "tail_policy")
    if "thresholds" in data:
        kwargs["thresholds"] = _build(ThresholdCfg, data["thresholds"], "thresholds")
    if "radii" in data:
        kwargs["radii"] = tuple(float(r) for r in data["radii"])
    for key in ("transporter_offset", "law_samples", "seed", "out_dir"):
        if key in data:
            kwargs[key] = data[key]
    return RunConfig(**kwargs).validate()


def load_config(path) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def save_config(config: RunConfig, path) -> None:
    Path(path).write_text(config.to_canonical_json())

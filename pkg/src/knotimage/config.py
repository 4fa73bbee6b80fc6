"""Run configuration: a plain-text ``key = value`` file plus overrides."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple

from .classify import DEFAULT_LABELS, POLICIES
from .kernelbank import DEFAULT_PRESET, KernelBank, default_bank, load_bank, select


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    kernels: Optional[str] = None  # kernel asset path; None = shipped bank
    subset: str = DEFAULT_PRESET  # preset name, "all", or comma-separated kernel names
    cycles: int = 4
    tau: float = 1.0
    samples: int = 64
    cap: int = 20
    jitter: str = "image_id"  # "image_id" or a fixed integer seed
    scoring: str = "count-as-negative"
    counting: str = "types"  # "types" or "instances"
    side: Optional[int] = None  # None = keep the cropped image's own side
    labels: Tuple[str, str] = DEFAULT_LABELS
    positive: str = DEFAULT_LABELS[0]

    def __post_init__(self):
        for name in ("cycles", "samples", "cap"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if not self.tau > 0:
            raise ConfigError("tau must be positive")
        if self.side is not None and self.side < 3:
            raise ConfigError("side must be at least 3")
        if self.scoring not in POLICIES:
            raise ConfigError(f"scoring must be one of {', '.join(POLICIES)}")
        if self.counting not in ("types", "instances"):
            raise ConfigError("counting must be 'types' or 'instances'")
        if self.jitter != "image_id":
            try:
                int(self.jitter)
            except ValueError:
                raise ConfigError("jitter must be 'image_id' or an integer seed") from None
        if len(self.labels) != 2 or self.labels[0] == self.labels[1]:
            raise ConfigError("labels must be two distinct names")
        if self.positive not in self.labels:
            raise ConfigError(f"positive label {self.positive!r} is not one of {list(self.labels)}")
        if self.kernels is not None and not Path(self.kernels).is_file():
            raise ConfigError(f"kernel asset {self.kernels!r} not found")

    @property
    def jitter_seed(self) -> Optional[int]:
        return None if self.jitter == "image_id" else int(self.jitter)

    @property
    def instances(self) -> bool:
        return self.counting == "instances"

    def full_bank(self) -> KernelBank:
        return default_bank() if self.kernels is None else load_bank(self.kernels)

    def bank(self) -> KernelBank:
        full = self.full_bank()
        if self.subset == "all":
            return full
        if self.subset in full.presets:
            return full.preset(self.subset)
        return select(full, [n.strip() for n in self.subset.split(",") if n.strip()])

    def to_text(self) -> str:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "labels":
                v = ",".join(v)
            elif v is None:
                v = "native" if f.name == "side" else "default"
            out.append(f"{f.name} = {v}")
        return "\n".join(out) + "\n"


def _convert(key: str, raw: str):
    raw = raw.strip()
    if key in ("cycles", "samples", "cap"):
        return int(raw)
    if key == "tau":
        return float(raw)
    if key == "side":
        return None if raw == "native" else int(raw)
    if key == "kernels":
        return None if raw in ("", "default") else raw
    if key == "labels":
        parts = tuple(p.strip() for p in raw.split(","))
        if len(parts) != 2:
            raise ConfigError("labels needs two comma-separated names")
        return parts
    return raw


KEYS = tuple(f.name for f in fields(Config))


def parse_config_text(text: str, source: str = "<config>") -> Dict[str, str]:
    values: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = raw
    return values


def make_config(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, str]] = None,
    base: Optional[Config] = None,
) -> Config:
    """Defaults, then the file at ``path``, then ``overrides`` (flags win)."""
    raw: Dict[str, str] = {}
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file {path!r} not found")
        raw.update(parse_config_text(p.read_text(), str(path)))
    for key, value in (overrides or {}).items():
        if key not in KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if value is not None:
            raw[key] = str(value)
    if "labels" in raw and "positive" not in raw:
        raw["positive"] = raw["labels"].split(",")[0].strip()
    try:
        kwargs = {k: _convert(k, v) for k, v in raw.items()}
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
    return replace(base or Config(), **kwargs)

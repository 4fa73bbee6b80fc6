"""The fixed bank of 3x3 kernels and named subsets of it."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

CATEGORIES = (
    "blur",
    "sharpen",
    "edge_enhancement",
    "edge_detection",
    "emboss",
    "sobel",
    "line_detection",
)

DEFAULT_PRESET = "default13"


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateName(ValueError):
    pass


class UnknownKernel(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class Kernel:
    name: str
    category: str
    matrix: np.ndarray

    def __post_init__(self):
        if not self.name:
            raise ValueError("kernel name must be non-empty")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown kernel category {self.category!r}")
        m = np.array(self.matrix, dtype=np.float64)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise ValueError(f"kernel {self.name!r} must be a finite 3x3 matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        return (
            isinstance(other, Kernel)
            and self.name == other.name
            and self.category == other.category
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.name, self.category, self.matrix.tobytes()))


@dataclass(frozen=True)
class KernelBank:
    """Ordered, uniquely named kernels plus optional named presets."""

    kernels: Tuple[Kernel, ...]
    presets: Dict[str, Tuple[str, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kernels", tuple(self.kernels))
        seen = set()
        for k in self.kernels:
            if k.name in seen:
                raise DuplicateName(k.name)
            seen.add(k.name)

    def __len__(self):
        return len(self.kernels)

    def __iter__(self):
        return iter(self.kernels)

    def __getitem__(self, name: str) -> Kernel:
        for k in self.kernels:
            if k.name == name:
                return k
        raise UnknownKernel(name)

    @property
    def names(self) -> List[str]:
        return [k.name for k in self.kernels]

    def counts(self) -> Dict[str, int]:
        out = {c: 0 for c in CATEGORIES}
        for k in self.kernels:
            out[k.category] += 1
        return out

    def preset(self, name: str) -> "KernelBank":
        if name not in self.presets:
            raise UnknownKernel(f"no preset named {name!r}")
        return select(self, self.presets[name])


def _number(tok: str) -> float:
    return float(Fraction(tok)) if "/" in tok else float(tok)


def parse_bank(text: str) -> KernelBank:
    """Parse the kernel asset format (see ``data/kernels.txt``)."""
    kernels: List[Kernel] = []
    presets: Dict[str, Tuple[str, ...]] = {}
    header: Optional[Tuple[str, str, int]] = None
    rows: List[List[float]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if header is None:
            if toks[0] == "preset":
                if len(toks) < 3:
                    raise ParseError("preset needs a name and at least one kernel", lineno)
                presets[toks[1]] = tuple(toks[2:])
                continue
            if len(toks) != 2:
                raise ParseError(f"expected 'name category', got {line!r}", lineno)
            if toks[1] not in CATEGORIES:
                raise ParseError(f"unknown category {toks[1]!r}", lineno)
            header = (toks[0], toks[1], lineno)
            rows = []
            continue
        if len(toks) != 3:
            raise ParseError(f"kernel row must have 3 numbers, got {len(toks)}", lineno)
        try:
            rows.append([_number(t) for t in toks])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad number in row {line!r}", lineno) from None
        if len(rows) == 3:
            name, cat, _ = header
            if any(k.name == name for k in kernels):
                raise DuplicateName(name)
            kernels.append(Kernel(name, cat, np.array(rows)))
            header = None
    if header is not None:
        raise ParseError(f"kernel {header[0]!r} has only {len(rows)} rows", header[2])
    bank = KernelBank(tuple(kernels), presets)
    for pname, names in presets.items():
        missing = [n for n in names if n not in bank.names]
        if missing:
            raise UnknownKernel(f"preset {pname!r} names unknown kernels {missing}")
    return bank


def load_bank(path: Union[str, Path]) -> KernelBank:
    return parse_bank(Path(path).read_text())


def default_asset_text() -> str:
    return resources.files("knotimage").joinpath("data/kernels.txt").read_text()


def asset_checksum(text: Optional[str] = None) -> str:
    """SHA-256 of the kernel asset (default: the shipped one)."""
    if text is None:
        text = default_asset_text()
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def default_bank() -> KernelBank:
    """The 28 shipped kernels in canonical order."""
    return parse_bank(default_asset_text())


def select(bank: KernelBank, names: Iterable[str]) -> KernelBank:
    """Sub-bank with the requested kernels, in the bank's own order."""
    wanted = set(names)
    missing = wanted.difference(bank.names)
    if missing:
        raise UnknownKernel(", ".join(sorted(missing)))
    return KernelBank(tuple(k for k in bank.kernels if k.name in wanted), dict(bank.presets))


def format_bank(bank: KernelBank) -> str:
    """Serialise ``bank`` in the asset format."""
    out = []
    for k in bank.kernels:
        out.append(f"{k.name} {k.category}")
        for row in k.matrix:
            out.append(" ".join(repr(float(x)) for x in row))
        out.append("")
    for pname, names in bank.presets.items():
        out.append(f"preset {pname} " + " ".join(names))
    return "\n".join(out) + "\n"

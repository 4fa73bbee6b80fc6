"""Knot names keyed by canonical HOMFLY strings."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Union

from .polynomial import HomflyPolynomial, canonical_string

UNKNOWN = "UNKNOWN"


class KnotTable:
    """Exact lookup from canonical polynomial string to knot name.

    Mirror images carry a ``*`` suffix.  Distinct knots sharing a
    polynomial are listed together, comma separated.
    """

    def __init__(self, entries: Dict[str, str]):
        for key, name in entries.items():
            if not name:
                raise ValueError(f"empty name for {key!r}")
        self.entries = dict(entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def lookup(self, p: Union[HomflyPolynomial, str]) -> str:
        key = p if isinstance(p, str) else canonical_string(p)
        return self.entries.get(key, UNKNOWN)

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "KnotTable":
        if path is None:
            text = resources.files("knotimage").joinpath("data/knot_table.tsv").read_text()
        else:
            text = Path(path).read_text()
        entries = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                key, name = line.split("\t")
            except ValueError:
                raise ValueError(f"line {lineno}: expected 'polynomial<TAB>name'") from None
            entries[key] = name.strip()
        return cls(entries)

    def dump(self, path: Union[str, Path]) -> None:
        lines = [f"{k}\t{v}" for k, v in self.entries.items()]
        Path(path).write_text("\n".join(lines) + "\n")


_default: Optional[KnotTable] = None


def default_table() -> KnotTable:
    global _default
    if _default is None:
        _default = KnotTable.load()
    return _default


def knot_name(p: Union[HomflyPolynomial, str], table: Optional[KnotTable] = None) -> str:
    """Knot name for ``p``, or ``UNKNOWN`` when the table has no entry."""
    return (table or default_table()).lookup(p)

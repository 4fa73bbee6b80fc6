"""Kernel efficacy (cluster separation), cycle-count and kernel-subset selection."""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .curve import build_curve
from .featurize import CoordinateSet
from .kernelbank import KernelBank, select
from .knot.invariant import DEFAULT_SAMPLES, min_crossings


class EmptyCluster(ValueError):
    pass


class NoFiniteD(ValueError):
    pass


@dataclass(frozen=True)
class ClusterStats:
    kernel: str
    centroid: Tuple[float, float, float]
    spread: float  # sum of distances to the centroid
    count: int


@dataclass(frozen=True)
class DRecord:
    kernel: str
    pair: str
    cycles: int
    d: float


def cluster_stats(coords, kernel: str = "") -> ClusterStats:
    pts = np.asarray(coords, dtype=np.float64).reshape(-1, 3)
    if len(pts) == 0:
        raise EmptyCluster(f"no points for kernel {kernel!r}")
    c = pts.mean(axis=0)
    spread = float(np.linalg.norm(pts - c, axis=1).sum())
    return ClusterStats(kernel, tuple(float(x) for x in c), spread, len(pts))


def d_metric(a: ClusterStats, b: ClusterStats) -> float:
    """Centroid distance over the summed spreads.

    Zero spreads give ``inf`` for distinct centroids and 0 for equal ones.
    """
    num = math.dist(a.centroid, b.centroid)
    den = a.spread + b.spread
    if den == 0:
        return math.inf if num > 0 else 0.0
    return num / den


def kernel_clusters(corpus: Sequence[CoordinateSet]) -> Dict[str, ClusterStats]:
    """One cluster per kernel, pooling that kernel's points over the corpus."""
    pooled: Dict[str, List[np.ndarray]] = {}
    for cs in corpus:
        for (name, _), p in zip(cs.provenance, cs.points):
            pooled.setdefault(name, []).append(p)
    return {name: cluster_stats(pts, name) for name, pts in pooled.items()}


def d_records(corpus: Sequence[CoordinateSet], cycles: int) -> List[DRecord]:
    """D for every unordered kernel pair, listed under both kernels.

    Kernels are ordered as in the first coordinate set, so each pair is
    emitted once per member (``kernel`` is that member, ``pair`` the other).
    """
    if not corpus:
        return []
    clusters = kernel_clusters(corpus)
    names = [n for n in corpus[0].kernel_names if n in clusters]
    out = []
    for a, b in combinations(names, 2):
        d = d_metric(clusters[a], clusters[b])
        out.append(DRecord(a, b, cycles, d))
        out.append(DRecord(b, a, cycles, d))
    return out


def median_finite(values: Sequence[float]) -> float:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        raise NoFiniteD("no finite D values")
    return float(statistics.median(finite))


def select_cycles(
    corpora: Mapping[int, Sequence[CoordinateSet]],
    candidates: Optional[Sequence[int]] = None,
) -> Tuple[int, List[DRecord]]:
    """Cycle count maximising the median finite D over kernel pairs.

    ``corpora`` maps each candidate cycle count to the corpus featurized
    with it.  Ties go to the smallest count.  Returns the choice and every
    per-pair record (each pair once).
    """
    cands = sorted(corpora if candidates is None else candidates)
    if not cands:
        raise ValueError("no candidate cycle counts")
    best: Optional[Tuple[float, int]] = None
    records: List[DRecord] = []
    for n in cands:
        recs = d_records(corpora[n], n)
        records.extend(recs)
        try:
            score = median_finite([r.d for r in recs[::2]])
        except NoFiniteD:
            continue
        if best is None or score > best[0]:
            best = (score, n)
    if best is None:
        raise NoFiniteD(f"no candidate in {cands} has a finite D")
    return best[1], records


def export_d_analysis(records: Sequence[DRecord], path) -> None:
    if not records:
        raise ValueError("no records to export")
    Path(path).write_text(format_d_analysis(records))


def format_d_analysis(records: Sequence[DRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kernel", "pair", "cycles", "D"])
    for r in records:
        w.writerow([r.kernel, r.pair, r.cycles, "inf" if math.isinf(r.d) else repr(float(r.d))])
    return buf.getvalue()


def mean_crossings(
    corpus: Sequence[CoordinateSet],
    names: Sequence[str],
    samples: int = DEFAULT_SAMPLES,
) -> float:
    total = 0
    for cs in corpus:
        total += min_crossings(build_curve(cs.subset(names)), samples)
    return total / len(corpus)


def select_kernels(
    corpus: Sequence[CoordinateSet],
    bank: KernelBank,
    target: int,
    samples: int = DEFAULT_SAMPLES,
    cost: Optional[Callable[[Sequence[CoordinateSet], Sequence[str]], float]] = None,
) -> KernelBank:
    """Greedy forward selection of ``target`` kernels.

    ``corpus`` holds coordinate sets featurized with every kernel of
    ``bank``; a subset's curve uses only its kernels' points.  Each step adds
    the kernel with the lowest corpus-mean crossing count; ties go to the
    kernel listed first in the bank.
    """
    if not 1 <= target <= len(bank):
        raise ValueError(f"target must be in 1..{len(bank)}, got {target}")
    if not corpus:
        raise ValueError("empty corpus")
    if cost is None:
        def cost(c, names):
            return mean_crossings(c, names, samples)
    chosen: List[str] = []
    for _ in range(target):
        best = None
        for name in bank.names:
            if name in chosen:
                continue
            value = cost(corpus, chosen + [name])
            if best is None or value < best[0]:
                best = (value, name)
        chosen.append(best[1])
    return select(bank, chosen)

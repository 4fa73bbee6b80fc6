"""HOMFLY polynomial by skein recursion to descending diagrams.

Convention::

    a^-1 P(L+) - a P(L-) = z P(L0),   P(unknot) = 1

so a split union with an extra unknot multiplies by ``(a^-1 - a) / z`` and
the mirror image maps ``a -> a^-1``.

Diagrams are handled as signed Gauss codes.  A visit is encoded as
``+(c + 1)`` when passing over crossing ``c`` and ``-(c + 1)`` when passing
under.  Each step removes Reidemeister I/II configurations, factors split
sub-diagrams, then walks the components from their base points.  The first
crossing that is met from below is resolved by the skein relation; if there
is none the diagram is descending and represents an unlink.

Moving base points and reversing every component leave the polynomial
unchanged, so before each step the base points and global orientation are
chosen to leave as few ascending crossings as possible.  Ties go to the
smallest memo key, which also lets isomorphic sub-diagrams share a cache
entry.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import Diagram
from .polynomial import HomflyPolynomial

DEFAULT_CAP = 20

Code = Tuple[Tuple[int, ...], ...]

ONE = HomflyPolynomial.one()
# (a^-1 - a) / z
DELTA = HomflyPolynomial({(-1, -1): 1, (1, -1): -1})


class CrossingCapExceeded(RuntimeError):
    def __init__(self, n_crossings: int, cap: int):
        super().__init__(f"diagram has {n_crossings} crossings, cap is {cap}")
        self.n_crossings = n_crossings
        self.cap = cap


def delta_power(k: int) -> HomflyPolynomial:
    """Polynomial of the ``k+1``-component unlink."""
    out = ONE
    for _ in range(k):
        out = out * DELTA
    return out


def encode(diagram: Diagram) -> Tuple[Code, Dict[int, int]]:
    comps = tuple(
        tuple((c + 1) * kind for c, kind in comp) for comp in diagram.components
    )
    signs = {c + 1: s for c, s in enumerate(diagram.signs)}
    return comps, signs


def homfly(diagram: Diagram, cap: int = DEFAULT_CAP) -> HomflyPolynomial:
    """HOMFLY polynomial of ``diagram``.

    Raises :class:`CrossingCapExceeded` when the diagram has more than
    ``cap`` crossings.
    """
    if diagram.n_crossings > cap:
        raise CrossingCapExceeded(diagram.n_crossings, cap)
    comps, signs = encode(diagram)
    if not comps:
        comps = ((),)
    return _Skein(signs).poly(comps)


def homfly_from_code(comps: Sequence[Sequence[int]], signs: Dict[int, int]) -> HomflyPolynomial:
    """HOMFLY from a raw signed Gauss code (1-based, ``+`` over)."""
    return _Skein(dict(signs)).poly(tuple(tuple(c) for c in comps))


class _Skein:
    def __init__(self, signs: Dict[int, int]):
        self.signs = signs
        self.memo: Dict[tuple, HomflyPolynomial] = {}

    def key(self, comps: Code, signs: Dict[int, int]) -> tuple:
        # Relabel crossings by first appearance so equal diagrams share a key.
        relabel: Dict[int, int] = {}
        out = []
        for comp in comps:
            row = []
            for v in comp:
                c = abs(v)
                if c not in relabel:
                    relabel[c] = len(relabel) + 1
                n = relabel[c]
                row.append((n, v > 0, signs[c]))
            out.append(tuple(row))
        return tuple(out)

    def _normalize(self, comps: Code, signs: Dict[int, int]) -> Tuple[Code, tuple]:
        # Greedy per component: best rotation given the crossings already seen.
        best = None
        for orient in (comps, _reverse(comps)):
            seen: set = set()
            chosen = []
            ascending = 0
            for comp in orient:
                pick = None
                for r in range(len(comp)):
                    rot = comp[r:] + comp[:r]
                    n_asc = _count_ascending(rot, seen)
                    if pick is None or n_asc < pick[0] or (
                        n_asc == pick[0] and self.key((rot,), signs) < self.key((pick[1],), signs)
                    ):
                        pick = (n_asc, rot)
                ascending += pick[0]
                chosen.append(pick[1])
                seen.update(abs(v) for v in pick[1])
            cand = tuple(chosen)
            key = self.key(cand, signs)
            if best is None or (ascending, key) < best[:2]:
                best = (ascending, key, cand)
        return best[2], best[1]

    def poly(self, comps: Code, signs: Optional[Dict[int, int]] = None) -> HomflyPolynomial:
        if signs is None:
            signs = self.signs
        comps = _simplify(comps)
        live = {abs(v) for comp in comps for v in comp}
        signs = {c: signs[c] for c in live}

        free = sum(1 for comp in comps if not comp)
        comps = tuple(comp for comp in comps if comp)
        if not comps:
            return delta_power(free - 1)

        parts = _split(comps)
        extra = free + len(parts) - 1
        result = delta_power(extra)
        for part in parts:
            result = result * self._connected(part, signs)
        return result

    def _connected(self, comps: Code, signs: Dict[int, int]) -> HomflyPolynomial:
        comps, k = self._normalize(comps, signs)
        hit = self.memo.get(k)
        if hit is not None:
            return hit
        c = _first_ascending(comps)
        if c is None:
            result = delta_power(len(comps) - 1)
        else:
            sign = signs[c]
            switched = tuple(tuple(-v if abs(v) == c else v for v in comp) for comp in comps)
            sw_signs = dict(signs)
            sw_signs[c] = -sign
            smoothed = _smooth(comps, c)
            p_switch = self.poly(switched, sw_signs)
            p_smooth = self.poly(smoothed, signs)
            if sign > 0:
                # P(L+) = a^2 P(L-) + a z P(L0)
                result = p_switch.shift(2, 0) + p_smooth.shift(1, 1)
            else:
                # P(L-) = a^-2 P(L+) - a^-1 z P(L0)
                result = p_switch.shift(-2, 0) + p_smooth.shift(-1, 1, -1)
        self.memo[k] = result
        return result


def _first_ascending(comps: Code) -> Optional[int]:
    seen = set()
    for comp in comps:
        for v in comp:
            c = abs(v)
            if c in seen:
                continue
            if v < 0:
                return c
            seen.add(c)
    return None


def _count_ascending(comp: Tuple[int, ...], seen: set) -> int:
    first = set()
    n = 0
    for v in comp:
        c = abs(v)
        if c in seen or c in first:
            continue
        first.add(c)
        if v < 0:
            n += 1
    return n


def _reverse(comps: Code) -> Code:
    # Reversing every strand keeps each crossing's sign.
    return tuple(tuple(reversed(comp)) for comp in comps)


def _smooth(comps: Code, c: int) -> Code:
    """Oriented smoothing at crossing ``c``."""
    where = [(ci, i) for ci, comp in enumerate(comps) for i, v in enumerate(comp) if abs(v) == c]
    (ca, p), (cb, q) = where
    if ca == cb:
        comp = comps[ca]
        first = comp[p + 1:q]
        second = comp[q + 1:] + comp[:p]
        rest = comps[:ca] + comps[ca + 1:]
        return rest + (first, second)
    a, b = comps[ca], comps[cb]
    merged = a[p + 1:] + a[:p] + b[q + 1:] + b[:q]
    rest = tuple(comp for i, comp in enumerate(comps) if i not in (ca, cb))
    return rest + (merged,)


def _remove(comps: Code, drop: set) -> Code:
    return tuple(tuple(v for v in comp if abs(v) not in drop) for comp in comps)


def _simplify(comps: Code) -> Code:
    """Remove Reidemeister I kinks and Reidemeister II bigons until stable."""
    while True:
        drop = _find_r1(comps)
        if drop is None:
            drop = _find_r2(comps)
        if drop is None:
            return comps
        comps = _remove(comps, drop)


def _find_r1(comps: Code):
    for comp in comps:
        n = len(comp)
        for i in range(n):
            if abs(comp[i]) == abs(comp[(i + 1) % n]) and n > 1:
                return {abs(comp[i])}
    return None


def _find_r2(comps: Code):
    # Consecutive visits (cyclic) on one strand, both over or both under.
    pairs: Dict[frozenset, List[int]] = {}
    for comp in comps:
        n = len(comp)
        if n < 2:
            continue
        for i in range(n):
            u, w = comp[i], comp[(i + 1) % n]
            if abs(u) == abs(w) or (u > 0) != (w > 0):
                continue
            key = frozenset((abs(u), abs(w)))
            pairs.setdefault(key, []).append(1 if u > 0 else -1)
            if n == 2:
                break
    for key, kinds in pairs.items():
        if 1 in kinds and -1 in kinds:
            return set(key)
    return None


def _split(comps: Code) -> List[Code]:
    """Group components into diagram-connected pieces."""
    n = len(comps)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: Dict[int, int] = {}
    for i, comp in enumerate(comps):
        for v in comp:
            c = abs(v)
            if c in owner:
                ra, rb = find(owner[c]), find(i)
                if ra != rb:
                    parent[ra] = rb
            else:
                owner[c] = i
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for i, comp in enumerate(comps):
        groups.setdefault(find(i), []).append(comp)
    return [tuple(g) for _, g in sorted(groups.items())]

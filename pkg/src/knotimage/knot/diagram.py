"""Combinatorial knot and link diagrams.

A diagram is stored as a signed Gauss code: one cyclic sequence of crossing
visits per component, each visit marked over or under, plus a sign per
crossing.  Projected curves carry their geometric crossing records as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

OVER = 1
UNDER = -1


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    """A transverse crossing of two projected edges.

    ``s`` is the parameter along the under edge, ``t`` along the over edge.
    """

    under_edge: int
    over_edge: int
    s: float
    t: float
    sign: int


@dataclass(frozen=True)
class Diagram:
    """Signed Gauss code, optionally with the geometry it came from.

    ``components`` holds one tuple per link component; each entry is a
    ``(crossing_index, OVER | UNDER)`` pair in traversal order.
    """

    components: Tuple[Tuple[Tuple[int, int], ...], ...]
    signs: Tuple[int, ...]
    crossings: Tuple[Crossing, ...] = ()
    n_edges: int = 0
    direction: Optional[Tuple[float, float, float]] = field(default=None, compare=False)

    def __post_init__(self):
        seen = {}
        for comp in self.components:
            for c, kind in comp:
                if kind not in (OVER, UNDER):
                    raise DiagramError(f"bad visit kind {kind!r}")
                if not 0 <= c < len(self.signs):
                    raise DiagramError(f"crossing index {c} out of range")
                seen.setdefault(c, []).append(kind)
        for c in range(len(self.signs)):
            kinds = seen.get(c)
            if kinds is None or sorted(kinds) != [UNDER, OVER]:
                raise DiagramError(f"crossing {c} must be visited once over and once under")
            if self.signs[c] not in (1, -1):
                raise DiagramError(f"crossing {c} has sign {self.signs[c]!r}")

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def gauss_code(self) -> List[List[int]]:
        """Signed Gauss code with 1-based labels: ``+k`` over, ``-k`` under."""
        return [[(c + 1) * kind for c, kind in comp] for comp in self.components]

    def mirror(self) -> "Diagram":
        """Swap every over/under, which negates every sign."""
        comps = tuple(tuple((c, -kind) for c, kind in comp) for comp in self.components)
        return Diagram(comps, tuple(-s for s in self.signs))

    @classmethod
    def from_gauss(cls, code: Sequence[Sequence[int]], signs: Sequence[int]) -> "Diagram":
        comps = tuple(
            tuple((abs(v) - 1, OVER if v > 0 else UNDER) for v in comp) for comp in code
        )
        return cls(comps, tuple(int(s) for s in signs))

    @classmethod
    def from_pd(cls, pd: Sequence[Sequence[int]]) -> "Diagram":
        """Build from a planar-diagram code.

        Each crossing ``[i, j, k, l]`` lists its four edge labels
        counterclockwise starting from the incoming under edge, so the under
        strand runs ``i -> k``.  The over strand runs ``l -> j`` at a positive
        crossing and ``j -> l`` at a negative one; its direction is found by
        walking each component through the crossings.
        """
        pd = [tuple(int(x) for x in x4) for x4 in pd]
        if not pd:
            raise DiagramError("empty PD code")
        slots = {}
        for n, x4 in enumerate(pd):
            for pos, e in enumerate(x4):
                slots.setdefault(e, []).append((n, pos))
        for e, where in slots.items():
            if len(where) != 2:
                raise DiagramError(f"edge {e} occurs {len(where)} times in PD code")

        def far_end(e, n, pos):
            # the slot at the other end of edge e, seen from slot (n, pos)
            a, b = slots[e]
            return b if a == (n, pos) else a

        entered = set()  # (crossing, slot) pairs through which a strand enters
        comps = []
        done_edges = set()
        starts = [(x4[0], n) for n, x4 in enumerate(pd)]
        # components seen only from over slots come last; orient them by labels
        starts += [(e, None) for e in sorted(slots)]
        for e0, n0 in starts:
            if e0 in done_edges:
                continue
            if n0 is not None:
                n, pos = n0, 0
            else:
                # pick the slot whose opposite edge is the label successor
                (n, pos), (m, q) = slots[e0]
                if pd[m][(q + 2) % 4] == e0 + 1 and pd[n][(pos + 2) % 4] != e0 + 1:
                    n, pos = m, q
            comp = []
            e = e0
            while e not in done_edges:
                done_edges.add(e)
                entered.add((n, pos))
                comp.append((n, UNDER if pos in (0, 2) else OVER))
                out = pd[n][(pos + 2) % 4]
                e = out
                n, pos = far_end(out, n, (pos + 2) % 4)
            comps.append(tuple(comp))
        signs = []
        for n in range(len(pd)):
            if (n, 2) in entered:
                raise DiagramError(f"crossing {n}: under strand enters at slot 2")
            signs.append(1 if (n, 3) in entered else -1)
        return cls(tuple(comps), tuple(signs))

    def to_pd(self) -> List[Tuple[int, int, int, int]]:
        """Planar-diagram code with edges numbered 1.. along each component."""
        edge_in = {}
        edge_out = {}
        label = 0
        for comp in self.components:
            if not comp:
                continue
            first = label + 1
            m = len(comp)
            for pos, (c, kind) in enumerate(comp):
                e_in = first + pos
                e_out = first + (pos + 1) % m
                edge_in[(c, kind)] = e_in
                edge_out[(c, kind)] = e_out
            label += m
        pd = []
        for c, sign in enumerate(self.signs):
            i, k = edge_in[(c, UNDER)], edge_out[(c, UNDER)]
            o_in, o_out = edge_in[(c, OVER)], edge_out[(c, OVER)]
            if sign > 0:
                pd.append((i, o_out, k, o_in))
            else:
                pd.append((i, o_in, k, o_out))
        return pd



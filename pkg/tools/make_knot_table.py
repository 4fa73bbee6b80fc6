"""Regenerate ``src/knotimage/data/knot_table.tsv``.

Knots are built from classical constructions rather than copied from a
database: two-bridge knots from their Conway notation as 4-plats, torus
knots as braid closures and two pretzel knots as 6-plats.  Every polynomial
is computed by the package's own engine and checked against the knot
determinant ``|P(a=1, z=2i)|``.

Chirality: the unstarred name is the diagram built with positive Conway
coefficients, flipped as a whole so that ``3_1`` is the trefoil whose
polynomial has positive ``a`` exponents.  Mirrors get a ``*`` suffix.
Amphichiral knots appear once.  Knots sharing a polynomial are listed
together, comma separated.

Usage: python3 tools/make_knot_table.py [output]
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from knotimage.knot import Diagram, canonical_string, homfly
from knotimage.knot.table import KnotTable

# Two-bridge knots by Conway notation.
RATIONAL = {
    "3_1": [3],
    "4_1": [2, 2],
    "5_1": [5],
    "5_2": [3, 2],
    "6_1": [4, 2],
    "6_2": [3, 1, 2],
    "6_3": [2, 1, 1, 2],
    "7_1": [7],
    "7_2": [5, 2],
    "7_3": [4, 3],
    "7_4": [3, 1, 3],
    "7_5": [3, 2, 2],
    "7_6": [2, 2, 1, 2],
    "7_7": [2, 1, 1, 1, 2],
    "8_1": [6, 2],
    "8_2": [5, 1, 2],
    "8_3": [4, 4],
    "8_4": [4, 1, 3],
    "8_6": [3, 3, 2],
    "8_7": [4, 1, 1, 2],
    "8_8": [2, 3, 1, 2],
    "8_9": [3, 1, 1, 3],
    "8_11": [3, 2, 1, 2],
    "8_12": [2, 2, 2, 2],
    "8_13": [3, 1, 1, 1, 2],
    "8_14": [2, 2, 1, 1, 2],
    "9_1": [9],
    "9_2": [7, 2],
    "9_3": [6, 3],
    "9_4": [5, 4],
    "9_5": [5, 1, 3],
    "9_6": [5, 2, 2],
    "9_7": [3, 4, 2],
    "9_8": [2, 4, 1, 2],
    "9_9": [4, 2, 3],
    "9_10": [3, 3, 3],
    "9_11": [4, 1, 2, 2],
    "9_12": [4, 2, 1, 2],
    "9_13": [3, 2, 1, 3],
    "9_14": [4, 1, 1, 1, 2],
    "9_15": [2, 3, 2, 2],
    "9_17": [2, 1, 3, 1, 2],
    "9_18": [3, 2, 2, 2],
    "9_19": [2, 3, 1, 1, 2],
    "9_20": [3, 1, 2, 1, 2],
    "9_21": [3, 1, 1, 2, 2],
    "9_23": [2, 2, 1, 2, 2],
    "9_26": [3, 1, 1, 1, 1, 2],
    "9_27": [2, 1, 2, 1, 1, 2],
    "9_31": [2, 1, 1, 1, 1, 1, 2],
}

# (strands, braid word) closed as a braid; all crossings of one handedness.
TORUS = {
    "8_19": (3, [1, 2] * 4),
    "10_124": (3, [1, 2] * 5),
}

PRETZEL = {
    "8_5": (3, 3, 2),
    "9_35": (3, 3, 3),
}

# Determinants of the non-rational entries.
# The only amphichiral knots among the entries; HOMFLY tells every other
# entry from its mirror.
AMPHICHIRAL = {"4_1", "6_3", "8_3", "8_9", "8_12"}

DETERMINANT = {"8_19": 3, "10_124": 1, "8_5": 21, "9_35": 27}


def _walk(n_pos, word, top, bottom, closed_braid):
    """Gauss code and signs of a braid diagram closed by caps or as a braid.

    ``word`` is a list of ``(i, e)``: generator between 0-based positions
    ``i`` and ``i + 1``.  For ``e = +1`` the strand moving left to right
    (read downwards) passes over.  ``top`` / ``bottom`` map a position to
    its cap partner.
    """
    m = len(word)
    visits = []
    dirs = {}
    pos, level, down = 0, 0, True
    start = (pos, level, down)
    for _ in range(4 * m + 4 * n_pos + 8):
        if down:
            if level == m:
                if closed_braid:
                    level = 0
                else:
                    pos, down = bottom[pos], False
                if (pos, level, down) == start:
                    break
                continue
            i, e = word[level]
            if pos in (i, i + 1):
                right = pos == i  # moving left to right
                new = i + 1 if right else i
                over = right == (e > 0)
                vec = (1.0 if right else -1.0, -1.0)
                visits.append((level, over))
                dirs.setdefault(level, {})[over] = vec
                pos = new
            level += 1
        else:
            if level == 0:
                pos, down = top[pos], True
                if (pos, level, down) == start:
                    break
                continue
            i, e = word[level - 1]
            if pos in (i, i + 1):
                # moving up from lower position ``pos`` to the other one
                right = pos == i
                new = i + 1 if right else i
                # the same physical strand read downwards runs the other way
                over = (not right) == (e > 0)
                vec = (1.0 if right else -1.0, 1.0)
                visits.append((level - 1, over))
                dirs.setdefault(level - 1, {})[over] = vec
                pos = new
            level -= 1
        if (pos, level, down) == start:
            break
    if len(visits) != 2 * m:
        raise ValueError("diagram is not a single component")
    code = [[(c + 1) * (1 if over else -1) for c, over in visits]]
    signs = []
    for c in range(m):
        (ox, oy), (ux, uy) = dirs[c][True], dirs[c][False]
        signs.append(1 if ox * uy - oy * ux > 0 else -1)
    return Diagram.from_gauss(code, signs)


def rational(coeffs):
    """4-plat of the Conway notation ``coeffs`` (odd length form)."""
    a = list(coeffs)
    if len(a) % 2 == 0:
        a[-1] -= 1
        a.append(1)
    word = []
    for k, n in enumerate(a):
        gen = 1 if k % 2 == 0 else 0
        e = 1 if k % 2 == 0 else -1
        word += [(gen, e)] * n
    caps = {0: 1, 1: 0, 2: 3, 3: 2}
    return _walk(4, word, caps, caps, False)


def torus(strands, gens):
    return _walk(strands, [(g - 1, 1) for g in gens], None, None, True)


def pretzel(p):
    word = []
    for col, n in enumerate(p):
        word += [(2 * col, 1)] * n
    caps = {1: 2, 2: 1, 3: 4, 4: 3, 0: 5, 5: 0}
    return _walk(6, word, caps, caps, False)


def fraction(coeffs):
    x = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        x = c + 1 / x
    return x


def _left(p):
    return min(a for (a, _), _c in p.sorted_terms()) < 0


def determinant(p):
    return abs(round(abs(p.evaluate(1.0, 2j))))


def build():
    diagrams = {}
    expected = {}
    for name, c in RATIONAL.items():
        diagrams[name] = rational(c)
        expected[name] = fraction(c).numerator
    for name, (s, g) in TORUS.items():
        diagrams[name] = torus(s, g)
    for name, p in PRETZEL.items():
        diagrams[name] = pretzel(p)
    expected.update(DETERMINANT)

    polys = {name: homfly(d, cap=40) for name, d in diagrams.items()}
    # orient so that 3_1 has positive a exponents
    if _left(polys["3_1"]):
        polys = {k: p.mirror() for k, p in polys.items()}
    for name, p in polys.items():
        if determinant(p) != expected[name]:
            raise SystemExit(f"{name}: determinant {determinant(p)}, expected {expected[name]}")
    # torus knots: take the positive braid closure, like the unstarred 3_1
    for name in list(TORUS):
        if _left(polys[name]):
            polys[name] = polys[name].mirror()

    amphi = {k for k, p in polys.items() if p == p.mirror()}
    if amphi != AMPHICHIRAL:
        raise SystemExit(f"amphichiral entries {sorted(amphi)}, expected {sorted(AMPHICHIRAL)}")

    names = {}
    for name, p in polys.items():
        for key, label in ((canonical_string(p), name), (canonical_string(p.mirror()), name + "*")):
            if label.endswith("*") and key == canonical_string(p):
                continue  # amphichiral
            names.setdefault(key, []).append(label)
    entries = {"1": "0_1"}
    for key, labels in names.items():
        entries[key] = ",".join(labels)
    return KnotTable(entries)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    default = Path(__file__).resolve().parents[1] / "src/knotimage/data/knot_table.tsv"
    out = Path(argv[0]) if argv else default
    table = build()
    table.dump(out)
    print(f"wrote {len(table)} entries to {out}")


if __name__ == "__main__":
    main()

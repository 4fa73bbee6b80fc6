"""Knot diagrams, projection and the HOMFLY polynomial."""

from .diagram import OVER, UNDER, Crossing, Diagram, DiagramError
from .homfly import DEFAULT_CAP, CrossingCapExceeded, homfly
from .invariant import InvariantResult, curve_invariant, curve_invariant_detail, min_crossings, reduce_curve
from .polynomial import HomflyPolynomial, canonical_string, parse_polynomial
from .projection import (
    EPS_GP,
    DegenerateProjection,
    NoValidDirection,
    choose_direction,
    fibonacci_directions,
    project,
    rank_directions,
)
from .table import UNKNOWN, KnotTable, default_table, knot_name

__all__ = [
    "OVER", "UNDER", "Crossing", "Diagram", "DiagramError",
    "DEFAULT_CAP", "CrossingCapExceeded", "homfly",
    "InvariantResult", "curve_invariant", "curve_invariant_detail", "min_crossings", "reduce_curve",
    "HomflyPolynomial", "canonical_string", "parse_polynomial",
    "EPS_GP", "DegenerateProjection", "NoValidDirection", "choose_direction",
    "fibonacci_directions", "project", "rank_directions",
    "UNKNOWN", "KnotTable", "default_table", "knot_name",
]

"""Polynomial-list binary classifier and its evaluation metrics."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

DEFAULT_LABELS = ("fracture", "no_fracture")
AMBIGUOUS = "AMBIGUOUS"
UNCLASSIFIED = "UNCLASSIFIED"
POLICIES = ("count-as-negative", "exclude")


class BadLabelSet(ValueError):
    pass


class EmptyClass(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PolyClassModel:
    """Per-class polynomial lists with occurrence counts."""

    labels: Tuple[str, str]
    counts: Mapping[str, Mapping[str, int]]

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(labels) != 2 or labels[0] == labels[1]:
            raise BadLabelSet(f"need exactly two distinct labels, got {list(labels)}")
        counts = {}
        for lab in labels:
            per = dict(self.counts.get(lab, {}))
            if any(c < 1 for c in per.values()):
                raise ValueError(f"class {lab!r} has a non-positive count")
            counts[lab] = per
        extra = set(self.counts).difference(labels)
        if extra:
            raise BadLabelSet(f"counts for unknown labels {sorted(extra)}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "counts", counts)

    def polynomials(self, label: str) -> frozenset:
        return frozenset(self.counts[label])

    def other(self, label: str) -> str:
        a, b = self.labels
        if label == a:
            return b
        if label == b:
            return a
        raise BadLabelSet(f"unknown label {label!r}")

    def count(self, label: str, p: str) -> int:
        return self.counts[label].get(p, 0)

    @property
    def shared(self) -> frozenset:
        a, b = self.labels
        return self.polynomials(a) & self.polynomials(b)


def train(
    labelled: Iterable[Tuple[str, str]],
    labels: Optional[Sequence[str]] = None,
) -> PolyClassModel:
    """Collect the polynomial list of each class.

    ``labels`` fixes the two class names; by default the two distinct labels
    present are used, in sorted order.
    """
    items = list(labelled)
    if not items:
        raise ValueError("no training examples")
    present = sorted({lab for _, lab in items})
    if labels is None:
        if len(present) != 2:
            raise BadLabelSet(f"need exactly two labels, found {present}")
        labels = present
    labels = tuple(labels)
    if len(labels) != 2 or labels[0] == labels[1]:
        raise BadLabelSet(f"need exactly two distinct labels, got {list(labels)}")
    unknown = set(present).difference(labels)
    if unknown:
        raise BadLabelSet(f"labels {sorted(unknown)} are not in {list(labels)}")
    counts: Dict[str, Counter] = {lab: Counter() for lab in labels}
    for p, lab in items:
        counts[lab][p] += 1
    return PolyClassModel(labels, {lab: dict(sorted(c.items())) for lab, c in counts.items()})


def predict(model: PolyClassModel, p: str) -> str:
    a, b = model.labels
    in_a = p in model.counts[a]
    in_b = p in model.counts[b]
    if in_a and in_b:
        return AMBIGUOUS
    if in_a:
        return a
    if in_b:
        return b
    return UNCLASSIFIED


def class_sizes(model: PolyClassModel, instances: bool = False) -> Tuple[int, int, int]:
    """``(K_a, K_b, K_ab)`` for the model's labels in order.

    By default these count distinct polynomials.  With ``instances`` they
    count images: ``K_ab`` is then the number of images, from either class,
    whose polynomial appears in both classes.
    """
    a, b = model.labels
    shared = model.shared
    if not instances:
        return len(model.counts[a]), len(model.counts[b]), len(shared)
    ka = sum(model.counts[a].values())
    kb = sum(model.counts[b].values())
    kab = sum(model.counts[a][p] + model.counts[b][p] for p in shared)
    return ka, kb, kab


def knot_precision(model: PolyClassModel, label: str, instances: bool = False) -> float:
    """``(K_c - K_shared) / K_c`` for class ``label``.

    Counts distinct polynomials unless ``instances`` is set, in which case
    both terms count images of class ``label`` only.
    """
    model.other(label)  # validates the label
    if instances:
        kc = sum(model.counts[label].values())
        shared = sum(model.counts[label][p] for p in model.shared)
    else:
        kc = len(model.counts[label])
        shared = len(model.shared)
    if kc == 0:
        raise EmptyClass(f"class {label!r} has no examples")
    return (kc - shared) / kc


@dataclass(frozen=True)
class MetricsReport:
    positive: str
    policy: str
    tp: int
    fp: int
    fn: int
    tn: int
    recall: float
    precision: float
    f1: float
    ambiguous: int
    unclassified: int
    knot_precision: Dict[str, float] = field(default_factory=dict)
    k: Dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "positive": self.positive,
            "policy": self.policy,
            "confusion": {"TP": self.tp, "FP": self.fp, "FN": self.fn, "TN": self.tn},
            "recall": self.recall,
            "precision": self.precision,
            "f1": self.f1,
            "ambiguous": self.ambiguous,
            "unclassified": self.unclassified,
            "knot_precision": dict(self.knot_precision),
            "K": dict(self.k),
        }


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def confusion_metrics(
    preds: Sequence[str],
    truths: Sequence[str],
    positive: str,
    policy: str = "count-as-negative",
) -> MetricsReport:
    """Recall, precision and F1 for ``positive`` against the rest.

    AMBIGUOUS and UNCLASSIFIED predictions are either treated as negative
    predictions (``count-as-negative``) or dropped (``exclude``); both are
    tallied in the report either way.  Undefined ratios are reported as 0.
    """
    if len(preds) != len(truths):
        raise LengthMismatch(f"{len(preds)} predictions for {len(truths)} truths")
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    tp = fp = fn = tn = amb = unc = 0
    for p, t in zip(preds, truths):
        if p == AMBIGUOUS:
            amb += 1
        elif p == UNCLASSIFIED:
            unc += 1
        if p in (AMBIGUOUS, UNCLASSIFIED) and policy == "exclude":
            continue
        pos_pred = p == positive
        pos_true = t == positive
        if pos_pred and pos_true:
            tp += 1
        elif pos_pred:
            fp += 1
        elif pos_true:
            fn += 1
        else:
            tn += 1
    recall = _ratio(tp, tp + fn)
    precision = _ratio(tp, tp + fp)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return MetricsReport(positive, policy, tp, fp, fn, tn, recall, precision, f1, amb, unc)


def evaluate(
    model: PolyClassModel,
    polys: Sequence[str],
    truths: Sequence[str],
    positive: Optional[str] = None,
    policy: str = "count-as-negative",
    instances: bool = False,
) -> MetricsReport:
    """Confusion metrics of ``model`` on ``polys`` plus both knot precisions."""
    positive = model.labels[0] if positive is None else positive
    model.other(positive)
    preds = [predict(model, p) for p in polys]
    rep = confusion_metrics(preds, truths, positive, policy)
    a, b = model.labels
    ka, kb, kab = class_sizes(model, instances)
    kp = {}
    for lab in model.labels:
        try:
            kp[lab] = knot_precision(model, lab, instances)
        except EmptyClass:
            kp[lab] = float("nan")
    return MetricsReport(
        rep.positive, rep.policy, rep.tp, rep.fp, rep.fn, rep.tn, rep.recall, rep.precision,
        rep.f1, rep.ambiguous, rep.unclassified, kp, {a: ka, b: kb, "shared": kab},
    )


# -- persistence --------------------------------------------------------------

def model_to_json(model: PolyClassModel) -> str:
    doc = {
        "labels": list(model.labels),
        "classes": {
            lab: [{"polynomial": p, "count": c} for p, c in sorted(model.counts[lab].items())]
            for lab in model.labels
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def model_from_json(text: str) -> PolyClassModel:
    doc = json.loads(text)
    labels = tuple(doc["labels"])
    counts = {
        lab: {e["polynomial"]: int(e["count"]) for e in doc["classes"].get(lab, [])}
        for lab in labels
    }
    return PolyClassModel(labels, counts)


def metrics_to_json(rep: MetricsReport) -> str:
    return json.dumps(rep.as_dict(), indent=2) + "\n"


def metrics_to_csv(rep: MetricsReport) -> str:
    """Flat ``metric,value`` table."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "value"])
    rows: List[Tuple[str, object]] = [
        ("positive", rep.positive),
        ("policy", rep.policy),
        ("TP", rep.tp),
        ("FP", rep.fp),
        ("FN", rep.fn),
        ("TN", rep.tn),
        ("recall", repr(rep.recall)),
        ("precision", repr(rep.precision)),
        ("f1", repr(rep.f1)),
        ("ambiguous", rep.ambiguous),
        ("unclassified", rep.unclassified),
    ]
    rows += [(f"knot_precision[{lab}]", repr(v)) for lab, v in rep.knot_precision.items()]
    rows += [(f"K[{lab}]", v) for lab, v in rep.k.items()]
    w.writerows(rows)
    return buf.getvalue()

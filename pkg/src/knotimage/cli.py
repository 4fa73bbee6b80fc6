"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 data or processing
error.  Every output file is written to a temporary sibling and renamed into
place.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .classify import (
    evaluate as evaluate_model,
    metrics_to_csv,
    metrics_to_json,
    model_from_json,
    model_to_json,
    predict,
    train as train_model,
)
from .config import KEYS, Config, ConfigError, make_config
from .curve import build_curve
from .featurize import (
    coordinate_record,
    dump_records,
    featurize_gray,
    read_records,
    record_to_coordinates,
)
from .imageio import apply_colormap, default_lut, load_gray, load_lut, png_bytes
from .knot import canonical_string, curve_invariant_detail, knot_name
from .selection import format_d_analysis, select_cycles, select_kernels
from .synth import SynthParams, read_manifest, synth_dataset

COMMANDS = (
    "featurize", "knot", "train", "classify", "evaluate",
    "select-kernels", "select-cycles", "synth", "colormap",
)


class DataError(Exception):
    """Processing failure; reported with exit code 2."""


class UsageError(Exception):
    pass


# -- helpers --------------------------------------------------------------------

def write_atomic(path, data) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data.encode("utf-8") if isinstance(data, str) else data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def list_images(root) -> List[Tuple[str, Path]]:
    """``(image_id, path)`` for every PNG under ``root``, sorted by id."""
    root = Path(root)
    if not root.is_dir():
        raise DataError(f"image directory {str(root)!r} not found")
    out = []
    for p in root.rglob("*"):
        if p.is_file() and p.suffix.lower() == ".png":
            out.append((p.relative_to(root).as_posix(), p))
    out.sort()
    return out


def manifest_labels(path) -> Dict[str, str]:
    try:
        rows = read_manifest(path)
    except FileNotFoundError:
        raise DataError(f"manifest {str(path)!r} not found") from None
    except KeyError as exc:
        raise DataError(f"manifest {str(path)!r} lacks column {exc}") from None
    return dict(rows)


def read_polynomials(path) -> List[dict]:
    try:
        return read_records(path)
    except FileNotFoundError:
        raise DataError(f"polynomial file {str(path)!r} not found") from None


# -- pipeline stages --------------------------------------------------------------

def featurize_images(images: Sequence[Tuple[str, Path]], cfg: Config) -> str:
    bank = cfg.bank()
    lut = default_lut()
    records = []
    for image_id, path in images:
        try:
            gray = load_gray(path)
            coords, schedule = featurize_gray(gray, lut, bank, cfg.cycles, cfg.tau, cfg.side, image_id)
        except (OSError, ValueError) as exc:
            raise DataError(f"featurize: {image_id}: {exc}") from None
        records.append(coordinate_record(coords, schedule, cfg.tau))
    return dump_records(records)


def polynomial_records(coord_records: Sequence[dict], cfg: Config) -> str:
    out = []
    for rec in coord_records:
        image_id = rec.get("image_id", "?")
        try:
            coords = record_to_coordinates(rec)
            curve = build_curve(coords, seed=cfg.jitter_seed)
            res = curve_invariant_detail(curve, cfg.samples, cfg.cap)
        except (KeyError, ValueError, RuntimeError) as exc:
            raise DataError(f"knot: {image_id}: {exc}") from None
        key = canonical_string(res.polynomial)
        out.append({
            "image_id": image_id,
            "polynomial": key,
            "knot": knot_name(key),
            "direction": None if res.direction is None else list(res.direction),
            "crossings": res.n_crossings,
        })
    return "".join(json.dumps(r) + "\n" for r in out)


def labelled_polynomials(poly_records: Sequence[dict], labels: Dict[str, str]) -> List[Tuple[str, str, str]]:
    """``(image_id, polynomial, label)`` for every record, in record order."""
    out = []
    for rec in poly_records:
        image_id = rec["image_id"]
        if image_id not in labels:
            raise DataError(f"{image_id}: no label in manifest")
        out.append((image_id, rec["polynomial"], labels[image_id]))
    return out


def train_text(poly_records: Sequence[dict], labels: Dict[str, str], cfg: Config) -> str:
    rows = labelled_polynomials(poly_records, labels)
    try:
        model = train_model([(p, lab) for _, p, lab in rows], cfg.labels)
    except ValueError as exc:
        raise DataError(f"train: {exc}") from None
    return model_to_json(model)


def evaluate_texts(model_text: str, poly_records, labels, cfg: Config) -> Tuple[str, str]:
    model = model_from_json(model_text)
    rows = labelled_polynomials(poly_records, labels)
    rep = evaluate_model(
        model, [p for _, p, _ in rows], [lab for _, _, lab in rows],
        cfg.positive, cfg.scoring, cfg.instances,
    )
    return metrics_to_json(rep), metrics_to_csv(rep)


# -- subcommands -------------------------------------------------------------------

def cmd_featurize(args, cfg):
    write_atomic(args.output, featurize_images(list_images(args.input), cfg))


def cmd_knot(args, cfg):
    try:
        records = read_records(args.input)
    except FileNotFoundError:
        raise DataError(f"coordinate file {args.input!r} not found") from None
    except ValueError as exc:
        raise DataError(str(exc)) from None
    write_atomic(args.output, polynomial_records(records, cfg))


def cmd_train(args, cfg):
    polys = read_polynomials(args.polynomials)
    write_atomic(args.output, train_text(polys, manifest_labels(args.manifest), cfg))


def _load_model_text(path) -> str:
    try:
        text = Path(path).read_text()
        model_from_json(text)
    except FileNotFoundError:
        raise DataError(f"model file {str(path)!r} not found") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise DataError(f"model file {str(path)!r}: {exc}") from None
    return text


def cmd_classify(args, cfg):
    model = model_from_json(_load_model_text(args.model))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["image_id", "polynomial", "prediction"])
    for rec in read_polynomials(args.polynomials):
        w.writerow([rec["image_id"], rec["polynomial"], predict(model, rec["polynomial"])])
    write_atomic(args.output, buf.getvalue())


def cmd_evaluate(args, cfg):
    if args.images is not None:
        if args.workdir is None:
            raise UsageError("--images needs --workdir")
        work = Path(args.workdir)
        manifest = args.manifest or str(Path(args.images) / "manifest.csv")
        labels = manifest_labels(manifest)
        write_atomic(work / "coordinates.jsonl", featurize_images(list_images(args.images), cfg))
        write_atomic(work / "polynomials.jsonl", polynomial_records(read_records(work / "coordinates.jsonl"), cfg))
        polys = read_records(work / "polynomials.jsonl")
        write_atomic(work / "model.json", train_text(polys, labels, cfg))
        model_text = (work / "model.json").read_text()
        output = args.output or str(work / "metrics.json")
        csv_out = args.csv or str(work / "metrics.csv")
    else:
        if args.polynomials is None or args.manifest is None:
            raise UsageError("evaluate needs --polynomials and --manifest, or --images")
        if args.output is None:
            raise UsageError("evaluate needs --output")
        labels = manifest_labels(args.manifest)
        polys = read_polynomials(args.polynomials)
        if args.model is not None:
            model_text = _load_model_text(args.model)
        else:
            model_text = train_text(polys, labels, cfg)
        output, csv_out = args.output, args.csv
    metrics_json, metrics_csv = evaluate_texts(model_text, polys, labels, cfg)
    write_atomic(output, metrics_json)
    if csv_out:
        write_atomic(csv_out, metrics_csv)
    sys.stdout.write(metrics_json)


def _featurize_corpus(images, cfg, cycles=None, subset="all"):
    bank = cfg.full_bank() if subset == "all" else cfg.bank()
    lut = default_lut()
    out = []
    for image_id, path in images:
        try:
            cs, _ = featurize_gray(load_gray(path), lut, bank, cycles or cfg.cycles, cfg.tau, cfg.side, image_id)
        except (OSError, ValueError) as exc:
            raise DataError(f"featurize: {image_id}: {exc}") from None
        out.append(cs)
    return out


def cmd_select_kernels(args, cfg):
    images = list_images(args.images)
    if not images:
        raise DataError(f"no PNG images under {args.images!r}")
    bank = cfg.full_bank()
    if not 1 <= args.target <= len(bank):
        raise UsageError(f"--target must be in 1..{len(bank)}")
    corpus = _featurize_corpus(images, cfg)
    try:
        chosen = select_kernels(corpus, bank, args.target, cfg.samples)
    except ValueError as exc:
        raise DataError(f"select-kernels: {exc}") from None
    line = f"preset {args.name} " + " ".join(chosen.names) + "\n"
    if args.output:
        write_atomic(args.output, line)
    sys.stdout.write(line)


def cmd_select_cycles(args, cfg):
    images = list_images(args.images)
    if not images:
        raise DataError(f"no PNG images under {args.images!r}")
    try:
        cands = sorted({int(x) for x in args.candidates.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"bad --candidates {args.candidates!r}") from None
    if not cands or cands[0] < 1:
        raise UsageError("--candidates must list positive integers")
    corpora = {n: _featurize_corpus(images, cfg, cycles=n, subset=cfg.subset) for n in cands}
    try:
        best, records = select_cycles(corpora, cands)
    except ValueError as exc:
        raise DataError(f"select-cycles: {exc}") from None
    if args.output:
        write_atomic(args.output, format_d_analysis(records))
    print(best)


def cmd_synth(args, cfg):
    try:
        p = SynthParams(args.count, args.side, args.ridges, args.gap_min, args.gap_max, args.noise, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        rows = synth_dataset(p, args.outdir)
    except OSError as exc:
        raise DataError(f"synth: {exc}") from None
    print(f"wrote {len(rows)} images to {args.outdir}")


def cmd_colormap(args, cfg):
    try:
        gray = load_gray(args.input)
        lut = load_lut(args.lut) if args.lut else default_lut()
    except (OSError, ValueError) as exc:
        raise DataError(f"colormap: {exc}") from None
    write_atomic(args.output, png_bytes(apply_colormap(gray, lut)))


def cmd_show_config(args, cfg):
    sys.stdout.write(cfg.to_text())


HANDLERS = {
    "featurize": cmd_featurize,
    "knot": cmd_knot,
    "train": cmd_train,
    "classify": cmd_classify,
    "evaluate": cmd_evaluate,
    "select-kernels": cmd_select_kernels,
    "select-cycles": cmd_select_cycles,
    "synth": cmd_synth,
    "colormap": cmd_colormap,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="plain-text 'key = value' configuration file")
    for key in KEYS:
        common.add_argument(f"--{key}", dest=f"cfg_{key}", metavar=key.upper(),
                            help=f"override config key '{key}'")

    parser = _Parser(prog="knotimage", description="Topological image classification.")
    parser.add_argument("--version", action="version", version=f"knotimage {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("featurize", parents=[common], help="images to coordinate records")
    p.add_argument("--input", required=True, help="directory of PNG images")
    p.add_argument("--output", required=True)

    p = sub.add_parser("knot", parents=[common], help="coordinate records to polynomials")
    p.add_argument("--input", required=True, help="coordinate file (JSON lines)")
    p.add_argument("--output", required=True)

    p = sub.add_parser("train", parents=[common], help="build the polynomial-list model")
    p.add_argument("--polynomials", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("classify", parents=[common], help="predict labels for polynomials")
    p.add_argument("--model", required=True)
    p.add_argument("--polynomials", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("evaluate", parents=[common], help="metrics for a model, or the whole pipeline")
    p.add_argument("--model", help="model file (default: train on the given data)")
    p.add_argument("--polynomials")
    p.add_argument("--manifest")
    p.add_argument("--images", help="run featurize, knot, train and evaluate on this directory")
    p.add_argument("--workdir", help="where --images writes intermediate files")
    p.add_argument("--output", help="metrics JSON")
    p.add_argument("--csv", help="metrics CSV")

    p = sub.add_parser("select-kernels", parents=[common], help="greedy crossing-minimising kernel subset")
    p.add_argument("--images", required=True)
    p.add_argument("--target", type=int, default=13)
    p.add_argument("--name", default="selected")
    p.add_argument("--output")

    p = sub.add_parser("select-cycles", parents=[common], help="cycle count maximising kernel separation")
    p.add_argument("--images", required=True)
    p.add_argument("--candidates", default="2,3,4,5,6")
    p.add_argument("--output", help="per-pair D records (CSV)")

    defaults = SynthParams()
    p = sub.add_parser("synth", parents=[common], help="write a synthetic two-class corpus")
    p.add_argument("--outdir", required=True)
    p.add_argument("--count", type=int, default=defaults.count)
    p.add_argument("--image-side", dest="side", type=int, default=defaults.side)
    p.add_argument("--ridges", type=int, default=defaults.ridges)
    p.add_argument("--gap-min", type=float, default=defaults.gap_min)
    p.add_argument("--gap-max", type=float, default=defaults.gap_max)
    p.add_argument("--noise", type=float, default=defaults.noise)
    p.add_argument("--seed", type=int, default=defaults.seed)

    p = sub.add_parser("colormap", parents=[common], help="grayscale PNG to colour-mapped RGB PNG")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--lut", help="256-line RGB table (default: shipped map)")

    p = sub.add_parser("config", parents=[common], help="print the effective configuration")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        overrides = {k: getattr(args, f"cfg_{k}") for k in KEYS}
        cfg = make_config(args.config, overrides)
        handler = HANDLERS.get(args.command, cmd_show_config)
        handler(args, cfg)
    except (UsageError, ConfigError) as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except DataError as exc:
        sys.stderr.write(f"knotimage: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"knotimage: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

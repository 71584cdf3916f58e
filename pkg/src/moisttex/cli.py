"""Command-line surface: synth, extract, baseline, adapt, eval, predict.

Exit codes: 0 success, 2 usage or argument errors, 3 I/O errors,
4 numeric failures (non-finite values). Every command is deterministic
given its flags, including ``extract --jobs N``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .adapt import AdaptConfig, load_model, model_to_dict, predict, train_adapt
from .classifiers import MODEL_NAMES, cross_validate
from .data import (
    CLASS_NAMES,
    Dataset,
    NonFiniteFeatureError,
    Sample,
    read_feature_csv,
    read_labels_csv,
    write_feature_csv,
)
from .features import extract_family, feature_names
from .image_io import ImageFormatError, load_image
from .metrics import confusion, metrics, render_confusion
from .synth import SHIFT_LEVELS, generate_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


def _write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


# ---------------------------------------------------------------------------
# synth


def cmd_synth(args) -> int:
    info = generate_scenario(args.shift, args.per_class, args.seed, args.out,
                             size=args.size)
    print(f"wrote scenario shift={info['shift']} seed={info['seed']} "
          f"size={info['size']}")
    for domain, meta in info["domains"].items():
        print(f"  {domain}: {meta['images']} images in {meta['dir']}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# extract


def _extract_one(task) -> list[float]:
    path, family = task
    return extract_family(load_image(path), family).tolist()


def cmd_extract(args) -> int:
    rows = read_labels_csv(args.labels)
    image_dir = Path(args.images)
    tasks = [(str(image_dir / f"{row_id}.png"), args.family)
             for row_id, _, _ in rows]
    for path, _ in tasks:
        if not Path(path).is_file():
            raise OSError(f"missing image file {path}")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            vectors = list(pool.map(_extract_one, tasks, chunksize=4))
    else:
        vectors = [_extract_one(t) for t in tasks]
    schema = feature_names(args.family)
    samples = []
    for (row_id, domain, label), vec in zip(rows, vectors):
        values = np.array(vec, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise NonFiniteFeatureError(f"non-finite features for image {row_id}")
        samples.append(Sample(id=row_id, features=values,
                              label=label or None, domain=domain))
    ds = Dataset(schema=schema, samples=samples)
    write_feature_csv(args.out, ds)
    print(f"extracted {len(samples)} rows x {len(schema)} {args.family} features "
          f"-> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# baseline


def cmd_baseline(args) -> int:
    ds = read_feature_csv(args.features)
    if not ds.labeled:
        raise ValueError("baseline training requires labels on every row")
    report = cross_validate(ds, args.model, k=args.folds, seed=args.seed)
    if args.report:
        _write_json(args.report, report)
    mean, stdev = report["mean"], report["stdev"]
    print(f"model={args.model} folds={args.folds} seed={args.seed}")
    for metric in ("accuracy", "precision", "recall", "f1"):
        print(f"  {metric}: {mean[metric]:.4f} ({stdev[metric]:.4f})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# adapt


def cmd_adapt(args) -> int:
    source = read_feature_csv(args.source)
    target = read_feature_csv(args.target)
    if not source.labeled:
        raise ValueError("source CSV must be fully labeled")
    # target labels, if present, are ignored for training
    target = Dataset(schema=target.schema, samples=[
        Sample(id=s.id, features=s.features, label=None, domain=s.domain)
        for s in target.samples])
    cfg = AdaptConfig(epochs=args.epochs, batch_size=args.batch,
                      lam=getattr(args, "lambda"), warmup_epochs=args.warmup,
                      clusters=args.clusters, seed=args.seed)
    model, report = train_adapt(source, target, cfg)
    save_payload = model_to_dict(model)
    _write_json(args.model_out, save_payload)
    _write_json(args.report, report.to_dict())
    for rec in report.records:
        ami_str = f"{rec.ami:.4f}" if rec.ami is not None else "warm-up"
        flag = " *" if rec.checkpointed else ""
        print(f"epoch {rec.epoch:3d}  label {rec.label_loss:.4f}  "
              f"domain {rec.domain_loss:.4f}  total {rec.total_loss:.4f}  "
              f"ami {ami_str}{flag}")
    print(f"best epoch {report.best_epoch} (ami {report.best_ami:.4f}) "
          f"-> {args.model_out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval / predict


def _check_schema(model, ds) -> None:
    if list(ds.schema) != list(model.schema):
        raise ValueError("feature CSV schema does not match the model schema")


def cmd_eval(args) -> int:
    model = load_model(args.model)
    ds = read_feature_csv(args.features)
    _check_schema(model, ds)
    if not ds.labeled:
        raise ValueError("eval requires labels on every row")
    probs, preds = predict(model, ds.X)
    if not np.all(np.isfinite(probs)):
        raise NonFiniteFeatureError("non-finite prediction probabilities")
    cm = confusion(ds.y, preds, len(CLASS_NAMES))
    rep = metrics(cm)
    if args.report:
        _write_json(args.report, rep.to_dict())
    print(render_confusion(cm, list(CLASS_NAMES)))
    print(f"accuracy {rep.accuracy:.4f}  precision {rep.weighted_precision:.4f}  "
          f"recall {rep.weighted_recall:.4f}  f1 {rep.weighted_f1:.4f}")
    return EXIT_OK


def cmd_predict(args) -> int:
    model = load_model(args.model)
    ds = read_feature_csv(args.features)
    _check_schema(model, ds)
    probs, preds = predict(model, ds.X)
    if not np.all(np.isfinite(probs)):
        raise NonFiniteFeatureError("non-finite prediction probabilities")
    out = Path(args.out)
    with out.open("w", newline="") as fh:
        fh.write("id,predicted,probDry,probMedium,probWet\n")
        for s, klass, p in zip(ds.samples, preds, probs):
            cells = ",".join(repr(float(v)) for v in p)
            fh.write(f"{s.id},{CLASS_NAMES[klass]},{cells}\n")
    print(f"wrote {len(ds.samples)} predictions -> {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moisttex",
        description="texture-feature moisture classification and domain adaptation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic two-domain scenario")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--shift", choices=sorted(SHIFT_LEVELS), default="none")
    p.add_argument("--per-class", type=int, default=50, dest="per_class")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--size", type=int, default=64)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="extract texture features to CSV")
    p.add_argument("--images", required=True, help="image directory")
    p.add_argument("--labels", required=True, help="labels.csv file")
    p.add_argument("--family", required=True,
                   choices=["haralick", "fos", "fps", "glrlm", "lbp", "combined"])
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("baseline", help="cross-validate a baseline classifier")
    p.add_argument("--features", required=True)
    p.add_argument("--model", required=True, choices=list(MODEL_NAMES))
    p.add_argument("--folds", type=int, default=4)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--report", help="report JSON path")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("adapt", help="train the domain-adaptation model")
    p.add_argument("--source", required=True, help="labeled source feature CSV")
    p.add_argument("--target", required=True, help="target feature CSV")
    p.add_argument("--epochs", type=int, default=30)
    p.add_argument("--batch", type=int, default=2)
    p.add_argument("--lambda", type=float, default=0.5)
    p.add_argument("--warmup", type=int, default=15)
    p.add_argument("--clusters", type=int, default=3)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--model-out", required=True, dest="model_out")
    p.add_argument("--report", required=True)
    p.set_defaults(func=cmd_adapt)

    p = sub.add_parser("eval", help="evaluate a model on labeled features")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--report", help="metrics JSON path")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("predict", help="write per-row class probabilities")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonFiniteFeatureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ImageFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

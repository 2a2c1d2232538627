"""Command-line entry points: detect | split | templates | eval | sweep | serve."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from ..cluster import select_radius, sweep_radius
from ..config import AppConfig, default_radius_grid, load_config
from ..geometry import Rect
from ..grid import EmptyFileError, parse_csv, render
from ..metrics import (
    detection_curve,
    edit_distance,
    load_annotations,
    multiregion_classification,
    region_density,
    region_score,
    region_type_entropy,
    vmeasure,
)
from ..pipeline import analyze_path, corpus_layouts
from ..segment import segment_file
from ..templates import RegionIndex, SimilarityCache, Thresholds, infer_templates, sweep_tau_f
from .split import RegionOutOfBoundsError, split_grid, write_split

PARSE_ERROR = 2
BOUNDS_ERROR = 3


def _load_app_config(config_path: str | None) -> AppConfig:
    return load_config(config_path) if config_path else AppConfig()


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        click.echo(text)


def _parse_grid_spec(spec: str) -> list[float]:
    """Parse "start:stop:step" into an inclusive ascending grid."""
    try:
        start, stop, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise click.BadParameter(f"expected start:stop:step, got {spec!r}")
    if step <= 0 or stop < start:
        raise click.BadParameter(f"bad grid bounds in {spec!r}")
    values = []
    k = 0
    while True:
        v = round(start + k * step, 10)
        if v > stop + 1e-9:
            break
        values.append(v)
        k += 1
    return values


def _parse_radius_grid(spec: str | None) -> list[float]:
    if spec is None:
        return list(default_radius_grid())
    values: list[float] = []
    for part in spec.split(","):
        values.extend(_parse_grid_spec(part))
    deduped = sorted(set(values))
    return deduped


def _rect_json(rect: Rect) -> dict:
    return {"x0": rect.x0, "y0": rect.y0, "x1": rect.x1, "y1": rect.y1}


@click.group()
def main() -> None:
    """Detect layout regions in multiregion CSV files, split them, and
    group files into layout templates."""


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--alpha", type=float, default=None, help="Weight of the geometric distance term.")
@click.option("--beta", type=float, default=None, help="Weight of the size-difference term.")
@click.option("--gamma", type=float, default=None, help="Weight of the misalignment term.")
@click.option("--radius", type=float, default=None, help="Clustering radius (cell units).")
@click.option("--delimiter", default=None)
@click.option("--quote", default=None)
@click.option("--dump-image", type=click.Path(path_type=Path), default=None, help="Write the typed-cell rendering as a PNG.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", default=None, help="Write the regions JSON here instead of stdout.")
def detect(path, alpha, beta, gamma, radius, delimiter, quote, dump_image, config_path, out):
    """Detect regions in one CSV file and emit them as JSON."""
    config = _load_app_config(config_path).replace(
        alpha=alpha, beta=beta, gamma=gamma, radius=radius, delimiter=delimiter, quote=quote
    )
    try:
        grid, regions = analyze_path(path, config)
    except (EmptyFileError, OSError, ValueError) as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(PARSE_ERROR)
    if dump_image:
        from PIL import Image

        Image.fromarray(render(grid)).save(dump_image)
    payload = {
        "file": str(path),
        "rows": grid.rows,
        "cols": grid.cols,
        "params": {
            "alpha": config.alpha,
            "beta": config.beta,
            "gamma": config.gamma,
            "radius": config.radius,
        },
        "regions": [
            {
                "id": r.id,
                "boundary": _rect_json(r.boundary),
                "elements": [
                    {**_rect_json(e), "component_id": e.component_id} for e in r.elements
                ],
            }
            for r in regions
        ],
    }
    _emit(payload, out)


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.argument("regions_json", type=click.Path(path_type=Path))
@click.option("--outdir", type=click.Path(path_type=Path), required=True)
@click.option("--delimiter", default=None)
@click.option("--quote", default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def split(path, regions_json, outdir, delimiter, quote, config_path):
    """Split a CSV into one file per region from a regions JSON."""
    config = _load_app_config(config_path).replace(delimiter=delimiter, quote=quote)
    try:
        grid = parse_csv(
            path.read_bytes(), delimiter=config.delimiter, quote=config.quote, source=path.name
        )
    except (EmptyFileError, OSError, ValueError) as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(PARSE_ERROR)
    spec = json.loads(Path(regions_json).read_text())
    boundaries = []
    for region in spec["regions"]:
        box = region.get("boundary", region)
        boundaries.append(
            (region.get("id", len(boundaries)), Rect(box["x0"], box["y0"], box["x1"], box["y1"]))
        )
    try:
        outputs = split_grid(
            grid, boundaries, path.stem, delimiter=config.delimiter, quote=config.quote
        )
    except RegionOutOfBoundsError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(BOUNDS_ERROR)
    paths = write_split(outputs, outdir)
    for p in paths:
        click.echo(str(p))


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--tau-r", type=float, default=None)
@click.option("--tau-f", type=float, default=None)
@click.option("--sweep", "sweep_spec", default=None, help="Layout-threshold grid start:stop:step.")
@click.option("--index", "index_path", type=click.Path(path_type=Path), default=None,
              envvar="MONDRIAN_INDEX", help="Persistent region index (env MONDRIAN_INDEX).")
@click.option("--gold", type=click.Path(exists=True), default=None,
              help="Annotations with template labels, for sweep metrics.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", default=None)
def templates(directory, tau_r, tau_f, sweep_spec, index_path, gold, config_path, out):
    """Infer layout templates over all CSV files in a directory."""
    config = _load_app_config(config_path).replace(tau_r=tau_r, tau_f=tau_f)
    paths = sorted(p for p in directory.iterdir() if p.suffix.lower() == ".csv")
    layouts = corpus_layouts(paths, config)

    index = RegionIndex()
    cache = SimilarityCache()
    sims_path = None
    if index_path:
        sims_path = Path(str(index_path) + ".sims.json")
        if Path(index_path).exists():
            index = RegionIndex.load(index_path)
        if sims_path.exists():
            cache = SimilarityCache.load(sims_path)

    gold_templates = None
    if gold:
        annotations = load_annotations(gold)
        gold_templates = {a.file: a.template for a in annotations if a.template is not None}

    if sweep_spec:
        taus = _parse_grid_spec(sweep_spec)
        # restrict metrics to annotated files when gold labels are partial
        gold_map = None
        if gold_templates:
            gold_map = {f: t for f, t in gold_templates.items() if f in layouts}
        points = sweep_tau_f(
            layouts, taus, tau_r=config.tau_r, gold=gold_map, index=index, sim_cache=cache
        )
        payload = {
            "sweep": [
                {
                    "tau_f": point.tau_f,
                    "n_templates": len(point.templates.templates),
                    "homogeneity": point.homogeneity,
                    "completeness": point.completeness,
                    "v_measure": point.v_measure,
                    **point.templates.to_json(),
                }
                for point in points
            ]
        }
    else:
        result = infer_templates(
            layouts, Thresholds(tau_r=config.tau_r, tau_f=config.tau_f),
            index=index, sim_cache=cache,
        )
        payload = result.to_json()

    if index_path:
        index.save(index_path)
        cache.save(sims_path)
    _emit(payload, out)


@main.command()
@click.option("--pred", "pred_dir", type=click.Path(exists=True, file_okay=False, path_type=Path), required=True,
              help="Directory of detect-output JSON files (one per CSV).")
@click.option("--gold", type=click.Path(exists=True, path_type=Path), required=True,
              help="Gold annotation JSON.")
@click.option("--data", "data_dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory with the original CSV files.")
@click.option("--curve", "curve_spec", default="0:1:0.01", help="IoU thresholds start:stop:step.")
@click.option("--curve-csv", type=click.Path(path_type=Path), default=None,
              help="Also write the detection curve as CSV.")
@click.option("--pred-templates", type=click.Path(exists=True, path_type=Path), default=None,
              help="templates-command output, for homogeneity/completeness/v-measure.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", default=None)
def eval(pred_dir, gold, data_dir, curve_spec, curve_csv, pred_templates, config_path, out):
    """Score predicted regions (and optionally templates) against gold."""
    config = _load_app_config(config_path)
    annotations = load_annotations(gold)
    thresholds = _parse_grid_spec(curve_spec)

    per_file = []
    all_ious: list[float] = []
    pred_counts: dict[str, int] = {}
    gold_counts: dict[str, int] = {}
    for ann in annotations:
        stem = Path(ann.file).stem
        pred_path = pred_dir / f"{stem}.json"
        if not pred_path.exists():
            click.echo(f"warning: no prediction for {ann.file}, treating as empty", err=True)
            prediction = {"regions": [], "file": ann.file}
        else:
            prediction = json.loads(pred_path.read_text())
        csv_path = Path(prediction.get("file", ann.file))
        if not csv_path.exists() and data_dir:
            csv_path = data_dir / ann.file
        if not csv_path.exists():
            click.echo(f"error: cannot find CSV for {ann.file}", err=True)
            sys.exit(PARSE_ERROR)
        grid = parse_csv(
            csv_path.read_bytes(), delimiter=config.delimiter, quote=config.quote, source=ann.file
        )
        predicted = [
            Rect(r["boundary"]["x0"], r["boundary"]["y0"], r["boundary"]["x1"], r["boundary"]["y1"])
            for r in prediction["regions"]
        ]
        scores = region_score(predicted, ann.rects, grid)
        all_ious.extend(s.iou for s in scores)
        pred_counts[ann.file] = max(len(predicted), 1)
        gold_counts[ann.file] = max(len(ann.rects), 1)
        per_file.append(
            {
                "file": ann.file,
                "predicted_count": len(predicted),
                "gold_count": len(ann.rects),
                "edit_distance": edit_distance(predicted, ann.rects),
                "regions": [
                    {
                        "gold_index": k,
                        "label": ann.regions[k][1],
                        "iou": s.iou,
                        "eob": s.eob,
                        "density": region_density(ann.rects[k], grid),
                        "type_entropy": region_type_entropy(ann.rects[k], grid),
                    }
                    for k, s in enumerate(scores)
                ],
            }
        )

    curve = detection_curve(all_ious, thresholds)
    classification = multiregion_classification(pred_counts, gold_counts)
    payload = {
        "files": per_file,
        "detection": {"thresholds": thresholds, "iou_rate": curve},
        "classification": {
            "accuracy": classification.accuracy,
            "precision": classification.precision,
            "recall": classification.recall,
            "precision_defined": classification.precision_defined,
        },
        "summary": {
            "files": len(per_file),
            "regions": len(all_ious),
            "mean_iou": sum(all_ious) / len(all_ious) if all_ious else None,
            "total_edit_distance": sum(f["edit_distance"] for f in per_file),
        },
    }

    if pred_templates:
        gold_map = {a.file: a.template for a in annotations if a.template is not None}
        predicted_sets = json.loads(Path(pred_templates).read_text())["templates"]
        pred_map = {f: t["id"] for t in predicted_sets for f in t["files"]}
        common = sorted(set(gold_map) & set(pred_map))
        if common:
            h, c, v = vmeasure(
                {f: pred_map[f] for f in common}, {f: gold_map[f] for f in common}
            )
            payload["templates"] = {"homogeneity": h, "completeness": c, "v_measure": v}

    if curve_csv:
        lines = ["threshold,iou_rate"]
        lines += [f"{t},{r}" for t, r in zip(thresholds, curve)]
        curve_csv.write_text("\n".join(lines) + "\n")
    _emit(payload, out)


@main.command()
@click.argument("path", type=click.Path(exists=True, path_type=Path))
@click.option("--alpha", type=float, default=None)
@click.option("--beta", type=float, default=None)
@click.option("--gamma", type=float, default=None)
@click.option("--radius-grid", "radius_grid", default=None,
              help="Comma-separated start:stop:step segments; default is the shipped grid.")
@click.option("--gold", type=click.Path(exists=True), default=None,
              help="Annotations for dynamic radius selection.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", default=None)
def sweep(path, alpha, beta, gamma, radius_grid, gold, config_path, out):
    """Sweep the clustering radius on one file."""
    config = _load_app_config(config_path).replace(alpha=alpha, beta=beta, gamma=gamma)
    try:
        grid = parse_csv(
            path.read_bytes(), delimiter=config.delimiter, quote=config.quote, source=path.name
        )
    except (EmptyFileError, OSError, ValueError) as exc:
        click.echo(f"error: cannot parse {path}: {exc}", err=True)
        sys.exit(PARSE_ERROR)
    elements = segment_file(grid)
    radii = _parse_radius_grid(radius_grid)
    results = sweep_radius(elements, (config.alpha, config.beta, config.gamma), radii)

    gold_rects = None
    if gold:
        annotations = {a.file: a for a in load_annotations(gold)}
        ann = annotations.get(path.name) or annotations.get(str(path))
        if ann is None:
            click.echo(f"error: no annotation for {path.name} in {gold}", err=True)
            sys.exit(PARSE_ERROR)
        gold_rects = ann.rects
    chosen = select_radius(results, gold_rects, static_default=config.radius)
    payload = {
        "file": str(path),
        "selected_radius": chosen,
        "sweep": [{"radius": eps, "n_regions": len(regions)} for eps, regions in results],
    }
    _emit(payload, out)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--ui", "ui_dir", type=click.Path(file_okay=False), default=None,
              help="Static directory with the built web UI.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def serve(host, port, ui_dir, config_path):
    """Run the HTTP service for the interactive splitting UI."""
    import uvicorn

    from .api import create_app
    from .workspace import Workspace

    config = _load_app_config(config_path)
    ui = ui_dir or os.environ.get("MONDRIAN_UI")
    app = create_app(Workspace(config), ui_dir=ui)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()

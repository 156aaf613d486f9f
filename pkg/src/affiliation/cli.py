"""Command-line front end.

Subcommands:

* ``evaluate``        score range predictions (CSV labels or JSON events)
* ``evaluate-points`` score point predictions (JSON instants)
* ``adversary``       generate adversarial labels from trivial labels
* ``theory``          emit the theoretical score curves as CSV
* ``convert``         turn a label CSV into an events JSON document

Inputs use plain numeric seconds; calendar parsing belongs upstream.
Exit codes: 0 success, 1 malformed input (one-line diagnostic naming the
offending record), 2 internal contract violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from .baselines import adversary_predictions, point_adjust_adversary_predictions
from .errors import ContractViolation, InputError
from .events import (
    GROUND_TRUTH,
    PREDICTION,
    EventSeries,
    Interval,
    LabeledSeries,
    events_from_labels,
)
from .metrics import EvaluationReport, evaluate, evaluate_point_anomalies
from .oracle import OracleConfig, probabilities_numeric
from .theory import emit_curves


def parse_label_csv(path: str, t_last: float | None = None):
    """Read a ``timestamp,gt,pred`` CSV into two labeled series."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty file") from None
        if [h.strip() for h in header] != ["timestamp", "gt", "pred"]:
            raise InputError(
                f"{path}: expected header 'timestamp,gt,pred', got "
                f"'{','.join(header)}'"
            )
        times: list[float] = []
        gt: list[int] = []
        pred: list[int] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise InputError(f"{path}: line {line_no}: expected 3 fields")
            try:
                t = float(row[0])
            except ValueError:
                raise InputError(
                    f"{path}: line {line_no}: bad timestamp {row[0]!r}"
                ) from None
            times.append(t)
            gt.append(_parse_label(row[1], path, line_no, "gt"))
            pred.append(_parse_label(row[2], path, line_no, "pred"))
    if not times:
        raise InputError(f"{path}: no data rows")
    for i in range(1, len(times)):
        if times[i] <= times[i - 1]:
            raise InputError(
                f"{path}: line {i + 2}: timestamp {times[i]} not greater than "
                f"previous {times[i - 1]}"
            )
    gt_series = LabeledSeries.from_samples(gt, times, t_last=t_last)
    pred_series = LabeledSeries.from_samples(pred, times, t_last=t_last)
    return gt_series, pred_series


def parse_event_json(path: str):
    """Read a ``{"gt": [[s, e], ...], "pred": ..., "range": [s, e]}``
    document; a missing "pred" means an empty prediction series."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top-level value must be an object")
    if "gt" not in doc:
        raise InputError(f"{path}: missing key 'gt'")
    if "range" not in doc:
        raise InputError(f"{path}: missing key 'range'")
    rng_pair = _pair(doc["range"], f"{path}: range")
    rng = Interval(*rng_pair)
    gt = _event_series(doc["gt"], GROUND_TRUTH, f"{path}: gt")
    pred = _event_series(doc.get("pred", []), PREDICTION, f"{path}: pred")
    return gt, pred, rng


def parse_point_json(path: str):
    """Read a point-anomaly document; "gt" and "pred" are instants."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "gt" not in doc or "range" not in doc:
        raise InputError(f"{path}: expected object with keys 'gt' and 'range'")
    rng = Interval(*_pair(doc["range"], f"{path}: range"))
    gt = [_number(x, f"{path}: gt[{i}]") for i, x in enumerate(_list(doc["gt"], f"{path}: gt"))]
    pred = [
        _number(x, f"{path}: pred[{i}]")
        for i, x in enumerate(_list(doc.get("pred", []), f"{path}: pred"))
    ]
    return gt, pred, rng


def report_to_dict(report: EvaluationReport, oracle_config: OracleConfig | None = None,
                   zones=None) -> dict:
    doc = {
        "precision": _json_number(report.precision),
        "recall": _json_number(report.recall),
        "f1": _json_number(report.f1),
        "n_events": report.n_events,
        "s_size": report.s_size,
        "range": list(report.range),
        "zones": [],
    }
    for score in report.zone_scores:
        row = {
            "zone": list(score.zone),
            "gt": list(score.event) if score.event[0] != score.event[1]
            else score.event[0],
            "d_precision_s": _json_number(score.d_precision),
            "d_recall_s": _json_number(score.d_recall),
            "p_precision": _json_number(score.p_precision),
            "p_recall": _json_number(score.p_recall),
        }
        if score.d_recall_signed is not None:
            row["d_recall_signed_s"] = _json_number(score.d_recall_signed)
        doc["zones"].append(row)
    if oracle_config is not None and zones is not None:
        for row, zone, frags in zip(doc["zones"], zones[0], zones[1]):
            p_num, r_num = probabilities_numeric(zone, frags, oracle_config)
            row["p_precision_oracle"] = _json_number(p_num)
            row["p_recall_oracle"] = _json_number(r_num)
    return doc


def render_table(report: EvaluationReport) -> str:
    """Aligned per-event text view of the report."""
    header = f"{'event':>6} {'zone':>24} {'gt':>24} " \
             f"{'D_prec(s)':>12} {'D_rec(s)':>12} {'P_prec':>8} {'P_rec':>8}"
    lines = [header, "-" * len(header)]
    for score in report.zone_scores:
        zone = f"[{score.zone[0]:g}, {score.zone[1]:g})"
        if score.event[0] == score.event[1]:
            ev = f"{score.event[0]:g}"
        else:
            ev = f"[{score.event[0]:g}, {score.event[1]:g})"
        lines.append(
            f"{score.index + 1:>6} {zone:>24} {ev:>24} "
            f"{_fmt(score.d_precision, 12)} {_fmt(score.d_recall, 12)} "
            f"{_fmt(score.p_precision, 8)} {_fmt(score.p_recall, 8)}"
        )
    lines.append("-" * len(header))
    lines.append(
        f"precision={_fmt(report.precision, 0)} recall={_fmt(report.recall, 0)} "
        f"f1={_fmt(report.f1, 0)} (n={report.n_events}, |S|={report.s_size})"
    )
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ContractViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affiliation-metrics",
        description="Event-level affiliation precision/recall for "
        "time-series anomaly detection.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    ev = sub.add_parser("evaluate", help="score range predictions")
    ev.add_argument("input", help="CSV (timestamp,gt,pred) or JSON events file")
    ev.add_argument("--format", choices=("csv", "json"), default=None,
                    help="input format (default: by file extension)")
    ev.add_argument("--t-last", type=float, default=None,
                    help="override the final cell boundary t(N+1) for CSV input")
    ev.add_argument("--output", default=None, help="write the JSON report here")
    ev.add_argument("--table", action="store_true",
                    help="print an aligned per-event table instead of JSON")
    ev.add_argument("--directionality", action="store_true",
                    help="add signed recall distances to the per-zone rows")
    ev.add_argument("--oracle", action="store_true",
                    help="append grid-integration oracle columns")
    ev.add_argument("--grid-step", type=float, default=None)
    ev.add_argument("--mc-samples", type=int, default=1_000_000)
    ev.add_argument("--seed", type=int, default=0)
    ev.set_defaults(handler=_cmd_evaluate)

    evp = sub.add_parser("evaluate-points", help="score point predictions")
    evp.add_argument("input", help="JSON file with gt/pred instants and range")
    evp.add_argument("--output", default=None)
    evp.add_argument("--table", action="store_true")
    evp.set_defaults(handler=_cmd_evaluate_points)

    adv = sub.add_parser("adversary", help="generate adversarial labels")
    adv.add_argument("input", nargs="?", default=None,
                     help="file of 0/1 labels (newline or comma separated); "
                     "use --labels for inline input")
    adv.add_argument("--labels", default=None, help="comma-separated 0/1 labels")
    adv.add_argument("--style", choices=("alternating", "point-adjust"),
                     default="alternating")
    adv.add_argument("--extra", type=int, default=10,
                     help="extra prediction count for the point-adjust style")
    adv.add_argument("--output", default=None)
    adv.set_defaults(handler=_cmd_adversary)

    th = sub.add_parser("theory", help="emit theoretical score curves")
    th.add_argument("--count", type=int, default=100,
                    help="grid size; p values are i/count for i=1..count")
    th.add_argument("--output", default=None)
    th.set_defaults(handler=_cmd_theory)

    cv = sub.add_parser("convert", help="label CSV to events JSON")
    cv.add_argument("input")
    cv.add_argument("--t-last", type=float, default=None)
    cv.add_argument("--output", default=None)
    cv.set_defaults(handler=_cmd_convert)
    return parser


def _cmd_evaluate(args) -> int:
    fmt = args.format or ("json" if args.input.endswith(".json") else "csv")
    if fmt == "csv":
        gt_labels, pred_labels = parse_label_csv(args.input, t_last=args.t_last)
        gt = events_from_labels(gt_labels, role=GROUND_TRUTH)
        pred = events_from_labels(pred_labels)
        rng = gt_labels.range
    else:
        gt, pred, rng = parse_event_json(args.input)
    report = evaluate(gt, pred, rng, directionality=args.directionality)

    oracle_cfg = None
    zones_ctx = None
    if args.oracle:
        from .events import affiliate, affiliation_zones

        oracle_cfg = OracleConfig(
            grid_step=args.grid_step,
            mc_samples=args.mc_samples,
            rng_seed=args.seed,
        )
        zones = affiliation_zones(gt, rng)
        zones_ctx = (zones, affiliate(pred, zones))
    doc = report_to_dict(report, oracle_cfg, zones_ctx)
    _emit(args, report, doc)
    return 0


def _cmd_evaluate_points(args) -> int:
    gt, pred, rng = parse_point_json(args.input)
    if not gt:
        raise InputError(f"{args.input}: gt must contain at least one instant")
    report = evaluate_point_anomalies(gt, pred, rng)
    _emit(args, report, report_to_dict(report))
    return 0


def _cmd_adversary(args) -> int:
    labels = _read_labels(args)
    if args.style == "alternating":
        out = adversary_predictions(labels)
    else:
        out = point_adjust_adversary_predictions(labels, n_extra=args.extra)
    text = ",".join(str(v) for v in out) + "\n"
    _write(args.output, text)
    return 0


def _cmd_theory(args) -> int:
    if args.count < 1:
        raise InputError("--count must be at least 1")
    grid = [i / args.count for i in range(1, args.count + 1)]
    lines = ["p,position,precision,recall"]
    for row in emit_curves(grid):
        lines.append(f"{row.p:.10g},{row.position},{row.precision:.12g},{row.recall:.12g}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_convert(args) -> int:
    gt_labels, pred_labels = parse_label_csv(args.input, t_last=args.t_last)
    gt = events_from_labels(gt_labels, role=GROUND_TRUTH)
    pred = events_from_labels(pred_labels)
    rng = gt_labels.range
    doc = {
        "gt": [[ev.start, ev.stop] for ev in gt],
        "pred": [[ev.start, ev.stop] for ev in pred],
        "range": [rng.start, rng.stop],
    }
    _write(args.output, json.dumps(doc, indent=2) + "\n")
    return 0


def _emit(args, report: EvaluationReport, doc: dict) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        if args.table:
            print(render_table(report))
    elif args.table:
        print(render_table(report))
    else:
        sys.stdout.write(text)


def _read_labels(args) -> list[int]:
    if (args.labels is None) == (args.input is None):
        raise InputError("provide labels either as a file or via --labels")
    if args.labels is not None:
        raw = args.labels.replace(",", " ").split()
        source = "--labels"
    else:
        with open(args.input) as fh:
            raw = fh.read().replace(",", " ").split()
        source = args.input
    labels = []
    for i, tok in enumerate(raw):
        if tok not in ("0", "1"):
            raise InputError(f"{source}: label {i} is {tok!r}, expected 0 or 1")
        labels.append(int(tok))
    if not labels:
        raise InputError(f"{source}: no labels found")
    return labels


def _parse_label(tok: str, path: str, line_no: int, column: str) -> int:
    tok = tok.strip()
    if tok not in ("0", "1"):
        raise InputError(
            f"{path}: line {line_no}: column {column} is {tok!r}, expected 0 or 1"
        )
    return int(tok)


def _event_series(value, role: str, where: str) -> EventSeries:
    pairs = []
    for i, item in enumerate(_list(value, where)):
        pairs.append(_pair(item, f"{where}[{i}]"))
    try:
        return EventSeries.from_pairs(pairs, role)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list")
    return value


def _pair(value, where: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise InputError(f"{where}: expected a [start, stop] pair")
    s, e = (_number(v, f"{where}[{i}]") for i, v in enumerate(value))
    if e <= s:
        raise InputError(f"{where}: stop {e} must exceed start {s}")
    return s, e


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _json_number(x):
    if x is None:
        return "NaN"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _fmt(x, width: int) -> str:
    if x is None:
        text = "NaN"
    elif isinstance(x, float) and math.isinf(x):
        text = "inf"
    else:
        text = f"{x:.4g}"
    return text.rjust(width) if width else text


def _write(path, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    sys.exit(main())

"""Evaluation report writers: JSON, aligned text table, CSV and a bar-chart
figure rendered to file.  The text table mirrors the row/column layout of the
published AsthmaBot scorecard (languages as row groups, context arms as rows,
one column per metric)."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .runner import EvalReport

_LANGUAGE_NAMES = {"en": "English", "fr": "French", "ar": "Arabic"}

_ARM_NAMES = {"norag": "No RAG", "text": "Text", "image": "Image", "video": "Video"}

_METRIC_COLUMNS = ("ROUGE-1", "ROUGE-2", "ROUGE-L", "BLEU")


def _language_name(code: str) -> str:
    return _LANGUAGE_NAMES.get(code, code)


def _metric_row(report: EvalReport) -> tuple[float, float, float, float]:
    return (report.rouge1.f1, report.rouge2.f1, report.rougeL.f1, report.bleu)


def reports_to_json(reports: Sequence[EvalReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)


def format_table(reports: Sequence[EvalReport]) -> str:
    """Aligned plain-text table; ROUGE columns show the f1 aggregate."""
    header = f"{'Language':<10}{'Arm':<8}{'Mode':<6}" + "".join(
        f"{c:>9}" for c in _METRIC_COLUMNS
    )
    lines = [header, "-" * len(header)]
    previous_language = None
    for report in reports:
        code = report.setting.language.code
        language = _language_name(code) if code != previous_language else ""
        previous_language = code
        arm = _ARM_NAMES[report.setting.arm.value]
        mode = report.setting.query_mode.value.upper()
        values = "".join(f"{v:>9.4f}" for v in _metric_row(report))
        lines.append(f"{language:<10}{arm:<8}{mode:<6}{values}")
    return "\n".join(lines) + "\n"


def write_csv(reports: Sequence[EvalReport], path) -> None:
    """Delimited form of the table, one row per report."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "language",
                "arm",
                "query_mode",
                "rouge1_precision",
                "rouge1_recall",
                "rouge1_f1",
                "rouge2_precision",
                "rouge2_recall",
                "rouge2_f1",
                "rougeL_precision",
                "rougeL_recall",
                "rougeL_f1",
                "bleu",
                "n_pairs",
                "n_failures",
            ]
        )
        for r in reports:
            writer.writerow(
                [
                    r.setting.language.code,
                    r.setting.arm.value,
                    r.setting.query_mode.value,
                    *r.rouge1.as_tuple(),
                    *r.rouge2.as_tuple(),
                    *r.rougeL.as_tuple(),
                    r.bleu,
                    r.n_pairs,
                    r.n_failures,
                ]
            )


def render_figure(reports: Sequence[EvalReport], path) -> None:
    """Grouped bar chart of the four headline metrics per report."""
    labels = [
        f"{_language_name(r.setting.language.code)}\n"
        f"{_ARM_NAMES[r.setting.arm.value]} ({r.setting.query_mode.value.upper()})"
        for r in reports
    ]
    rows = [_metric_row(r) for r in reports]
    width = 0.2
    positions = range(len(reports))

    fig, ax = plt.subplots(figsize=(max(6.0, 1.8 * len(reports)), 4.0))
    for offset, metric in enumerate(_METRIC_COLUMNS):
        xs = [p + (offset - 1.5) * width for p in positions]
        ax.bar(xs, [row[offset] for row in rows], width=width, label=metric)
    ax.set_xticks(list(positions))
    ax.set_xticklabels(labels, fontsize=8)
    ax.set_ylabel("score")
    ax.set_ylim(0.0, 1.05)
    ax.legend(fontsize=8)
    ax.set_title("FAQ evaluation")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report_files(reports: Sequence[EvalReport], out_dir, stem: str = "report") -> dict:
    """Emit report.json, report.txt, report.csv and report.png under out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / f"{stem}.json",
        "txt": out / f"{stem}.txt",
        "csv": out / f"{stem}.csv",
        "png": out / f"{stem}.png",
    }
    paths["json"].write_text(reports_to_json(reports), encoding="utf-8")
    paths["txt"].write_text(format_table(reports), encoding="utf-8")
    write_csv(reports, paths["csv"])
    render_figure(reports, paths["png"])
    return {k: str(v) for k, v in paths.items()}

"""Corpus report rendering: a delimited summary plus two overview figures."""

from __future__ import annotations

import csv
from pathlib import Path

CSV_FIELDS = (
    "index",
    "seed",
    "verdict",
    "algorithm",
    "certificate",
    "certificate_ok",
    "recursive_components",
    "max_period_len",
    "word_count",
)

VERDICT_ORDER = ("well-ordered", "scattered", "quasi-dense", "DISAGREE")


def write_corpus_reports(rows: list[dict], directory: str | Path) -> list[Path]:
    """Write ``corpus.csv`` and the overview charts; returns the paths written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    csv_path = directory / "corpus.csv"
    with open(csv_path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_FIELDS, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    return [csv_path] + _figures(rows, directory)


def _figures(rows: list[dict], directory: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    counts = {v: 0 for v in VERDICT_ORDER}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
    labels = [v for v in counts if counts[v]]
    verdict_path = directory / "verdicts.png"
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar(labels, [counts[v] for v in labels], color="#4878a8")
    ax.set_ylabel("grammars")
    ax.set_title("verdicts across the corpus")
    fig.tight_layout()
    fig.savefig(verdict_path)
    plt.close(fig)

    lengths = [row["max_period_len"] for row in rows if row["max_period_len"] != ""]
    period_path = directory / "period_lengths.png"
    fig, ax = plt.subplots(figsize=(5, 3.2))
    if lengths:
        ax.hist(lengths, bins=range(1, max(lengths) + 2), color="#4878a8", rwidth=0.9)
    ax.set_xlabel("longest period in the grammar")
    ax.set_ylabel("grammars")
    ax.set_title("period lengths across recursive components")
    fig.tight_layout()
    fig.savefig(period_path)
    plt.close(fig)
    return [verdict_path, period_path]

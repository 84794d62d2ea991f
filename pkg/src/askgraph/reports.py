"""File emitters for tables, curves, and graph exports.

All writes are atomic (temp file + rename); a failed write leaves a
`.partial` file behind instead of a truncated output.
"""

from __future__ import annotations

import csv
import json
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Optional

from .corpus import CorpusStats
from .interaction import InteractionGraph, MetricsReport
from .segmentation import GroupReport, GroupRow
from .wordgraph import CentralityScores, WordGraph, WordSet


@contextmanager
def atomic_write(path: str | Path):
    """Yield a text handle on `<path>.partial`; rename over `path` on clean
    exit, leave the partial file on failure."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    partial = path.with_name(path.name + ".partial")
    with open(partial, "w", encoding="utf-8", newline="") as fh:
        yield fh
    os.replace(partial, path)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: str | Path, header: list[str], rows: Iterable[Iterable]) -> None:
    with atomic_write(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def write_json(path: str | Path, payload) -> None:
    with atomic_write(path) as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_word_set(
    path: str | Path, word_set: WordSet, threshold: float, cap: int
) -> None:
    """One `word score` per line with a '#' metadata header."""
    with atomic_write(path) as fh:
        fh.write(f"# polarity: {word_set.polarity}\n")
        fh.write(f"# threshold: {_fmt(threshold)}\n")
        fh.write(f"# cap: {cap}\n")
        for word in word_set.words:
            fh.write(f"{word} {_fmt(word_set.scores[word])}\n")


def write_word_graph(
    edges_path: str | Path,
    nodes_path: str | Path,
    graph: WordGraph,
    scores: CentralityScores,
) -> None:
    """CSV edge list (word_a, word_b, weight) plus node centrality table."""
    coo = graph.adjacency.tocoo()
    edges = sorted(
        (graph.nodes[i], graph.nodes[j], int(w))
        for i, j, w in zip(coo.row, coo.col, coo.data)
        if i < j
    )
    write_csv(edges_path, ["word_a", "word_b", "weight"], edges)
    write_csv(
        nodes_path,
        ["word", "centrality"],
        ((w, scores.scores[w]) for w in graph.nodes),
    )


def write_interaction_graph(path: str | Path, graph: InteractionGraph) -> None:
    write_csv(
        path,
        ["src", "dst", "n_neg", "n_nonneg"],
        (
            (i, j, w[0], w[1])
            for (i, j), w in sorted(graph.edges.items())
        ),
    )


def write_corpus_stats(path: str | Path, stats: CorpusStats) -> None:
    write_json(path, vars(stats))


def write_metrics(out_dir: str | Path, report: MetricsReport) -> None:
    """One CSV per figure analogue plus a JSON summary."""
    out_dir = Path(out_dir)
    for name, curve in sorted(report.ccdf_curves.items()):
        write_csv(out_dir / f"ccdf_{name}.csv", ["k", "fraction_ge_k"], curve)
    write_csv(out_dir / "overlap.csv", ["x_percent", "overlap_percent"], report.overlap_curve)
    write_csv(out_dir / "ratio_cdf.csv", ["ratio", "cdf"], report.ratio_cdf)
    recip_rows = [
        (name, lo, hi, mean, n)
        for name in ("neg", "nonneg")
        for (lo, hi, mean, n) in report.recip_vs_outdeg[name]
    ]
    write_csv(
        out_dir / "recip_vs_outdeg.csv",
        ["graph", "outdeg_bin_lo", "outdeg_bin_hi", "mean_reciprocity", "n_nodes"],
        recip_rows,
    )
    write_csv(
        out_dir / "clustering_vs_degree.csv",
        ["degree", "mean_local_clustering"],
        report.clustering_vs_degree,
    )
    write_json(
        out_dir / "metrics.json",
        {
            "mean_reciprocity": report.mean_reciprocity,
            "neg_reciprocity": report.neg_reciprocity,
            "nonneg_reciprocity": report.nonneg_reciprocity,
            "within_20pct": report.within_20pct,
            "clustering_global": report.clustering.global_coefficient,
            "clustering_mean_local": report.clustering.mean_local,
            "likes_answers_corr_below": report.likes_answers_corr_below,
            "likes_answers_corr_above": report.likes_answers_corr_above,
        },
    )


_GROUP_COLUMNS = [
    "group",
    "count",
    "mean_neg_reciprocity",
    "mean_nonneg_reciprocity",
    "mean_neg_in_degree",
    "mean_nonneg_in_degree",
    "mean_neg_out_degree",
    "mean_nonneg_out_degree",
    "mean_total_likes",
    "likes_per_answer",
    "mean_local_clustering",
    "mean_answers",
    "mean_neg_questions",
    "mean_pos_questions",
    "mean_neg_words",
    "mean_pos_words",
    "unresolved_ids",
]


def _group_row_values(row: GroupRow) -> list:
    return [
        row.name,
        row.count,
        row.mean_neg_reciprocity,
        row.mean_nonneg_reciprocity,
        row.mean_neg_in_degree,
        row.mean_nonneg_in_degree,
        row.mean_neg_out_degree,
        row.mean_nonneg_out_degree,
        row.mean_total_likes,
        row.likes_per_answer,
        row.mean_local_clustering,
        row.mean_answers,
        row.mean_neg_questions,
        row.mean_pos_questions,
        row.mean_neg_words,
        row.mean_pos_words,
        ";".join(row.unresolved_ids),
    ]


def write_group_report(
    path: str | Path, report: GroupReport, label_rows: Optional[list[GroupRow]] = None
) -> None:
    """Fixed-column CSV: one row per group, then one row per label set.
    Undefined means are emitted as empty cells, never as zeros."""
    rows = [_group_row_values(r) for r in report.rows]
    for extra in label_rows or []:
        rows.append(_group_row_values(extra))
    write_csv(path, _GROUP_COLUMNS, rows)


def write_label_file(path: str | Path, label: str, user_ids: Iterable[str]) -> None:
    with atomic_write(path) as fh:
        fh.write(f"label: {label}\n")
        for uid in sorted(user_ids):
            fh.write(f"{uid}\n")


def write_frequency_vector(path: str | Path, vector) -> None:
    write_csv(
        path,
        ["word", "mean_frequency"],
        vector.entries,
    )


def write_neighborhood(path: str | Path, core: str, records: list[tuple[str, int, float]]) -> None:
    write_csv(
        path,
        ["core", "neighbor", "weight", "neighbor_centrality"],
        ((core, n, w, c) for n, w, c in records),
    )

"""User segmentation into negativity groups and per-group aggregate reports.

Groups: HN (>=3 negative posts, zero positive), PN (>=3 negative and >4
positive), HP (>10 positive), OTHR (everyone else). Predicates overlap, so
classification applies the precedence HN -> PN -> HP -> OTHR.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .corpus import Corpus, Profile, tokenize
from .interaction import (
    SimpleGraph,
    SplitGraphs,
    clustering,
    degree_vector,
    node_reciprocity,
)
from .wordgraph import WordSet

GROUPS = ("HN", "HP", "PN", "OTHR")


@dataclass(frozen=True)
class UserContentStats:
    n_answers: int
    n_neg_questions: int
    n_pos_questions: int
    n_neg_words: int
    n_pos_words: int


@dataclass(frozen=True)
class GroupRow:
    name: str
    count: int
    mean_neg_reciprocity: Optional[float]
    mean_nonneg_reciprocity: Optional[float]
    mean_neg_in_degree: Optional[float]
    mean_nonneg_in_degree: Optional[float]
    mean_neg_out_degree: Optional[float]
    mean_nonneg_out_degree: Optional[float]
    mean_total_likes: Optional[float]
    likes_per_answer: Optional[float]
    mean_local_clustering: Optional[float]
    mean_answers: Optional[float]
    mean_neg_questions: Optional[float]
    mean_pos_questions: Optional[float]
    mean_neg_words: Optional[float]
    mean_pos_words: Optional[float]
    unresolved_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class GroupReport:
    rows: tuple[GroupRow, ...]

    def row(self, name: str) -> GroupRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


@dataclass(frozen=True)
class LabelFile:
    label: str
    user_ids: frozenset[str]


def user_content_stats(profile: Profile, neg: WordSet, pos: WordSet) -> UserContentStats:
    """Counts over ALL answered questions on the profile (not just top-k)."""
    n_neg_q = n_pos_q = n_neg_w = n_pos_w = 0
    for question in profile.questions:
        tokens = tokenize(question.text)
        neg_hits = sum(1 for t in tokens if t in neg)
        pos_hits = sum(1 for t in tokens if t in pos)
        n_neg_q += neg_hits > 0
        n_pos_q += pos_hits > 0
        n_neg_w += neg_hits
        n_pos_w += pos_hits
    return UserContentStats(
        n_answers=len(profile.questions),
        n_neg_questions=n_neg_q,
        n_pos_questions=n_pos_q,
        n_neg_words=n_neg_w,
        n_pos_words=n_pos_w,
    )


def classify_user(stats: UserContentStats) -> str:
    """Total partition over (n_neg_questions, n_pos_questions) with the
    precedence HN -> PN -> HP -> OTHR."""
    neg = stats.n_neg_questions
    pos = stats.n_pos_questions
    if neg >= 3 and pos == 0:
        return "HN"
    if neg >= 3 and pos > 4:
        return "PN"
    if pos > 10:
        return "HP"
    return "OTHR"


def classify_corpus(corpus: Corpus, neg: WordSet, pos: WordSet) -> dict[str, str]:
    return {
        p.owner: classify_user(user_content_stats(p, neg, pos)) for p in corpus
    }


def load_label_file(path: str | Path) -> LabelFile:
    """Parse a label file: header `label: <name>`, then one UserId per line."""
    label = None
    ids: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if label is None:
                if not line.startswith("label:"):
                    raise ValueError("label file must start with a 'label: <name>' header")
                label = line[len("label:"):].strip()
                if not label:
                    raise ValueError("empty label name")
                continue
            ids.add(line)
    if label is None:
        raise ValueError("label file has no header")
    return LabelFile(label=label, user_ids=frozenset(ids))


def _mean(values: list[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _aggregate(
    name: str,
    members: list[str],
    corpus: Corpus,
    neg_ws: WordSet,
    pos_ws: WordSet,
    splits: SplitGraphs,
    simple: SimpleGraph,
    unresolved: tuple[str, ...] = (),
) -> GroupRow:
    neg_recip = node_reciprocity(splits.u_neg)
    nonneg_recip = node_reciprocity(splits.u_nonneg)
    neg_in = degree_vector(splits.u_neg, "in", weighted=True).values
    neg_out = degree_vector(splits.u_neg, "out", weighted=True).values
    nonneg_in = degree_vector(splits.u_nonneg, "in", weighted=True).values
    nonneg_out = degree_vector(splits.u_nonneg, "out", weighted=True).values
    local_clust = clustering(simple).per_node

    content = [user_content_stats(corpus[u], neg_ws, pos_ws) for u in members]
    total_likes = [float(corpus[u].total_likes) for u in members]
    total_answers = sum(s.n_answers for s in content)
    return GroupRow(
        name=name,
        count=len(members),
        mean_neg_reciprocity=_mean([neg_recip.get(u, 0.0) for u in members]),
        mean_nonneg_reciprocity=_mean([nonneg_recip.get(u, 0.0) for u in members]),
        mean_neg_in_degree=_mean([neg_in.get(u, 0.0) for u in members]),
        mean_nonneg_in_degree=_mean([nonneg_in.get(u, 0.0) for u in members]),
        mean_neg_out_degree=_mean([neg_out.get(u, 0.0) for u in members]),
        mean_nonneg_out_degree=_mean([nonneg_out.get(u, 0.0) for u in members]),
        mean_total_likes=_mean(total_likes),
        likes_per_answer=(sum(total_likes) / total_answers) if total_answers else None,
        mean_local_clustering=_mean([local_clust.get(u, 0.0) for u in members]),
        mean_answers=_mean([float(s.n_answers) for s in content]),
        mean_neg_questions=_mean([float(s.n_neg_questions) for s in content]),
        mean_pos_questions=_mean([float(s.n_pos_questions) for s in content]),
        mean_neg_words=_mean([float(s.n_neg_words) for s in content]),
        mean_pos_words=_mean([float(s.n_pos_words) for s in content]),
        unresolved_ids=unresolved,
    )


def group_report(
    corpus: Corpus,
    labels: dict[str, str],
    neg_ws: WordSet,
    pos_ws: WordSet,
    splits: SplitGraphs,
    simple: SimpleGraph,
) -> GroupReport:
    """One aggregate row per group. Empty groups get count 0 and null means."""
    members: dict[str, list[str]] = {g: [] for g in GROUPS}
    for user, group in sorted(labels.items()):
        members[group].append(user)
    rows = tuple(
        _aggregate(g, members[g], corpus, neg_ws, pos_ws, splits, simple) for g in GROUPS
    )
    return GroupReport(rows=rows)


def labeled_report(
    corpus: Corpus,
    label_file: LabelFile,
    neg_ws: WordSet,
    pos_ws: WordSet,
    splits: SplitGraphs,
    simple: SimpleGraph,
) -> GroupRow:
    """Aggregate row over an externally labeled user set; unknown ids are
    reported, not fatal."""
    resolved = sorted(u for u in label_file.user_ids if u in corpus)
    unresolved = tuple(sorted(u for u in label_file.user_ids if u not in corpus))
    if not resolved:
        raise ValueError(f"label set {label_file.label!r} has no users in the corpus")
    return _aggregate(
        label_file.label, resolved, corpus, neg_ws, pos_ws, splits, simple, unresolved
    )

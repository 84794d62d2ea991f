"""Like-based directed interaction graph and its metric battery.

Edges carry a weight vector (n_neg, n_nonneg): liker i -> profile owner j,
counting how many of j's top-k most-liked questions that i liked are
negative vs non-negative with respect to the selected negative word set.
Only fully-sampled users participate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .corpus import Corpus, tokenize
from .wordgraph import WordSet


@dataclass(frozen=True)
class InteractionGraph:
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], tuple[int, int]]  # (src, dst) -> (n_neg, n_nonneg)
    top_k: int


@dataclass(frozen=True)
class DirectedGraph:
    """Scalar-weighted directed graph (one component of the split)."""

    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], int]

    def successors(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {u: set() for u in self.nodes}
        for (i, j) in self.edges:
            out[i].add(j)
        return out


@dataclass(frozen=True)
class SplitGraphs:
    u_neg: DirectedGraph
    u_nonneg: DirectedGraph


@dataclass(frozen=True)
class DegreeVector:
    direction: str  # "in" | "out"
    weighted: bool
    values: dict[str, float]


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected binarized view of the interaction graph."""

    nodes: tuple[str, ...]
    neighbors: dict[str, set[str]] = field(default_factory=dict)

    @property
    def n_edges(self) -> int:
        return sum(len(v) for v in self.neighbors.values()) // 2


@dataclass(frozen=True)
class ClusteringResult:
    global_coefficient: float
    mean_local: float
    per_node: dict[str, float]


@dataclass(frozen=True)
class MetricsReport:
    mean_reciprocity: float
    neg_reciprocity: float
    nonneg_reciprocity: float
    ccdf_curves: dict[str, list[tuple[float, float]]]
    overlap_curve: list[tuple[float, float]]  # (x percent, overlap percent)
    ratio_cdf: list[tuple[float, float]]
    within_20pct: float
    clustering: ClusteringResult
    clustering_vs_degree: list[tuple[int, float]]
    recip_vs_outdeg: dict[str, list[tuple[int, int, float, int]]]
    likes_answers_corr_below: Optional[float]
    likes_answers_corr_above: Optional[float]


def build_interaction_graph(
    corpus: Corpus, neg_words: WordSet, top_k: int = 15
) -> InteractionGraph:
    """Build the directed like graph over fully-sampled users.

    For each fully-sampled profile j, only the top_k most-liked questions
    contribute. Self-likes and likers without a fully-sampled profile in the
    corpus are skipped.
    """
    nodes = tuple(sorted(p.owner for p in corpus if p.fully_sampled))
    node_set = set(nodes)
    edges: dict[tuple[str, str], list[int]] = {}
    for j in nodes:
        for question in corpus[j].questions[:top_k]:
            is_neg = any(t in neg_words for t in tokenize(question.text))
            slot = 0 if is_neg else 1
            for i in question.likers:
                if i == j or i not in node_set:
                    continue
                weight = edges.setdefault((i, j), [0, 0])
                weight[slot] += 1
    return InteractionGraph(
        nodes=nodes,
        edges={k: (v[0], v[1]) for k, v in sorted(edges.items())},
        top_k=top_k,
    )


def split_graph(graph: InteractionGraph) -> SplitGraphs:
    """Componentwise split into negative / non-negative matrices; zero
    entries dropped."""
    neg = {k: w[0] for k, w in graph.edges.items() if w[0] > 0}
    nonneg = {k: w[1] for k, w in graph.edges.items() if w[1] > 0}
    return SplitGraphs(
        u_neg=DirectedGraph(nodes=graph.nodes, edges=neg),
        u_nonneg=DirectedGraph(nodes=graph.nodes, edges=nonneg),
    )


def merge_splits(splits: SplitGraphs) -> dict[tuple[str, str], tuple[int, int]]:
    """Inverse of split_graph, for round-trip checking."""
    merged: dict[tuple[str, str], list[int]] = {}
    for (key, w) in splits.u_neg.edges.items():
        merged.setdefault(key, [0, 0])[0] = w
    for (key, w) in splits.u_nonneg.edges.items():
        merged.setdefault(key, [0, 0])[1] = w
    return {k: (v[0], v[1]) for k, v in merged.items()}


def degree_vector(graph: DirectedGraph, direction: str, weighted: bool) -> DegreeVector:
    if direction not in ("in", "out"):
        raise ValueError("direction must be 'in' or 'out'")
    values: dict[str, float] = {u: 0 for u in graph.nodes}
    for (i, j), w in graph.edges.items():
        node = j if direction == "in" else i
        values[node] += w if weighted else 1
    return DegreeVector(direction=direction, weighted=weighted, values=values)


def ccdf(values: list[float]) -> list[tuple[float, float]]:
    """Points (k, fraction of values >= k) for each distinct k ascending.

    The first point is always (min, 1.0) and the curve is monotone
    non-increasing.
    """
    if not values:
        raise ValueError("ccdf requires a non-empty value list")
    n = len(values)
    ordered = sorted(values)
    curve: list[tuple[float, float]] = []
    i = 0
    while i < n:
        k = ordered[i]
        curve.append((k, (n - i) / n))
        while i < n and ordered[i] == k:
            i += 1
    return curve


def reciprocity(graph: DirectedGraph) -> float:
    """Fraction of directed edges whose reverse also exists (binarized)."""
    if not graph.edges:
        raise ValueError("reciprocity is undefined for a zero-edge graph")
    present = set(graph.edges)
    reciprocated = sum(1 for (i, j) in present if (j, i) in present)
    return reciprocated / len(present)


def node_reciprocity(graph: DirectedGraph) -> dict[str, float]:
    """Per node: fraction of its out-edges that are reciprocated.

    Nodes with no out-edges are assigned 0 (callers that need to exclude
    them can filter on out-degree).
    """
    present = set(graph.edges)
    out_edges: dict[str, int] = {u: 0 for u in graph.nodes}
    recip: dict[str, int] = {u: 0 for u in graph.nodes}
    for (i, j) in present:
        out_edges[i] += 1
        if (j, i) in present:
            recip[i] += 1
    return {u: (recip[u] / out_edges[u]) if out_edges[u] else 0.0 for u in graph.nodes}


def mean_reciprocity_by_outdegree(graph: DirectedGraph) -> list[tuple[int, int, float, int]]:
    """Bin nodes by unweighted out-degree into powers-of-2 bins [1,2),[2,4),...
    and average per-node reciprocity in each bin.

    Returns rows (bin_lo, bin_hi, mean_reciprocity, n_nodes); empty bins and
    out-degree-0 nodes are omitted.
    """
    if not graph.edges:
        return []
    out_deg = degree_vector(graph, "out", weighted=False).values
    per_node = node_reciprocity(graph)
    bins: dict[int, list[float]] = {}
    for u in graph.nodes:
        d = int(out_deg[u])
        if d < 1:
            continue
        bins.setdefault(d.bit_length() - 1, []).append(per_node[u])
    return [
        (1 << b, 1 << (b + 1), sum(vals) / len(vals), len(vals))
        for b, vals in sorted(bins.items())
    ]


def top_overlap(in_deg: DegreeVector, out_deg: DegreeVector, x: float) -> float:
    """Percentage of common users among the top x% by in-degree and the top
    x% by out-degree (set size ceil(x% * N), ties by UserId ascending)."""
    if not (0 < x <= 100):
        raise ValueError("x must be in (0, 100]")
    nodes = sorted(in_deg.values)
    if not nodes:
        raise ValueError("empty node set")
    if set(out_deg.values) != set(in_deg.values):
        raise ValueError("in- and out-degree vectors cover different node sets")
    m = math.ceil(x / 100 * len(nodes))
    top_in = set(sorted(nodes, key=lambda u: (-in_deg.values[u], u))[:m])
    top_out = set(sorted(nodes, key=lambda u: (-out_deg.values[u], u))[:m])
    return 100.0 * len(top_in & top_out) / m


def degree_ratio_cdf(
    out_deg: DegreeVector, in_deg: DegreeVector
) -> tuple[list[tuple[float, float]], float]:
    """CDF of out-degree/in-degree over nodes with positive in-degree, plus
    the fraction of those nodes with ratio inside the multiplicative band
    [0.8, 1.25]."""
    ratios = sorted(
        out_deg.values[u] / in_deg.values[u]
        for u in in_deg.values
        if in_deg.values[u] > 0
    )
    if not ratios:
        raise ValueError("no node with positive in-degree")
    n = len(ratios)
    curve: list[tuple[float, float]] = []
    i = 0
    while i < n:
        r = ratios[i]
        while i < n and ratios[i] == r:
            i += 1
        curve.append((r, i / n))
    within = sum(1 for r in ratios if 0.8 <= r <= 1.25) / n
    return curve, within


def to_simple(graph: InteractionGraph) -> SimpleGraph:
    """Binarize and symmetrize: an undirected edge wherever a like exists in
    either direction."""
    neighbors: dict[str, set[str]] = {u: set() for u in graph.nodes}
    for (i, j) in graph.edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    return SimpleGraph(nodes=graph.nodes, neighbors=neighbors)


def clustering(simple: SimpleGraph) -> ClusteringResult:
    """Local clustering per node (0 when degree < 2), their mean, and global
    transitivity 3*triangles / connected-triples."""
    per_node: dict[str, float] = {}
    closed_triples = 0  # summed over centers: each triangle counted 3x
    total_triples = 0
    for u in simple.nodes:
        nbrs = simple.neighbors.get(u, set())
        k = len(nbrs)
        if k < 2:
            per_node[u] = 0.0
            continue
        links = 0
        nbr_list = list(nbrs)
        for a in range(len(nbr_list)):
            na = simple.neighbors[nbr_list[a]]
            for b in range(a + 1, len(nbr_list)):
                if nbr_list[b] in na:
                    links += 1
        per_node[u] = 2.0 * links / (k * (k - 1))
        closed_triples += links
        total_triples += k * (k - 1) // 2
    n = len(simple.nodes)
    mean_local = sum(per_node.values()) / n if n else 0.0
    global_coefficient = closed_triples / total_triples if total_triples else 0.0
    return ClusteringResult(
        global_coefficient=global_coefficient, mean_local=mean_local, per_node=per_node
    )


def mean_local_clustering_vs_degree(simple: SimpleGraph) -> list[tuple[int, float]]:
    """Average local clustering over nodes grouped by degree, ascending."""
    result = clustering(simple)
    groups: dict[int, list[float]] = {}
    for u in simple.nodes:
        groups.setdefault(len(simple.neighbors.get(u, set())), []).append(result.per_node[u])
    return [(d, sum(vals) / len(vals)) for d, vals in sorted(groups.items())]


def _pearson(xs: list[float], ys: list[float]) -> Optional[float]:
    n = len(xs)
    if n < 2:
        return None
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0 or syy == 0:
        return None
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


def likes_answers_correlation(
    corpus: Corpus, split: int = 50
) -> tuple[Optional[float], Optional[float]]:
    """Pearson correlation of (answered questions, total likes) per profile,
    computed separately below and at-or-above the question-count split.

    A side with fewer than 2 profiles or zero variance yields None.
    """
    below_x: list[float] = []
    below_y: list[float] = []
    above_x: list[float] = []
    above_y: list[float] = []
    for profile in corpus:
        n_q = len(profile.questions)
        likes = profile.total_likes
        if n_q < split:
            below_x.append(n_q)
            below_y.append(likes)
        else:
            above_x.append(n_q)
            above_y.append(likes)
    return _pearson(below_x, below_y), _pearson(above_x, above_y)


def compute_metrics(
    corpus: Corpus,
    graph: InteractionGraph,
    splits: SplitGraphs,
    overlap_points: tuple[float, ...] = (1, 2, 5, 10, 20, 50, 100),
    likes_split: int = 50,
) -> MetricsReport:
    """Full metric battery over a built interaction graph."""
    merged = DirectedGraph(
        nodes=graph.nodes, edges={k: sum(w) for k, w in graph.edges.items()}
    )

    def safe_recip(g: DirectedGraph) -> float:
        return reciprocity(g) if g.edges else 0.0

    ccdf_curves: dict[str, list[tuple[float, float]]] = {}
    for name, g in (("neg", splits.u_neg), ("nonneg", splits.u_nonneg)):
        for direction in ("in", "out"):
            deg = degree_vector(g, direction, weighted=True)
            positive = [v for v in deg.values.values() if v > 0]
            if positive:
                ccdf_curves[f"{name}_{direction}"] = ccdf(positive)

    in_deg = degree_vector(merged, "in", weighted=True)
    out_deg = degree_vector(merged, "out", weighted=True)
    overlap_curve = (
        [(x, top_overlap(in_deg, out_deg, x)) for x in overlap_points] if merged.nodes else []
    )
    try:
        ratio_cdf, within = degree_ratio_cdf(out_deg, in_deg)
    except ValueError:
        ratio_cdf, within = [], 0.0

    simple = to_simple(graph)
    clust = clustering(simple)
    corr_below, corr_above = likes_answers_correlation(corpus, split=likes_split)
    return MetricsReport(
        mean_reciprocity=safe_recip(merged),
        neg_reciprocity=safe_recip(splits.u_neg),
        nonneg_reciprocity=safe_recip(splits.u_nonneg),
        ccdf_curves=ccdf_curves,
        overlap_curve=overlap_curve,
        ratio_cdf=ratio_cdf,
        within_20pct=within,
        clustering=clust,
        clustering_vs_degree=mean_local_clustering_vs_degree(simple),
        recip_vs_outdeg={
            "neg": mean_reciprocity_by_outdegree(splits.u_neg),
            "nonneg": mean_reciprocity_by_outdegree(splits.u_nonneg),
        },
        likes_answers_corr_below=corr_below,
        likes_answers_corr_above=corr_above,
    )

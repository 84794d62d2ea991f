"""Word/user bipartite graph, one-mode projections, and centrality-based
word selection.

The incidence matrix is binary at profile granularity: a word is linked to
a user if it appears in at least one question on that user's profile, so
projected edge weights count shared profiles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .corpus import Corpus, Lexicon, tokenize


class ConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True)
class BipartiteGraph:
    """Binary word x user incidence matrix (rows words, cols users)."""

    words: tuple[str, ...]
    users: tuple[str, ...]
    incidence: sp.csr_matrix  # shape (len(words), len(users)), dtype int64, entries {0,1}


@dataclass(frozen=True)
class OneModeGraph:
    """Symmetric integer-weighted projection with zero diagonal."""

    nodes: tuple[str, ...]
    adjacency: sp.csr_matrix  # square, symmetric, int64, zero diagonal

    def node_index(self, name: str) -> int:
        try:
            return self.nodes.index(name)
        except ValueError:
            raise KeyError(f"node {name!r} not in graph") from None


# the word-word and user-user projections share one representation
WordGraph = OneModeGraph


@dataclass(frozen=True)
class CentralityScores:
    scores: dict[str, float]

    def __getitem__(self, node: str) -> float:
        return self.scores[node]


@dataclass(frozen=True)
class WordSet:
    polarity: str
    words: tuple[str, ...]  # descending score, ties lexicographic
    scores: dict[str, float]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.scores

    def __iter__(self):
        return iter(self.words)


@dataclass(frozen=True)
class FrequencyVector:
    core: str
    entries: tuple[tuple[str, float], ...]  # fixed to the WordSet order
    n_profiles: int


def build_bipartite(corpus: Corpus, lexicon: Lexicon) -> BipartiteGraph:
    """B[w][u] = 1 iff word w (from the lexicon) occurs in any question on
    u's profile. Words never observed keep all-zero rows."""
    words = tuple(sorted(lexicon.words))
    users = tuple(sorted(corpus.profiles))
    word_index = {w: i for i, w in enumerate(words)}
    rows: list[int] = []
    cols: list[int] = []
    for col, user in enumerate(users):
        seen: set[int] = set()
        for question in corpus[user].questions:
            for token in tokenize(question.text):
                idx = word_index.get(token)
                if idx is not None:
                    seen.add(idx)
        rows.extend(seen)
        cols.extend([col] * len(seen))
    incidence = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)),
        shape=(len(words), len(users)),
    )
    return BipartiteGraph(words=words, users=users, incidence=incidence)


def _project(matrix: sp.csr_matrix, nodes: tuple[str, ...]) -> OneModeGraph:
    adjacency = (matrix @ matrix.T).tocsr()
    adjacency.setdiag(0)
    adjacency.eliminate_zeros()
    return OneModeGraph(nodes=nodes, adjacency=adjacency)


def project_words(bipartite: BipartiteGraph) -> WordGraph:
    """Word-word projection: weights count profiles sharing both words."""
    return _project(bipartite.incidence, bipartite.words)


def project_users(bipartite: BipartiteGraph) -> OneModeGraph:
    """User-user projection: weights count words shared between profiles."""
    return _project(bipartite.incidence.T.tocsr(), bipartite.users)


def eigenvector_centrality(
    graph: OneModeGraph, tol: float = 1e-10, max_iter: int = 10000
) -> CentralityScores:
    """Power iteration from a uniform start vector, rescaled to max entry 1.

    Iteration runs per connected component so scores never mix across
    components; only components whose dominant eigenvalue attains the global
    maximum keep nonzero scores (ties within 1e-12 relative all survive).
    Isolated nodes and zero-edge graphs score exactly 0.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    n = len(graph.nodes)
    values = np.zeros(n)
    if n == 0 or graph.adjacency.nnz == 0:
        return CentralityScores(scores={w: 0.0 for w in graph.nodes})

    n_comp, labels = connected_components(graph.adjacency, directed=False)
    results: list[tuple[float, np.ndarray, np.ndarray]] = []  # (eigenvalue, idx, vector)
    for comp in range(n_comp):
        idx = np.flatnonzero(labels == comp)
        if len(idx) == 1:
            continue  # isolated node (zero diagonal => no self loop)
        sub = graph.adjacency[np.ix_(idx, idx)].tocsr().astype(np.float64)
        # iterate on A + I: same eigenvectors, but strictly dominant Perron
        # eigenvalue, so bipartite components (spectrum symmetric about 0)
        # cannot oscillate
        sub = (sub + sp.identity(len(idx), format="csr")).tocsr()
        v = np.ones(len(idx))
        eigenvalue = 0.0
        residual = np.inf
        for _ in range(max_iter):
            w = sub @ v
            eigenvalue = float(w.max())
            w /= eigenvalue
            residual = float(np.max(np.abs(w - v)))
            v = w
            if residual < tol:
                break
        else:
            raise ConvergenceError(max_iter, residual)
        results.append((eigenvalue, idx, v))

    if results:
        top = max(r[0] for r in results)
        for eigenvalue, idx, v in results:
            if eigenvalue >= top * (1.0 - 1e-12):
                values[idx] = v / v.max()
    return CentralityScores(scores={w: float(values[i]) for i, w in enumerate(graph.nodes)})


def select_top_words(
    scores: CentralityScores, polarity: str, threshold: float = 0.5, cap: int = 80
) -> WordSet:
    """Keep words with score strictly above threshold, at most `cap` of them,
    ordered by descending score with lexicographic tie-break."""
    candidates = [(w, s) for w, s in scores.scores.items() if s > threshold]
    candidates.sort(key=lambda ws: (-ws[1], ws[0]))
    selected = candidates[:cap]
    if not selected:
        raise ValueError(
            f"no words with centrality > {threshold}; threshold too high for this corpus"
        )
    return WordSet(
        polarity=polarity,
        words=tuple(w for w, _ in selected),
        scores={w: s for w, s in selected},
    )


def word_neighborhood(
    graph: WordGraph, core: str, scores: CentralityScores
) -> list[tuple[str, int, float]]:
    """Edges incident to `core`: (neighbor, shared-profile weight, neighbor
    centrality), sorted by descending weight then neighbor name."""
    i = graph.node_index(core)
    row = graph.adjacency.getrow(i)
    records = [
        (graph.nodes[j], int(w), scores.scores.get(graph.nodes[j], 0.0))
        for j, w in zip(row.indices, row.data)
    ]
    records.sort(key=lambda r: (-r[1], r[0]))
    return records


def cooccurrence_distribution(corpus: Corpus, core: str, word_set: WordSet) -> FrequencyVector:
    """Mean occurrence count of each selected word over profiles whose
    question tokens contain `core`. Entry order follows the WordSet order so
    the x-axis is constant across plots."""
    if len(word_set) == 0:
        raise ValueError("word set is empty")
    tracked = set(word_set.words)
    totals = {w: 0 for w in word_set.words}
    n_matching = 0
    for profile in corpus:
        counts = {w: 0 for w in word_set.words}
        has_core = False
        for question in profile.questions:
            for token in tokenize(question.text):
                if token == core:
                    has_core = True
                if token in tracked:
                    counts[token] += 1
        if has_core:
            n_matching += 1
            for w, c in counts.items():
                totals[w] += c
    if n_matching == 0:
        raise ValueError(f"no profile contains the word {core!r}")
    entries = tuple((w, totals[w] / n_matching) for w in word_set.words)
    return FrequencyVector(core=core, entries=entries, n_profiles=n_matching)

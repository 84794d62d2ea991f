"""Synthetic corpus generation with planted group structure, and a
snowball-crawl simulator over ground-truth corpora.

All randomness flows through a splitmix64 generator (state advance by the
golden-gamma constant, two xor-multiply finalizer rounds) so corpora are
reproducible bit-for-bit across platforms and implementations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, Profile, Question
from .wordgraph import WordSet

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Portable 64-bit RNG: splitmix64 state advance and finalizer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = _MASK64 - (_MASK64 + 1) % n
        while True:
            r = self.next_u64()
            if r <= limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.randbelow(hi - lo + 1)

    def sample(self, population: list[str], k: int) -> list[str]:
        """k distinct elements, order of draw preserved."""
        if k > len(population):
            raise ValueError("sample larger than population")
        pool = list(population)
        out = []
        for _ in range(k):
            idx = self.randbelow(len(pool))
            out.append(pool.pop(idx))
        return out


GROUP_ORDER = ("HN", "HP", "PN", "OTHR")

# minimum questions needed to realize each planted label
_MIN_QUESTIONS = {"HN": 3, "HP": 11, "PN": 8, "OTHR": 0}

_FILLER = (
    "how", "was", "your", "day", "today", "what", "do", "you", "think",
    "about", "school", "music", "movie", "game", "weather", "weekend",
    "favorite", "color", "food", "book", "team", "song", "show", "place",
    "time", "really", "tell", "me", "more", "why", "when", "where",
)


@dataclass(frozen=True)
class GenParams:
    n_users: int
    group_mix: dict[str, float]
    questions_per_user: tuple[int, int]  # inclusive range; fixed = (k, k)
    like_rate: float
    neg_vocab: tuple[str, ...]
    pos_vocab: tuple[str, ...]
    rng_seed: int

    def validate(self) -> None:
        if self.n_users < 1:
            raise ValueError("n_users must be >= 1")
        if set(self.group_mix) - set(GROUP_ORDER):
            raise ValueError(f"unknown groups in mix: {set(self.group_mix) - set(GROUP_ORDER)}")
        if abs(sum(self.group_mix.values()) - 1.0) > 1e-12:
            raise ValueError("group mix must sum to 1")
        if any(f < 0 for f in self.group_mix.values()):
            raise ValueError("group mix fractions must be nonnegative")
        lo, hi = self.questions_per_user
        if lo < 0 or hi < lo:
            raise ValueError("invalid questions_per_user range")
        if self.like_rate < 0:
            raise ValueError("like_rate must be nonnegative")
        for group, needed in _MIN_QUESTIONS.items():
            if self.group_mix.get(group, 0.0) > 0 and hi < needed:
                raise ValueError(
                    f"infeasible params: group {group} needs at least {needed} "
                    f"questions per user but questions_per_user max is {hi}"
                )
        if not self.neg_vocab and any(
            self.group_mix.get(g, 0.0) > 0 for g in ("HN", "PN")
        ):
            raise ValueError("neg_vocab required when HN or PN fraction > 0")
        if not self.pos_vocab and any(
            self.group_mix.get(g, 0.0) > 0 for g in ("HP", "PN")
        ):
            raise ValueError("pos_vocab required when HP or PN fraction > 0")


@dataclass(frozen=True)
class SampledCorpus:
    corpus: Corpus
    crawl_order: tuple[str, ...]
    frontier: frozenset[str]


def quota_counts(mix: dict[str, float], n: int) -> dict[str, int]:
    """Largest-remainder allocation of n users to groups; deterministic."""
    floors = {g: int(mix.get(g, 0.0) * n) for g in GROUP_ORDER}
    remainder = n - sum(floors.values())
    fractional = sorted(
        GROUP_ORDER,
        key=lambda g: (-(mix.get(g, 0.0) * n - floors[g]), GROUP_ORDER.index(g)),
    )
    for g in fractional[:remainder]:
        floors[g] += 1
    return floors


def _question_counts(label: str, n_q: int, rng: SplitMix64) -> tuple[int, int]:
    """Pick (n_neg, n_pos) question counts realizing the planted label."""
    if label == "HN":
        return rng.randint(3, max(3, min(n_q, 6))), 0
    if label == "PN":
        neg = rng.randint(3, max(3, min(n_q - 5, 5)))
        pos = rng.randint(5, max(5, min(n_q - neg, 9)))
        return neg, pos
    if label == "HP":
        pos = rng.randint(11, max(11, min(n_q, 14)))
        neg = rng.randint(0, min(2, n_q - pos))
        return neg, pos
    # OTHR: neg <= 2 and pos <= 10 falls through every predicate
    neg = rng.randint(0, min(2, n_q))
    pos = rng.randint(0, min(4, n_q - neg))
    return neg, pos


def _make_text(vocab: tuple[str, ...], filler: tuple[str, ...], rng: SplitMix64) -> str:
    words = [filler[rng.randbelow(len(filler))] for _ in range(rng.randint(2, 5))]
    for _ in range(rng.randint(1, 2)):
        words.append(vocab[rng.randbelow(len(vocab))])
    return " ".join(words)


def _neutral_text(filler: tuple[str, ...], rng: SplitMix64) -> str:
    return " ".join(filler[rng.randbelow(len(filler))] for _ in range(rng.randint(3, 6)))


def generate_corpus(params: GenParams) -> tuple[Corpus, dict[str, str]]:
    """Deterministically generate a corpus whose users classify exactly to
    their planted group labels.

    Returns the corpus and the planted label per user. Group sizes follow
    largest-remainder quotas, not sampling.
    """
    params.validate()
    rng = SplitMix64(params.rng_seed)
    counts = quota_counts(params.group_mix, params.n_users)
    labels: dict[str, str] = {}
    user_ids = [f"u{i:05d}" for i in range(params.n_users)]
    i = 0
    for group in GROUP_ORDER:
        for _ in range(counts[group]):
            labels[user_ids[i]] = group
            i += 1

    vocab_taboo = set(params.neg_vocab) | set(params.pos_vocab)
    filler = tuple(w for w in _FILLER if w not in vocab_taboo)
    lo, hi = params.questions_per_user
    max_likes = max(0, round(2 * params.like_rate))

    profiles: dict[str, Profile] = {}
    for owner in user_ids:
        label = labels[owner]
        n_q = max(rng.randint(lo, hi), _MIN_QUESTIONS[label])
        n_neg, n_pos = _question_counts(label, n_q, rng)
        texts = (
            [_make_text(params.neg_vocab, filler, rng) for _ in range(n_neg)]
            + [_make_text(params.pos_vocab, filler, rng) for _ in range(n_pos)]
            + [_neutral_text(filler, rng) for _ in range(n_q - n_neg - n_pos)]
        )
        others = [u for u in user_ids if u != owner]
        questions = []
        for text in texts:
            n_likes = rng.randint(0, max_likes) if max_likes and others else 0
            likers = tuple(rng.sample(others, min(n_likes, len(others))))
            questions.append(
                Question(text=text, likers=likers, like_count=len(likers))
            )
        questions.sort(key=lambda q: -q.like_count)
        profiles[owner] = Profile(owner=owner, questions=tuple(questions), fully_sampled=True)
    return Corpus(profiles=profiles), labels


def snowball_sample(
    ground_truth: Corpus, seeds: list[str], budget: int
) -> SampledCorpus:
    """Breadth-first crawl over the likers-of-my-questions relation.

    Crawling a node reveals its full profile (all questions with complete
    liker lists). The crawl stops when `budget` nodes are crawled or the
    frontier empties. Frontier nodes are included as empty stub profiles
    flagged not fully sampled. Each BFS level is visited in UserId order.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    for seed in seeds:
        if seed not in ground_truth:
            raise ValueError(f"seed {seed!r} not in ground truth")
        if ground_truth[seed].total_likes == 0:
            raise ValueError(f"seed {seed!r} has zero liked questions")

    crawled: set[str] = set()
    crawl_order: list[str] = []
    enqueued: set[str] = set(seeds)
    level: list[str] = sorted(set(seeds))
    next_level: set[str] = set()
    while len(crawled) < budget and level:
        for node in level:
            if len(crawled) >= budget:
                break
            crawled.add(node)
            crawl_order.append(node)
            for question in ground_truth[node].questions:
                for liker in question.likers:
                    if liker not in enqueued:
                        enqueued.add(liker)
                        next_level.add(liker)
        level = sorted(next_level - crawled)
        next_level = set()

    frontier = frozenset(enqueued - crawled)
    profiles: dict[str, Profile] = {}
    for node in crawl_order:
        gt = ground_truth[node]
        profiles[node] = Profile(owner=node, questions=gt.questions, fully_sampled=True)
    for node in sorted(frontier):
        profiles[node] = Profile(owner=node, questions=(), fully_sampled=False)
    return SampledCorpus(
        corpus=Corpus(profiles=profiles),
        crawl_order=tuple(crawl_order),
        frontier=frontier,
    )


def vocab_word_set(words: tuple[str, ...] | list[str], polarity: str) -> WordSet:
    """Wrap a plain vocabulary as a WordSet (unit scores), for use by the
    segmentation and interaction modules on synthetic data."""
    ordered = tuple(sorted(set(words)))
    return WordSet(polarity=polarity, words=ordered, scores={w: 1.0 for w in ordered})

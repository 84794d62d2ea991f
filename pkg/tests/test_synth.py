import io

import pytest

from askgraph.corpus import Corpus, Profile, Question, save_corpus
from askgraph.segmentation import classify_corpus
from askgraph.synth import (
    GenParams,
    SplitMix64,
    generate_corpus,
    quota_counts,
    snowball_sample,
    vocab_word_set,
)

NEG_VOCAB = ("ugly", "hate", "stupid", "fat")
POS_VOCAB = ("nice", "sweet", "lovely", "cool")


def params(**overrides):
    base = dict(
        n_users=40,
        group_mix={"HN": 0.25, "HP": 0.25, "PN": 0.25, "OTHR": 0.25},
        questions_per_user=(11, 20),
        like_rate=2.0,
        neg_vocab=NEG_VOCAB,
        pos_vocab=POS_VOCAB,
        rng_seed=12345,
    )
    base.update(overrides)
    return GenParams(**base)


def corpus_bytes(corpus):
    import tempfile, pathlib
    with tempfile.TemporaryDirectory() as d:
        path = pathlib.Path(d) / "c.jsonl"
        save_corpus(corpus, path)
        return path.read_bytes()


class TestSplitMix64:
    def test_reference_vector_seed_zero(self):
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(3)] == [
            0xE220A8397B1DCDAF,
            0x6E789E6AA1B965F4,
            0x06C45D188009454F,
        ]

    def test_randint_bounds(self):
        rng = SplitMix64(99)
        draws = [rng.randint(3, 7) for _ in range(200)]
        assert set(draws) == {3, 4, 5, 6, 7}

    def test_sample_distinct(self):
        rng = SplitMix64(5)
        pop = [f"x{i}" for i in range(20)]
        out = rng.sample(pop, 10)
        assert len(set(out)) == 10


class TestQuota:
    def test_exact_allocation(self):
        counts = quota_counts({"HN": 0.1, "HP": 0.2, "PN": 0.2, "OTHR": 0.5}, 1000)
        assert counts == {"HN": 100, "HP": 200, "PN": 200, "OTHR": 500}

    def test_sums_to_n(self):
        counts = quota_counts({"HN": 1 / 3, "HP": 1 / 3, "PN": 1 / 3, "OTHR": 0.0}, 10)
        assert sum(counts.values()) == 10


class TestGenerateCorpus:
    def test_same_seed_byte_identical(self):
        c1, _ = generate_corpus(params())
        c2, _ = generate_corpus(params())
        assert corpus_bytes(c1) == corpus_bytes(c2)

    def test_different_seeds_differ(self):
        c1, _ = generate_corpus(params(rng_seed=1))
        c2, _ = generate_corpus(params(rng_seed=2))
        assert corpus_bytes(c1) != corpus_bytes(c2)

    def test_all_hn_mix_classifies_hn(self):
        p = params(n_users=10, group_mix={"HN": 1.0})
        corp, labels = generate_corpus(p)
        pred = classify_corpus(
            corp, vocab_word_set(NEG_VOCAB, "negative"), vocab_word_set(POS_VOCAB, "positive")
        )
        assert set(pred.values()) == {"HN"}
        assert pred == labels

    def test_planted_labels_recovered(self):
        corp, labels = generate_corpus(params(n_users=100))
        pred = classify_corpus(
            corp, vocab_word_set(NEG_VOCAB, "negative"), vocab_word_set(POS_VOCAB, "positive")
        )
        assert pred == labels

    def test_infeasible_params_rejected(self):
        with pytest.raises(ValueError, match="infeasible"):
            GenParams(
                n_users=10, group_mix={"HN": 1.0}, questions_per_user=(1, 2),
                like_rate=1.0, neg_vocab=NEG_VOCAB, pos_vocab=POS_VOCAB, rng_seed=1,
            ).validate()

    def test_mix_must_sum_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            params(group_mix={"HN": 0.5, "HP": 0.4}).validate()

    def test_questions_sorted_by_likes(self):
        corp, _ = generate_corpus(params(n_users=10))
        for p in corp:
            likes = [q.like_count for q in p.questions]
            assert likes == sorted(likes, reverse=True)


def chain_corpus():
    """b likes a's question; c likes b's question."""
    return Corpus({
        "a": Profile("a", (Question("q on a", likers=("b",), like_count=1),)),
        "b": Profile("b", (Question("q on b", likers=("c",), like_count=1),)),
        "c": Profile("c", (Question("q on c", likers=(), like_count=0),)),
    })


class TestSnowballSample:
    def test_full_clique_crawled(self):
        corp = Corpus({
            u: Profile(u, (Question("q", likers=tuple(sorted({"a", "b", "c"} - {u})),
                                    like_count=2),))
            for u in ("a", "b", "c")
        })
        s = snowball_sample(corp, ["a"], budget=3)
        assert set(s.crawl_order) == {"a", "b", "c"}
        assert s.frontier == frozenset()

    def test_chain_bfs_trace(self):
        s = snowball_sample(chain_corpus(), ["a"], budget=2)
        assert s.crawl_order == ("a", "b")
        assert s.frontier == frozenset({"c"})
        assert not s.corpus["c"].fully_sampled
        assert s.corpus["a"].fully_sampled

    def test_budget_covers_reachable_set(self):
        s = snowball_sample(chain_corpus(), ["a"], budget=100)
        assert s.frontier == frozenset()
        assert s.crawl_order == ("a", "b", "c")

    def test_crawled_in_edges_match_ground_truth(self):
        gt = chain_corpus()
        s = snowball_sample(gt, ["a"], budget=2)
        for node in s.crawl_order:
            sampled_likers = [q.likers for q in s.corpus[node].questions]
            truth_likers = [q.likers for q in gt[node].questions]
            assert sampled_likers == truth_likers

    def test_seed_with_zero_likes_rejected(self):
        with pytest.raises(ValueError, match="zero liked"):
            snowball_sample(chain_corpus(), ["c"], budget=1)

    def test_unknown_seed_rejected(self):
        with pytest.raises(ValueError, match="not in ground truth"):
            snowball_sample(chain_corpus(), ["zzz"], budget=1)

    def test_levels_visited_in_userid_order(self):
        corp = Corpus({
            "s": Profile("s", (Question("q", likers=("z", "b", "m"), like_count=3),)),
            "z": Profile("z", (Question("q", likers=(), like_count=0),)),
            "b": Profile("b", (Question("q", likers=(), like_count=0),)),
            "m": Profile("m", (Question("q", likers=(), like_count=0),)),
        })
        s = snowball_sample(corp, ["s"], budget=4)
        assert s.crawl_order == ("s", "b", "m", "z")

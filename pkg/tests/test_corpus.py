import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from askgraph.corpus import (
    Corpus,
    CorpusFormatError,
    Lexicon,
    LexiconError,
    Profile,
    Question,
    corpus_stats,
    load_corpus,
    load_lexicon,
    save_corpus,
    tag_question,
    tokenize,
)
from askgraph.data import bundled_lexicon_path


def write_corpus_file(tmp_path, records, name="corpus.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    return path


class TestTokenize:
    def test_basic_rules(self):
        assert tokenize("You're so FAT!") == ["you're", "so", "fat"]

    def test_empty(self):
        assert tokenize("") == []

    def test_separators(self):
        assert tokenize("a-b  c") == ["a", "b", "c"]

    def test_censored_forms_stay_whole(self):
        assert tokenize("f**k this s**t") == ["f**k", "this", "s**t"]

    @given(st.text(max_size=200))
    def test_idempotent_on_own_output(self, text):
        tokens = tokenize(text)
        assert tokenize(" ".join(tokens)) == tokens


class TestLoadCorpus:
    def test_questions_sorted_by_likes(self, tmp_path):
        path = write_corpus_file(tmp_path, [{
            "owner": "alice",
            "fully_sampled": True,
            "questions": [
                {"text": "first", "likers": ["b"], "like_count": 1},
                {"text": "second", "likers": ["b", "c", "d"], "like_count": 3},
            ],
        }])
        corp = load_corpus(path)
        assert len(corp) == 1
        texts = [q.text for q in corp["alice"].questions]
        assert texts == ["second", "first"]

    def test_tie_keeps_input_order(self, tmp_path):
        path = write_corpus_file(tmp_path, [{
            "owner": "a",
            "questions": [
                {"text": "x", "likers": ["b"], "like_count": 1},
                {"text": "y", "likers": ["c"], "like_count": 1},
            ],
        }])
        assert [q.text for q in load_corpus(path)["a"].questions] == ["x", "y"]

    def test_empty_file_is_valid(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("", encoding="utf-8")
        assert len(load_corpus(path)) == 0

    def test_like_count_mismatch_reports_line(self, tmp_path):
        path = write_corpus_file(tmp_path, [
            {"owner": "a", "questions": []},
            {"owner": "b", "questions": [
                {"text": "hi", "likers": ["a", "c"], "like_count": 3},
            ]},
        ])
        with pytest.raises(CorpusFormatError) as exc:
            load_corpus(path)
        assert exc.value.line_no == 2

    def test_duplicate_owner_rejected(self, tmp_path):
        path = write_corpus_file(tmp_path, [
            {"owner": "a", "questions": []},
            {"owner": "a", "questions": []},
        ])
        with pytest.raises(CorpusFormatError, match="duplicate owner"):
            load_corpus(path)

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"owner": "a", "questions": []}\nnot json\n', encoding="utf-8")
        with pytest.raises(CorpusFormatError) as exc:
            load_corpus(path)
        assert exc.value.line_no == 2

    def test_save_load_round_trip_bytes(self, tmp_path):
        path = write_corpus_file(tmp_path, [{
            "owner": "a",
            "fully_sampled": False,
            "questions": [
                {"text": "hey", "answer": "yo", "likers": ["b"], "like_count": 1},
                {"text": "top", "likers": ["b", "c"], "like_count": 2},
            ],
        }])
        corp = load_corpus(path)
        first = tmp_path / "first.jsonl"
        save_corpus(corp, first)
        second = tmp_path / "second.jsonl"
        save_corpus(load_corpus(first), second)
        assert first.read_bytes() == second.read_bytes()


class TestLoadLexicon:
    def test_lowercase_dedup(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("Hate\nhate\nugly\n", encoding="utf-8")
        lex = load_lexicon(path, "negative")
        assert lex.words == frozenset({"hate", "ugly"})

    def test_comments_only_is_empty(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("# nothing here\n\n# nope\n", encoding="utf-8")
        with pytest.raises(LexiconError, match="empty"):
            load_lexicon(path, "negative")

    def test_multiword_entry_rejected(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("ugly\nso bad\n", encoding="utf-8")
        with pytest.raises(LexiconError, match="multi-word"):
            load_lexicon(path, "negative")

    @pytest.mark.parametrize("polarity", ["negative", "positive"])
    def test_bundled_lexicon_size_matches_file(self, polarity):
        path = bundled_lexicon_path(polarity)
        lex = load_lexicon(path, polarity)
        expected = {
            line.strip().lower()
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        }
        assert len(lex) == len(expected)
        assert len(lex) > 100


NEG = Lexicon("negative", frozenset({"ugly", "fat"}))
POS = Lexicon("positive", frozenset({"nice", "beautiful"}))


class TestTagQuestion:
    def test_repeated_word_counts_occurrences(self):
        t = tag_question(Question("you are ugly ugly"), NEG, POS)
        assert t.is_negative and not t.is_positive
        assert t.neg_words == {"ugly": 2}

    def test_positive_only(self):
        t = tag_question(Question("nice day"), NEG, POS)
        assert not t.is_negative and t.is_positive

    def test_both_flags(self):
        t = tag_question(Question("fat but beautiful"), NEG, POS)
        assert t.is_negative and t.is_positive

    def test_answer_never_scanned(self):
        t = tag_question(Question("hello there", answer="you ugly"), NEG, POS)
        assert not t.is_negative


def make_profile(owner, texts, likes_each=0):
    questions = tuple(
        Question(text=t, likers=tuple(f"l{i}_{k}" for k in range(likes_each)),
                 like_count=likes_each)
        for i, t in enumerate(texts)
    )
    return Profile(owner=owner, questions=questions)


class TestCorpusStats:
    def test_single_empty_profile(self):
        corp = Corpus({"a": make_profile("a", [])})
        stats = corpus_stats(corp, NEG, POS)
        assert stats.avg_answers_per_user == 0
        assert stats.avg_neg_questions == 0
        assert stats.pct_users_with_pos_q == 0

    def test_hand_counted_averages(self):
        corp = Corpus({
            "a": make_profile("a", ["you ugly", "so fat ugly"]),
            "b": make_profile("b", ["nice one"]),
        })
        stats = corpus_stats(corp, NEG, POS)
        assert stats.avg_neg_questions == 1.0
        assert stats.pct_users_with_neg_q == 50.0
        assert stats.avg_neg_words == 1.5  # 3 occurrences over 2 users
        assert stats.pct_users_with_pos_q == 50.0
        assert stats.avg_answers_per_user == 1.5

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            corpus_stats(Corpus({}), NEG, POS)

    def test_neg_questions_bounded_by_answers(self):
        corp = Corpus({
            "a": make_profile("a", ["ugly fat ugly", "ugly", "hello"]),
        })
        stats = corpus_stats(corp, NEG, POS)
        assert stats.avg_neg_questions <= stats.avg_answers_per_user

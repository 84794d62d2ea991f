import json
from pathlib import Path

import pytest

from askgraph.cli import load_config, main

DATA = Path(__file__).parent / "data"
DEMO = DATA / "demo_corpus.jsonl"
LABELS = DATA / "demo_labels_cutting.txt"


def run(*argv):
    return main([str(a) for a in argv])


class TestArgs:
    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run("--version")
        assert exc.value.code == 0
        assert "askgraph" in capsys.readouterr().out

    def test_missing_lexicon_is_stage_tagged(self, tmp_path, capsys):
        rc = run("stats", "--corpus", DEMO, "--neg-lexicon", tmp_path / "nope.txt",
                 "--out", tmp_path)
        assert rc == 1
        assert "[load_lexicon]" in capsys.readouterr().err

    def test_missing_corpus_fails(self, tmp_path, capsys):
        rc = run("stats", "--corpus", tmp_path / "nope.jsonl", "--out", tmp_path)
        assert rc == 1
        assert "[load_corpus]" in capsys.readouterr().err

    def test_config_file_supplies_corpus(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text(f"corpus={DEMO}\nthreshold=0.4\n", encoding="utf-8")
        rc = run("stats", "--config", cfg, "--out", tmp_path)
        assert rc == 0
        assert (tmp_path / "corpus_stats.json").exists()

    def test_load_config_rejects_bad_lines(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("not a pair\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_config(cfg)


class TestSubcommands:
    def test_stats(self, tmp_path):
        assert run("stats", "--corpus", DEMO, "--out", tmp_path) == 0
        payload = json.loads((tmp_path / "corpus_stats.json").read_text())
        assert payload["avg_answers_per_user"] > 0

    def test_words(self, tmp_path):
        assert run("words", "--corpus", DEMO, "--out", tmp_path) == 0
        for name in ("wordset_negative.txt", "wordset_positive.txt",
                     "wordgraph_negative_edges.csv", "wordgraph_positive_nodes.csv"):
            assert (tmp_path / name).exists()

    def test_graph(self, tmp_path):
        assert run("graph", "--corpus", DEMO, "--out", tmp_path) == 0
        header = (tmp_path / "interaction_edges.csv").read_text().splitlines()[0]
        assert header == "src,dst,n_neg,n_nonneg"

    def test_metrics(self, tmp_path):
        assert run("metrics", "--corpus", DEMO, "--out", tmp_path) == 0
        assert (tmp_path / "metrics.json").exists()
        assert (tmp_path / "overlap.csv").exists()

    def test_segment_with_labels(self, tmp_path):
        assert run("segment", "--corpus", DEMO, "--labels", LABELS,
                   "--out", tmp_path) == 0
        lines = (tmp_path / "group_report.csv").read_text().splitlines()
        assert len(lines) == 1 + 4 + 1  # header, four groups, one label row
        assert lines[-1].startswith("cutting,")

    def test_cooccur(self, tmp_path):
        # pick a word guaranteed present: the top selected negative word
        run("words", "--corpus", DEMO, "--out", tmp_path)
        top = (tmp_path / "wordset_negative.txt").read_text().splitlines()[3].split()[0]
        assert run("cooccur", "--corpus", DEMO, "--word", top, "--out", tmp_path) == 0
        assert (tmp_path / f"cooccur_{top}.csv").exists()

    def test_neighborhood(self, tmp_path):
        run("words", "--corpus", DEMO, "--out", tmp_path)
        top = (tmp_path / "wordset_negative.txt").read_text().splitlines()[3].split()[0]
        assert run("neighborhood", "--corpus", DEMO, "--word", top,
                   "--out", tmp_path) == 0
        assert (tmp_path / f"neighborhood_{top}.csv").exists()

    def test_synth_and_crawl_sim(self, tmp_path):
        assert run("synth", "--seed", 7, "--n-users", 30, "--questions", "11-15",
                   "--out", tmp_path) == 0
        corpus_path = tmp_path / "corpus.jsonl"
        assert corpus_path.exists()
        seed_user = json.loads(corpus_path.read_text().splitlines()[0])["owner"]
        assert run("crawl-sim", "--corpus", corpus_path, "--seeds", seed_user,
                   "--budget", 10, "--seed", 1, "--out", tmp_path / "crawl") == 0
        order = (tmp_path / "crawl" / "crawl_order.txt").read_text().splitlines()
        assert order[0] == seed_user
        assert len(order) <= 10

    def test_synth_requires_seed(self, capsys):
        with pytest.raises(SystemExit):
            run("synth", "--n-users", 10)


class TestDeterminism:
    def test_rerun_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert run("pipeline", "--corpus", DEMO, "--labels", LABELS,
                       "--out", out) == 0
        files1 = sorted(p.name for p in out1.iterdir())
        files2 = sorted(p.name for p in out2.iterdir())
        assert files1 == files2
        for name in files1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name

    def test_no_partial_files_on_success(self, tmp_path):
        assert run("metrics", "--corpus", DEMO, "--out", tmp_path) == 0
        assert not list(tmp_path.glob("*.partial"))

import json

import pytest

from weftprint.cli import main
from weftprint.graph import save_graph
from weftprint.weaves import grid_to_graph, plain_weave

from conftest import desk_scale_config_text

TINY_SPEC = """\
[corpus]
seed = 3

[plain]
kind = plain
count = 4
width = 6
height = 6

[warped]
kind = warp_above
count = 4
width = 6
height = 6
"""


@pytest.fixture()
def tiny_corpus(tmp_path):
    spec = tmp_path / "spec.ini"
    spec.write_text(TINY_SPEC)
    out = tmp_path / "corpus"
    assert main(["generate", "--spec", str(spec), "--out-dir", str(out)]) == 0
    return out / "manifest.csv"


def read(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


class TestGenerate:
    def test_writes_corpus_and_manifest(self, tiny_corpus):
        manifest = read(tiny_corpus)
        assert manifest.splitlines()[0] == "id,path,category"
        assert len(manifest.splitlines()) == 9
        assert (tiny_corpus.parent / "plain-000.tg").exists()

    def test_rerun_is_byte_identical(self, tmp_path):
        spec = tmp_path / "spec.ini"
        spec.write_text(TINY_SPEC)
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            assert main(["generate", "--spec", str(spec), "--out-dir", str(out)]) == 0
            outputs.append({p.name: read(p) for p in sorted(out.iterdir())})
        assert outputs[0] == outputs[1]

    def test_missing_spec_file_is_data_error(self, tmp_path, capsys):
        code = main(["generate", "--spec", str(tmp_path / "nope.ini"), "--out-dir", str(tmp_path)])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestFingerprint:
    def test_single_file_paper_count(self, tmp_path, capsys):
        tg = tmp_path / "plain2x2.tg"
        save_graph(grid_to_graph(plain_weave(2, 2)), tg)
        out = tmp_path / "plain2x2.fp"
        assert main(["fingerprint", "--in", str(tg), "--k", "1", "--out", str(out)]) == 0
        assert read(out) == "A,T;A,T 4\n"

    def test_directory_mode(self, tiny_corpus, tmp_path):
        out = tmp_path / "fps"
        assert main(["fingerprint", "--in", str(tiny_corpus.parent), "--k", "2", "--out", str(out)]) == 0
        assert len(list(out.glob("*.fp"))) == 8

    def test_invalid_graph_file_is_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.tg"
        bad.write_text("crossings 1\n0 -1 1 1\n")
        assert main(["fingerprint", "--in", str(bad), "--k", "1", "--out", str(tmp_path / "x.fp")]) == 2
        assert "node count" in capsys.readouterr().err


class TestDistmatrix:
    def test_duplicate_listing_gives_zero_offdiagonal(self, tmp_path):
        tg = tmp_path / "g.tg"
        save_graph(grid_to_graph(plain_weave(4, 4)), tg)
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("id,path,category\none,g.tg,x\ntwo,g.tg,x\n")
        out = tmp_path / "d.csv"
        for metric in ("jaccard", "hbool", "hfreq", "cosine", "tfidf"):
            assert main(["distmatrix", "--manifest", str(manifest), "--metric", metric,
                         "--k", "2", "--out", str(out)]) == 0
            lines = read(out).splitlines()
            assert lines[0] == "id,one,two"
            assert lines[1].split(",")[2] in ("0", "0.0")

    def test_unknown_metric_is_usage_error(self, tiny_corpus, tmp_path, capsys):
        code = main(["distmatrix", "--manifest", str(tiny_corpus), "--metric", "euclid",
                     "--k", "2", "--out", str(tmp_path / "d.csv")])
        assert code == 1

    def test_threads_flag_does_not_change_bytes(self, tiny_corpus, tmp_path):
        texts = []
        for threads, name in ((1, "a.csv"), (4, "b.csv"), (0, "c.csv")):
            out = tmp_path / name
            assert main(["--threads", str(threads), "distmatrix", "--manifest", str(tiny_corpus),
                         "--metric", "jaccard", "--k", "3", "--out", str(out)]) == 0
            texts.append(read(out))
        assert len(set(texts)) == 1

    def test_threads_env_fallback(self, tiny_corpus, tmp_path, monkeypatch):
        monkeypatch.setenv("WEFTPRINT_THREADS", "2")
        out = tmp_path / "env.csv"
        assert main(["distmatrix", "--manifest", str(tiny_corpus), "--metric", "jaccard",
                     "--k", "2", "--out", str(out)]) == 0


@pytest.fixture()
def tiny_pipeline(tiny_corpus, tmp_path):
    dist = tmp_path / "dist.csv"
    assert main(["distmatrix", "--manifest", str(tiny_corpus), "--metric", "jaccard",
                 "--k", "3", "--out", str(dist)]) == 0
    return tiny_corpus, dist


class TestCluster:
    def test_separates_tiny_corpus(self, tiny_pipeline, tmp_path, capsys):
        manifest, dist = tiny_pipeline
        report_path = tmp_path / "cluster.json"
        assert main(["cluster", "--dist", str(dist), "--clusters", "2",
                     "--truth", str(manifest), "--report", str(report_path)]) == 0
        report = json.loads(read(report_path))
        assert report["RI"] == 1.0 and report["F"] == 1.0
        assert set(report["clusters"].values()) == {0, 1}
        assert "RI=1.000000" in capsys.readouterr().out

    def test_singleton_truth_with_m_equals_n(self, tmp_path):
        tg = tmp_path / "g.tg"
        save_graph(grid_to_graph(plain_weave(3, 3)), tg)
        manifest = tmp_path / "manifest.csv"
        manifest.write_text("id,path,category\na,g.tg,ca\nb,g.tg,cb\nc,g.tg,cc\n")
        dist = tmp_path / "d.csv"
        assert main(["distmatrix", "--manifest", str(manifest), "--metric", "hfreq",
                     "--k", "1", "--out", str(dist)]) == 0
        report_path = tmp_path / "r.json"
        assert main(["cluster", "--dist", str(dist), "--clusters", "3",
                     "--truth", str(manifest), "--report", str(report_path)]) == 0
        assert json.loads(read(report_path))["RI"] == 1.0

    def test_bad_cluster_count_is_data_error(self, tiny_pipeline, tmp_path):
        manifest, dist = tiny_pipeline
        assert main(["cluster", "--dist", str(dist), "--clusters", "99",
                     "--truth", str(manifest), "--report", str(tmp_path / "r.json")]) == 2


class TestRetrieve:
    def test_curves_and_report(self, tiny_pipeline, tmp_path, capsys):
        manifest, dist = tiny_pipeline
        curves_path, report_path = tmp_path / "curves.csv", tmp_path / "map.json"
        assert main(["retrieve", "--dist", str(dist), "--truth", str(manifest),
                     "--curves", str(curves_path), "--report", str(report_path)]) == 0
        lines = read(curves_path).splitlines()
        assert lines[0] == "recall_level,avg_precision,avg_fmeasure"
        assert len(lines) == 12
        assert json.loads(read(report_path))["MAP"] == 1.0
        assert "MAP=1.000000" in capsys.readouterr().out


class TestBench:
    def test_rows_and_monotone_endpoints(self, tmp_path):
        spec = tmp_path / "spec.ini"
        spec.write_text(TINY_SPEC)
        out = tmp_path / "bench.csv"
        assert main(["bench", "--spec", str(spec), "--k-range", "1..4",
                     "--metrics", "jaccard,hbool", "--repeats", "3", "--out", str(out)]) == 0
        lines = read(out).splitlines()
        assert lines[0] == "metric,k,seconds"
        rows = [line.split(",") for line in lines[1:]]
        assert [(r[0], r[1]) for r in rows] == [
            (m, str(k)) for k in range(1, 5) for m in ("jaccard", "hbool")
        ]
        seconds = {(r[0], int(r[1])): float(r[2]) for r in rows}
        assert all(v > 0 for v in seconds.values())
        # coarse k-scaling check on the endpoints
        assert seconds[("jaccard", 4)] >= seconds[("jaccard", 1)]

    def test_bad_k_range_is_data_error(self, tmp_path):
        spec = tmp_path / "spec.ini"
        spec.write_text(TINY_SPEC)
        assert main(["bench", "--spec", str(spec), "--k-range", "4",
                     "--out", str(tmp_path / "b.csv")]) == 2


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_no_arguments_is_usage_error(self):
        assert main([]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

    def test_desk_scale_config_parses_via_cli(self, tmp_path):
        # the acceptance-study spec must be expressible as a spec file
        spec = tmp_path / "desk.ini"
        spec.write_text(desk_scale_config_text())
        from weftprint.corpus import load_corpus_spec

        parsed = load_corpus_spec(spec)
        assert len(parsed.categories) == 9

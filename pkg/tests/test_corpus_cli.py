import json

import pytest

from alg2 import cli
from alg2.corpus import Corpus, CorpusError, default_spec, generate_corpus
from alg2.morita import CoherenceCells
from alg2.report import JOBS_ENV, build_report, report_digest
from mutants import bump

SMALL = {
    "algebras": [{"kind": "field"}, {"kind": "matrix", "d": 2}],
    "bimodules": {"count": 4, "max_dim": 4, "max_mult": 2, "seed": 3},
}


def test_default_corpus_contents(corpus):
    labels = [A.label for A in corpus.algebras]
    assert labels == ["Q", "Q2", "M2", "M2xQ", "QZ2", "Q[x]/x^2"]
    assert len(corpus.bimodules) == 30
    assert all(M.dim <= 4 and M.defects() == [] for M in corpus.bimodules)
    assert len(set(corpus.bimodules)) == 30


def test_spec_without_bimodules():
    spec = default_spec()
    spec["bimodules"]["count"] = 0
    c = generate_corpus(spec)
    assert c.bimodules == () and len(c.algebras) == 6


def test_bad_specs_are_rejected():
    with pytest.raises(CorpusError):
        generate_corpus({"algebras": [{"kind": "nonsense"}]})
    with pytest.raises(CorpusError):
        generate_corpus({"algebras": [{"kind": "field"}], "bimodules": {"count": 5, "max_dim": 0}})
    with pytest.raises(CorpusError):
        Corpus.from_json({"format": "other"})


def test_generation_is_deterministic_and_round_trips():
    a, b = generate_corpus(SMALL), generate_corpus(SMALL)
    assert a.digest == b.digest
    c = Corpus.from_json(json.loads(json.dumps(a.to_json())))
    assert c.digest == a.digest
    assert c.bimodules == a.bimodules
    other = dict(SMALL, bimodules=dict(SMALL["bimodules"], seed=4))
    assert generate_corpus(other).digest != a.digest


def test_gen_corpus_then_verify(tmp_path, capsys):
    spec, out, rep = tmp_path / "spec.json", tmp_path / "corpus.json", tmp_path / "report.json"
    spec.write_text(json.dumps(SMALL))
    assert cli.main(["gen-corpus", "--spec", str(spec), "--out", str(out)]) == 0
    code = cli.main(["verify", "--suite", "bicategory", "--corpus", str(out), "--report", str(rep)])
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["digest"] == report_digest(report)
    assert report["corpus_digest"] == Corpus.from_json(json.loads(out.read_text())).digest
    assert report["summary"]["bicategory"]["FAIL"] == 0
    assert "digest" in capsys.readouterr().out


def test_usage_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["verify", "--corpus", str(bad)]) == 2
    assert cli.main(["verify", "--corpus", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["verify", "--max-dim", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_failing_check_gives_exit_one(tmp_path, monkeypatch, capsys):
    out = tmp_path / "corpus.json"
    out.write_text(json.dumps(generate_corpus(SMALL).to_json()))
    original = CoherenceCells.associator

    def broken(self, M, N, P):
        f = original(self, M, N, P)
        return type(f)(f.source, f.target, bump(f.mat))

    monkeypatch.setattr(CoherenceCells, "associator", broken)
    assert cli.main(["verify", "--suite", "bicategory", "--corpus", str(out)]) == 1
    assert "FAIL pentagon" in capsys.readouterr().out


def test_parallel_matches_serial(monkeypatch):
    c = generate_corpus(SMALL)
    suites = ["bicategory", "morita", "dualobjects"]
    serial = build_report(c, suites, seed=2)
    parallel = build_report(c, suites, seed=2, jobs=3)
    assert serial["digest"] == parallel["digest"]
    monkeypatch.setenv(JOBS_ENV, "2")
    assert cli.default_jobs() == 2
    monkeypatch.setenv(JOBS_ENV, "junk")
    assert cli.default_jobs() == 1


def test_max_dim_filters_cells(corpus):
    small = corpus.with_max_dim(1)
    assert all(M.dim <= 1 for M in small.one_cells() if M in corpus.bimodules)
    assert small.digest != corpus.digest and small.bimodules == corpus.bimodules
    r = build_report(small, ["dualobjects"], seed=0)
    assert r["max_dim"] == 1

"""The nine acceptance criteria, each checked exactly (tolerance zero)."""

import random
import time

import pytest

from alg2.canonical import verify_canonical
from alg2.corpus import generate_corpus
from alg2.duality import verify_involution, verify_pseudofunctor
from alg2.kv import kv_strict_involution, random_kv_nat, rep_1, rep_object, verify_rep_duality
from alg2.morita import dual_object_data, is_equivalence, morita_examples, verify_bicategory
from alg2.records import FAIL, PASS, SKIP
from alg2.report import SUITES, build_report
from mutants import MUTATIONS, mutant_providers

SEMISIMPLE = ["Q", "Q2", "M2", "M2xQ", "QZ2"]


def _by(rec, check, status=None):
    return [r for r in rec.records if r.check == check and (status is None or r.status == status)]


def test_criterion_1_bicategory_coherence(corpus, criterion):
    t0 = time.perf_counter()
    rec = verify_bicategory(corpus, seed=0, n_chains=50)
    elapsed = time.perf_counter() - t0
    pent, tri = _by(rec, "pentagon"), _by(rec, "triangle")
    ok = (len(pent) >= 50 and len(tri) >= 50 and all(r.status == PASS for r in pent + tri)
          and not rec.failures and elapsed < 60)
    criterion(1, f"pentagon {len(pent)} / triangle {len(tri)} chains exact, {elapsed:.1f}s", ok)
    assert ok


def test_criterion_2_canonical_isomorphisms(corpus, criterion):
    rec = verify_canonical(corpus, seed=0, n_instances=100)
    counts = {c: len(_by(rec, c, PASS)) for c in ("braid", "adjoint", "double_dual", "tensor_hom")}
    skipped = [r for r in _by(rec, "double_dual", SKIP) if "Q[x]/x^2" in r.instance]
    ok = (all(n >= 100 for n in counts.values()) and not rec.failures
          and bool(skipped) and all(r.reason == "NotSemisimple" for r in skipped))
    criterion(2, f"canonical isomorphisms invertible and natural {counts}, "
                 f"{len(skipped)} non-semisimple double duals skipped", ok)
    assert ok


def test_criterion_3_involution(corpus, criterion):
    rec = verify_pseudofunctor(corpus, seed=0)
    rec = verify_involution(corpus, seed=0, rec=rec)
    zc = {r.instance for r in _by(rec, "zeta_compatibility", PASS)}
    ok = not rec.failures and set(SEMISIMPLE) <= zc
    criterion(3, f"duality involution: 0 failures expected, got {len(rec.failures)}; "
                 f"zeta compatibility exact on {sorted(zc)}", ok)
    assert ok


def test_criterion_4_rep_duality(corpus, criterion):
    rec = verify_rep_duality(corpus, seed=0)
    expected = sum(rep_object(A).kv.rank for A in corpus.algebras if corpus.semisimple(A))
    eq = _by(rec, "rep_duality_equality", PASS)
    psi = _by(rec, "psi_dual", PASS)
    ok = not rec.failures and len(eq) == expected and len(psi) == expected
    criterion(4, f"representation duality: composites agree on {len(eq)}/{expected} simples, "
                 f"psi identity on {len(psi)}", ok)
    assert ok


def test_criterion_5_morita_detection(corpus, criterion):
    results = []
    for name, M, expected in morita_examples():
        eq, _ = is_equivalence(M)
        results.append(eq == expected and (not eq or rep_1(M).functor.is_permutation()))
    for M in corpus.one_cells():
        if corpus.cell_certified(M):
            eq, _ = is_equivalence(M)
            if eq:
                results.append(rep_1(M).functor.is_permutation())
    ok = all(results)
    criterion(5, f"Morita detection on fixed cases and {len(results) - 3} corpus equivalences", ok)
    assert ok


def test_criterion_6_dual_objects(corpus, criterion):
    oks = {A.label: dual_object_data(A).zigzag_ok for A in corpus.algebras}
    ok = all(oks.values())
    criterion(6, f"zig-zag identities {oks}", ok)
    assert ok


def test_criterion_7_strict_involution(criterion):
    inv = kv_strict_involution()
    rng = random.Random(20261016)
    cells = [random_kv_nat(rng) for _ in range(1000)]
    ok = all(inv.on_2(inv.on_2(c)) == c and inv.on_1(inv.on_1(c.source)) == c.source for c in cells)
    ok = ok and all(inv.on_obj(inv.on_obj(c.source.source)) == c.source.source for c in cells)
    criterion(7, "KV involution squares to the identity on 1000 random cells", ok)
    assert ok


def test_criterion_8_determinism(criterion):
    c1, c2 = generate_corpus(), generate_corpus()
    r1 = build_report(c1, list(SUITES), seed=11)
    r2 = build_report(c2, list(SUITES), seed=11)
    ok = c1.digest == c2.digest and r1["digest"] == r2["digest"]
    criterion(8, f"identical report digests {r1['digest'][:16]}", ok)
    assert ok


@pytest.fixture(scope="module")
def mutation_outcomes(corpus):
    """For each mutation, the suites that report at least one failure."""
    out = {}
    for slot, cls, method, suite in MUTATIONS:
        report = build_report(corpus, list(SUITES), seed=0, providers=mutant_providers(slot, cls, method))
        out[(slot, method)] = [s for s in SUITES if report["summary"][s][FAIL]]
    return out


@pytest.mark.parametrize("slot,cls,method,suite", MUTATIONS, ids=[f"{m[0]}.{m[2]}" for m in MUTATIONS])
def test_criterion_9_mutation_case(mutation_outcomes, slot, cls, method, suite):
    assert mutation_outcomes[(slot, method)] == [suite]


def test_criterion_9_mutation_sensitivity(mutation_outcomes, criterion):
    hits = [mutation_outcomes[(slot, method)] == [suite] for slot, _, method, suite in MUTATIONS]
    ok = all(hits)
    criterion(9, f"{sum(hits)}/{len(hits)} single-entry corruptions fail exactly their own suite", ok)
    assert ok

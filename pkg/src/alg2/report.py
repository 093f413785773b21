"""Suite registry and report assembly.

A report maps each suite to its ordered check records.  Elapsed times live
only under ``timing``, which is excluded from the digest, so two runs on the
same corpus and seed have equal digests.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import __version__
from .canonical import CanonicalIsos, verify_canonical
from .corpus import Corpus
from .duality import DualityInvolution, verify_involution, verify_pseudofunctor
from .kv import RepDuality, verify_rep_duality
from .morita import CoherenceCells, verify_bicategory, verify_dual_objects, verify_morita
from .records import FAIL, PASS, SKIP, Recorder

__all__ = [
    "SUITES",
    "JOBS_ENV",
    "Providers",
    "run_suite",
    "build_report",
    "report_digest",
    "default_jobs",
]

JOBS_ENV = "ALG2_JOBS"


class Providers:
    """Cell providers handed to the suites; replace one to substitute its cells."""

    def __init__(self, coherence: CoherenceCells | None = None, canonical: CanonicalIsos | None = None,
                 duality: DualityInvolution | None = None, rep: RepDuality | None = None):
        self.coherence = coherence or CoherenceCells()
        self.canonical = canonical or CanonicalIsos()
        self.duality = duality or DualityInvolution()
        self.rep = rep or RepDuality()


def _duality(corpus: Corpus, seed: int, p: Providers) -> Recorder:
    rec = verify_pseudofunctor(corpus, seed, p.duality)
    return verify_involution(corpus, seed, p.duality, rec=rec)


SUITES: dict[str, Callable[[Corpus, int, Providers], Recorder]] = {
    "bicategory": lambda c, s, p: verify_bicategory(c, s, p.coherence),
    "canonical": lambda c, s, p: verify_canonical(c, s, p.canonical),
    "duality": _duality,
    "rep": lambda c, s, p: verify_rep_duality(c, s, p.rep),
    "morita": lambda c, s, p: verify_morita(c, s),
    "dualobjects": lambda c, s, p: verify_dual_objects(c, s),
}


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(name: str, corpus: Corpus, seed: int, providers: Providers | None = None) -> tuple[list[dict], float]:
    t0 = time.perf_counter()
    rec = SUITES[name](corpus, seed, providers or Providers())
    return [r.to_json() for r in rec.records], time.perf_counter() - t0


def _worker(args):
    name, corpus_json, max_dim, seed = args
    corpus = Corpus.from_json(corpus_json).with_max_dim(max_dim)
    return run_suite(name, corpus, seed)


def report_digest(report: dict) -> str:
    body = {k: v for k, v in report.items() if k not in ("timing", "digest")}
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def build_report(corpus: Corpus, suites: list[str], seed: int, jobs: int = 1,
                 providers: Providers | None = None) -> dict:
    """Run ``suites`` in order and assemble the report.

    With ``jobs > 1`` suites run in worker processes on a re-loaded copy of the
    corpus; custom providers force in-process execution.
    """
    t0 = time.perf_counter()
    if jobs > 1 and providers is None and len(suites) > 1:
        data = corpus.to_json()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, [(s, data, corpus.max_dim, seed) for s in suites]))
    else:
        results = [run_suite(s, corpus, seed, providers) for s in suites]
    out_suites, summary, timing = {}, {}, {}
    for name, (records, elapsed) in zip(suites, results):
        out_suites[name] = records
        summary[name] = {st: sum(r["status"] == st for r in records) for st in (PASS, FAIL, SKIP)}
        timing[name] = round(elapsed, 6)
    timing["total"] = round(time.perf_counter() - t0, 6)
    report = {
        "tool_version": __version__,
        "corpus_digest": corpus.digest,
        "seed": seed,
        "max_dim": corpus.max_dim,
        "suites": out_suites,
        "summary": summary,
        "timing": timing,
    }
    report["digest"] = report_digest(report)
    return report

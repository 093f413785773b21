"""Command line entry point ``alg2``.

``alg2 verify`` runs verification suites and writes a JSON report;
``alg2 gen-corpus`` turns a corpus spec into a corpus file.  Exit status is 0
when every check passes, 1 when a check fails and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import Corpus, CorpusError, default_spec, generate_corpus
from .report import JOBS_ENV, SUITES, build_report, default_jobs

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITE_CHOICES = [*SUITES, "all"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="alg2", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITE_CHOICES, default="all")
    v.add_argument("--corpus", type=Path, help="corpus JSON (default: generated from the default spec)")
    v.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    v.add_argument("--max-dim", type=int, help="largest corpus bimodule to sample (default: corpus value)")
    v.add_argument("--report", type=Path, help="write the JSON report here")
    v.add_argument("--jobs", type=int, default=None, help=f"worker processes (default ${JOBS_ENV} or 1)")

    g = sub.add_parser("gen-corpus", help="build a corpus file from a spec")
    g.add_argument("--spec", type=Path, help="spec JSON (default: built-in default spec)")
    g.add_argument("--out", type=Path, required=True)
    return p


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path} is not valid JSON: {exc}") from exc


def _write_json(path: Path, data) -> None:
    try:
        path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    except OSError as exc:
        raise CorpusError(f"cannot write {path}: {exc.strerror}") from exc


def _verify(args) -> int:
    corpus = Corpus.from_json(_load_json(args.corpus)) if args.corpus else generate_corpus(default_spec())
    if args.max_dim is not None:
        if args.max_dim < 1:
            raise CorpusError("--max-dim must be positive")
        corpus = corpus.with_max_dim(args.max_dim)
    if args.seed < 0:
        raise CorpusError("--seed must be non-negative")
    jobs = default_jobs() if args.jobs is None else max(1, args.jobs)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    report = build_report(corpus, suites, args.seed, jobs)
    if args.report:
        _write_json(args.report, report)
    failed = False
    for name in suites:
        s = report["summary"][name]
        print(f"{name:12s} pass {s['PASS']:4d}  fail {s['FAIL']:3d}  skip {s['SKIP']:3d}  "
              f"{report['timing'][name]:.2f}s")
        for r in report["suites"][name]:
            if r["status"] == "FAIL":
                failed = True
                print(f"  FAIL {r['check']} [{r['anchor']}] {r['instance']}: {r['reason']}")
    print(f"digest {report['digest']}")
    return EXIT_FAIL if failed else EXIT_OK


def _gen_corpus(args) -> int:
    spec = _load_json(args.spec) if args.spec else default_spec()
    corpus = generate_corpus(spec)
    _write_json(args.out, corpus.to_json())
    print(f"{len(corpus.algebras)} algebras, {len(corpus.bimodules)} bimodules, digest {corpus.digest}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        return _gen_corpus(args)
    except CorpusError as exc:
        print(f"alg2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

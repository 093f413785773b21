"""Check records produced by the verifiers."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from .algebra import AlgebraError
from .exactla import NoSolution, SingularMatrix

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class CheckRecord:
    check: str
    anchor: str
    instance: str
    status: str
    dims: list[int] = field(default_factory=list)
    reason: str = ""
    elapsed: float = 0.0

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("elapsed")
        return d


class Recorder:
    """Collects records; :meth:`run` turns exceptions into FAIL entries."""

    def __init__(self) -> None:
        self.records: list[CheckRecord] = []

    def add(self, check: str, anchor: str, instance: str, ok: bool, dims=(), reason: str = "",
            elapsed: float = 0.0) -> CheckRecord:
        rec = CheckRecord(check, anchor, instance, PASS if ok else FAIL, list(dims),
                          "" if ok else (reason or "equality does not hold"), elapsed)
        self.records.append(rec)
        return rec

    def skip(self, check: str, anchor: str, instance: str, reason: str) -> CheckRecord:
        rec = CheckRecord(check, anchor, instance, SKIP, [], reason)
        self.records.append(rec)
        return rec

    def run(self, check: str, anchor: str, instance: str, fn: Callable[[], tuple[bool, list[int]] | bool],
            skip_on: tuple[type[BaseException], ...] = ()) -> CheckRecord:
        t0 = time.perf_counter()
        try:
            out = fn()
        except skip_on as exc:
            return self.skip(check, anchor, instance, f"{type(exc).__name__}: {exc}")
        except (AlgebraError, NoSolution, SingularMatrix, ValueError) as exc:
            return self.add(check, anchor, instance, False, reason=f"{type(exc).__name__}: {exc}",
                            elapsed=time.perf_counter() - t0)
        ok, dims = out if isinstance(out, tuple) else (out, [])
        return self.add(check, anchor, instance, bool(ok), dims, elapsed=time.perf_counter() - t0)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]


@contextmanager
def timed() -> Iterator[list[float]]:
    box = [0.0]
    t0 = time.perf_counter()
    yield box
    box[0] = time.perf_counter() - t0

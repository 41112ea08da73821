"""Outcome of a quantified law check: pass, or fail with an explicit witness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
BOUNDED_PASS = "bounded-pass"


def sort_key(x: Any):
    """Total order on heterogeneous carrier elements, used for deterministic
    witness selection and canonical labelling."""
    if isinstance(x, tuple):
        return (1, len(x), tuple(sort_key(e) for e in x))
    return (0, 0, str(x))


@dataclass
class CheckReport:
    """Result of running one law check.

    ``witness`` is a JSON-serializable description of the first (in
    deterministic enumeration order) violating tuple, present iff the check
    failed.  ``skipped`` counts quantified tuples that fell outside a depth
    bound and were not evaluated; a check that passed but skipped something
    reports ``bounded-pass``.
    """

    check: str
    status: str
    law: str | None = None
    witness: Any = None
    samples: int = 0
    skipped: int = 0
    bound: Any = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status in (PASS, BOUNDED_PASS)

    def to_dict(self) -> dict:
        d: dict = {"check": self.check, "status": self.status}
        if self.law is not None:
            d["law"] = self.law
        if self.witness is not None:
            d["witness"] = self.witness
        d["samples"] = self.samples
        if self.skipped:
            d["skipped"] = self.skipped
        if self.bound is not None:
            d["bound"] = self.bound
        if self.details:
            d["details"] = self.details
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Reporter:
    """Accumulates evaluation counts for a single check and produces the
    final CheckReport.  Checks call ``tick`` per evaluated tuple, ``skip``
    per out-of-bound tuple, and return ``fail(...)`` on first violation."""

    def __init__(self, check: str, bound: Any = None):
        self.check = check
        self.samples = 0
        self.skipped = 0
        self.bound = bound

    def tick(self, n: int = 1) -> None:
        self.samples += n

    def skip(self, n: int = 1) -> None:
        self.skipped += n

    def fail(self, law: str, witness: Any, **details) -> CheckReport:
        return CheckReport(self.check, FAIL, law=law, witness=witness,
                           samples=self.samples, skipped=self.skipped,
                           bound=self.bound, details=dict(details))

    def ok(self, **details) -> CheckReport:
        status = BOUNDED_PASS if self.skipped or self.bound is not None else PASS
        return CheckReport(self.check, status, samples=self.samples,
                           skipped=self.skipped, bound=self.bound,
                           details=dict(details))

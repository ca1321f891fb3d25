"""Suite reports with a frozen JSON layout."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
MISMATCH = "derived-mismatch"


@dataclass
class Check:
    id: str
    status: str
    lhs: str = ""
    rhs: str = ""
    detail: str = ""
    anchor: str = ""

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
            "anchor": self.anchor,
        }


@dataclass
class SuiteReport:
    suite: str
    seed: int | None = None
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: int = 0

    def add(self, id: str, ok: bool, lhs: str = "", rhs: str = "", detail: str = "",
            anchor: str = "") -> Check:
        c = Check(id, PASS if ok else FAIL, lhs, rhs, detail, anchor)
        self.checks.append(c)
        return c

    def mismatch(self, id: str, lhs: str, rhs: str, detail: str, anchor: str = "") -> Check:
        c = Check(id, MISMATCH, lhs, rhs, detail, anchor)
        self.checks.append(c)
        return c

    def extend(self, other: "SuiteReport", prefix: str | None = None):
        for c in other.checks:
            cid = f"{prefix}/{c.id}" if prefix else c.id
            self.checks.append(Check(cid, c.status, c.lhs, c.rhs, c.detail, c.anchor))

    def get(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "mismatch": 0}
        for c in self.checks:
            key = "mismatch" if c.status == MISMATCH else c.status
            counts[key] += 1
        return counts

    @property
    def ok(self) -> bool:
        """True when no check failed; derived mismatches do not count."""
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.summary,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        tags = {PASS: "PASS", FAIL: "FAIL", MISMATCH: "MISM"}
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            line = f"[{tags[c.status]}] {c.id}"
            if c.lhs or c.rhs:
                line += f": {c.lhs} == {c.rhs}"
            if c.detail:
                line += f"  -- {c.detail}"
            if c.anchor:
                line += f"  [{c.anchor}]"
            lines.append(line)
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['mismatch']} derived-mismatch")
        lines.append(f"elapsed_ms: {self.elapsed_ms}")
        return "\n".join(lines) + "\n"

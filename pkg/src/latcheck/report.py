"""Structured verification reports.

A report is a flat list of check entries.  Each entry names the law it
checked (ids from the law catalog in the README), the instance it ran on,
whether the check was exhaustive or sampled, the verdict, and an optional
rendered witness for failures.  Serialization is deterministic; timings are
kept out of the JSON form by default so that runs with a fixed seed are
byte-identical.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

SCHEMA = "latcheck-report/1"

EXHAUSTIVE = "exhaustive"


def sampled(n: int) -> str:
    return f"sampled({n})"


@dataclass
class CheckEntry:
    law: str
    instance: str
    mode: str
    passed: bool
    witness: str | None = None
    informational: bool = False
    millis: float = 0.0

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {
            "law": self.law,
            "instance": self.instance,
            "mode": self.mode,
            "verdict": "pass" if self.passed else "fail",
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.informational:
            d["informational"] = True
        if include_timing:
            d["millis"] = round(self.millis, 3)
        return d


@dataclass
class VerificationReport:
    suite: str
    config: dict = field(default_factory=dict)
    entries: list[CheckEntry] = field(default_factory=list)

    def add(
        self,
        law: str,
        instance: str,
        mode: str,
        passed: bool,
        witness: str | None = None,
        informational: bool = False,
        millis: float = 0.0,
    ) -> CheckEntry:
        entry = CheckEntry(law, instance, mode, passed, witness, informational, millis)
        self.entries.append(entry)
        return entry

    def run(self, law: str, instance: str, mode: str, check) -> CheckEntry:
        """Time `check`, which returns None on success or a witness string."""
        start = time.perf_counter()
        witness = check()
        millis = (time.perf_counter() - start) * 1000.0
        return self.add(law, instance, mode, witness is None, witness, millis=millis)

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed and not e.informational]

    def all_passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config,
            "checks": [e.to_dict(include_timing) for e in self.entries],
            "summary": {
                "total": len(self.entries),
                "failed": len(self.failures),
                "informational": sum(1 for e in self.entries if e.informational),
            },
        }

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        for key, value in self.config.items():
            lines.append(f"  {key}: {value}")
        width = max((len(e.law) for e in self.entries), default=0)
        for e in self.entries:
            verdict = "note" if e.informational and e.passed else (
                "PASS" if e.passed else "FAIL"
            )
            line = f"[{verdict}] {e.law.ljust(width)}  {e.instance}  ({e.mode}, {e.millis:.1f} ms)"
            if e.witness is not None:
                line += f"\n        witness: {e.witness}"
            lines.append(line)
        lines.append(
            f"{len(self.entries)} checks, {len(self.failures)} failures"
        )
        return "\n".join(lines)

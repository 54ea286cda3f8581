"""Machine-readable pass/fail reports shared by all verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "skip")


@dataclass
class ReportEntry:
    id: str
    paper_ref: str
    status: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "paper_ref": self.paper_ref,
                "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    def add(self, id: str, paper_ref: str, checked: int, failures: list,
            skipped: int = 0, note: str | None = None, status: str | None = None):
        if status is None:
            if failures:
                status = "fail"
            elif checked == 0:
                status = "skip"
            else:
                status = "pass"
        witness = {"checked": checked, "failures": failures[:10]}
        if skipped:
            witness["vacuous"] = skipped
        if note:
            witness["note"] = note
        self.entries.append(ReportEntry(id, paper_ref, status, witness))
        return self.entries[-1]

    def extend(self, other: "VerificationReport"):
        self.entries.extend(other.entries)

    @property
    def passed(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def failed(self) -> list:
        return [e for e in self.entries if e.status == "fail"]

    def by_id(self, id: str) -> ReportEntry:
        for e in self.entries:
            if e.id == id:
                return e
        raise KeyError(id)

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]

"""Pass/fail reports shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "fail" | "error"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, "pass" if ok else "fail", detail))
        return ok

    def error(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, "error", detail))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        checks = sorted(self.checks, key=lambda c: c.name)
        return {
            "title": self.title,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
            "summary": self.counts(),
        }

    def __str__(self):
        lines = [self.title]
        lines += [f"  [{c.status.upper():5}] {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        return "\n".join(lines)

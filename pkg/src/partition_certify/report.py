"""Machine-readable outcome of a verification sweep."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    check_id: str
    parameter_range: str
    total: int = 0
    violations: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    precision_bits_max: int = 0
    seed: int | None = None
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.violations:
            return "fail"
        if self.undecided:
            return "undecided"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "undecided": 2}[self.status]

    def record(self, point, verdict: bool | None, prec: int = 0) -> None:
        """Count one point: True holds, False violated, None undecided."""
        self.total += 1
        self.precision_bits_max = max(self.precision_bits_max, prec)
        if verdict is False:
            self.violations.append(_plain(point))
        elif verdict is None:
            self.undecided.append(_plain(point))

    def merge(self, other: "VerificationReport") -> None:
        self.total += other.total
        self.violations.extend(other.violations)
        self.undecided.extend(other.undecided)
        self.precision_bits_max = max(self.precision_bits_max, other.precision_bits_max)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        d["schema_version"] = SCHEMA_VERSION
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        d = dict(d)
        d.pop("status", None)
        d.pop("schema_version", None)
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def _plain(point):
    if isinstance(point, tuple):
        return [_plain(p) for p in point]
    if isinstance(point, Iterable) and not isinstance(point, (str, bytes, dict)):
        return [_plain(p) for p in point]
    return point

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a multi-condition check.

    ``conditions`` maps each condition name to the list of its violations
    (empty when the condition holds).  A report is truthy iff nothing failed.
    """

    conditions: dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.conditions.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v]

    def first_witness(self):
        for k, v in self.conditions.items():
            if v:
                return k, v[0]
        return None

    def add(self, name: str, violations) -> "CheckReport":
        self.conditions.setdefault(name, []).extend(violations)
        return self

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        for k, v in other.conditions.items():
            self.add(prefix + k, v)
        return self

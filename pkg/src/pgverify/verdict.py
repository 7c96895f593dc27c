"""Three-valued check results shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


@dataclass
class Verdict:
    name: str
    status: str
    claim: str = ""
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INAPPLICABLE):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    @classmethod
    def of(cls, name: str, ok: bool, claim: str = "", witness=None, **details) -> Verdict:
        return cls(name, PASS if ok else FAIL, claim, None if ok else witness, details)

    @classmethod
    def inapplicable(cls, name: str, reason: str, claim: str = "") -> Verdict:
        return cls(name, INAPPLICABLE, claim, None, {"reason": reason})

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "claim": self.claim, "verdict": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Verdict:
        return cls(data["name"], data["verdict"], data.get("claim", ""), data.get("witness"),
                   dict(data.get("details", {})))


def combine(name: str, parts: list[Verdict], claim: str = "") -> Verdict:
    """Fails if any part fails; inapplicable only if every part is."""
    applicable = [v for v in parts if v.status != INAPPLICABLE]
    if not applicable and parts:
        return Verdict(name, INAPPLICABLE, claim, None, {"parts": [v.to_dict() for v in parts]})
    bad = next((v for v in applicable if v.failed), None)
    return Verdict(
        name,
        FAIL if bad else PASS,
        claim,
        None if bad is None else {"part": bad.name, **(bad.witness or {})},
        {"parts": [v.to_dict() for v in parts]},
    )

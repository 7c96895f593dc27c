"""Verification reports: deterministic JSON and a plain-text rendering with the same verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from . import __version__
from .groups.core import Group
from .verdict import FAIL, INAPPLICABLE, PASS, Verdict

SCHEMA = 1

ANCHORS = {
    "chi_case_values": "Jackson character: case formula on Q, C_G(Q) and the rest of G",
    "chi_restrictions_are_characters": "Jackson character: restriction to each member of the family is a character",
    "chi_no_fixed_vectors_on_rank2": "Jackson character: no invariant vectors on rank-two elementary abelian members",
    "normal_subgroup_intersection": "members meeting Q centralize it and meet a conjugate of Q in <a>",
    "noncentralizing_subgroup_shapes": "members outside C_G(Q) are cyclic, direct or twisted extensions of a cyclic group by C_p",
    "subfamilies_almost_strongly_connected": "subfamily diagram for the Jackson family is almost strongly connected",
    "quadruple_factorization": "Jackson family factors through a diagram of finite groups",
    "noncyclic_center_reduction": "rank of the center at least two: reduction to rank-one isotropy",
    "rank_one_star_diagram": "rank-one isotropy: star-shaped diagram of normalizers",
    "biset_bijection_sweep": "coset-space composition map is bijective for cyclic isotropy",
    "mu_bijection": "coset-space composition map for one triple",
    "character_table_exact": "irreducible characters computed exactly over the cyclotomic field",
}


def _encode(obj: Any):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def plain(obj: Any) -> Any:
    """JSON-normal form: string keys, no numpy scalars, no fractions."""
    return json.loads(json.dumps(obj, default=_encode, sort_keys=True))


def group_descriptor(G: Group, spec: str) -> dict[str, Any]:
    pp = G.prime_power()
    return {"spec": spec, "label": G.label, "order": G.order, "p": pp[0] if pp else None}


def summarize(sections: list[dict[str, Any]]) -> str:
    verdicts = [s["verdict"] for s in sections]
    if FAIL in verdicts:
        return FAIL
    if PASS in verdicts:
        return PASS
    return INAPPLICABLE


@dataclass
class VerificationReport:
    command: str
    group: dict[str, Any] | None
    hypotheses: dict[str, str] = field(default_factory=dict)
    sections: list[dict[str, Any]] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)
    version: str = __version__

    def add(self, verdict: Verdict, wall_time: float | None = None) -> None:
        entry = {"anchor": ANCHORS.get(verdict.name, verdict.name), **verdict.to_dict()}
        if wall_time is not None:
            entry["wall_time"] = round(wall_time, 3)
        self.sections.append(plain(entry))

    @property
    def summary(self) -> str:
        return summarize(self.sections)

    @property
    def exit_code(self) -> int:
        return 1 if self.summary == FAIL else 0

    def to_dict(self) -> dict[str, Any]:
        out = {
            "schema": SCHEMA,
            "tool": {"name": "pgverify", "version": self.version},
            "command": self.command,
            "group": self.group,
            "hypotheses": self.hypotheses,
            "sections": self.sections,
            "summary": self.summary,
        }
        if self.extra:
            out["extra"] = self.extra
        return plain(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        rep = cls(data["command"], data["group"], data.get("hypotheses", {}), data.get("sections", []),
                  data.get("extra", {}), data["tool"]["version"])
        if rep.summary != data["summary"]:
            raise ValueError("summary does not match the sections")
        return rep

    def verdicts(self) -> dict[str, str]:
        return {s["name"]: s["verdict"] for s in self.sections}

    def to_text(self) -> str:
        lines = [f"pgverify {self.version} (report schema {SCHEMA})", f"command: {self.command}"]
        if self.group:
            g = self.group
            lines.append(f"group: {g['spec']}  order {g['order']}  p {g['p']}")
        if self.hypotheses:
            lines.append("hypotheses: " + ", ".join(f"{k} {v}" for k, v in self.hypotheses.items()))
        for s in self.sections:
            lines.append(f"[{s['verdict']}] {s['name']}: {s['anchor']}")
            if s.get("claim"):
                lines.append(f"    claim: {s['claim']}")
            if "witness" in s:
                lines.append(f"    witness: {json.dumps(s['witness'], sort_keys=True, ensure_ascii=False)}")
            reason = s.get("details", {}).get("reason")
            if reason and s["verdict"] == INAPPLICABLE:
                lines.append(f"    reason: {reason}")
            if "wall_time" in s:
                lines.append(f"    wall time: {s['wall_time']} s")
        for k, v in self.extra.items():
            lines.append(f"{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
        lines.append(f"summary: {self.summary}")
        return "\n".join(lines) + "\n"


def parse_text_verdicts(text: str) -> dict[str, str]:
    """Section verdicts recovered from the text rendering."""
    out = {}
    for line in text.splitlines():
        if line.startswith("[") and "] " in line:
            status, rest = line[1:].split("] ", 1)
            out[rest.split(":", 1)[0]] = status
    return out

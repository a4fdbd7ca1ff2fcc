"""Check reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

BUG_NOTE = "a failing verdict signals an implementation bug, not a counterexample"


@dataclass
class CheckReport:
    check_name: str
    curve: str
    params: dict[str, Any]
    verdict: str  # "pass" or "fail"
    witness: Any = None  # exact difference or residue values; None on pass
    note: str = BUG_NOTE
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError("verdict must be 'pass' or 'fail'")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        d = {
            "check": self.check_name,
            "curve": self.curve,
            "params": self.params,
            "verdict": self.verdict,
            "witness": _plain(self.witness),
        }
        if self.details:
            d["details"] = _plain(self.details)
        if not self.passed:
            d["note"] = self.note
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _plain(v: Any) -> Any:
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)

"""Verification reports and JSON encoding of the library's values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .algebra import LaurentSeries, Poly, RatFunc
from .field import FieldElem

SCHEMA = "carlitz-lab/1"

PASS = "pass"
FAIL = "fail"
EXPECTED_FAIL = "expected-fail"


def encode(value: Any) -> Any:
    """JSON-ready form of library values (recursing into containers)."""
    if isinstance(value, FieldElem):
        return value.to_json()
    if isinstance(value, RatFunc):
        return value.to_json()
    if isinstance(value, Poly):
        return str(value)
    if isinstance(value, LaurentSeries):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


@dataclass
class VerifyReport:
    """Outcome of one identity check.

    ``status`` is one of pass / fail / expected-fail.  The witness holds both
    sides whenever they differ; ``extra`` carries check-specific data such as
    Schwartz-Zippel bounds or violation indices.
    """

    id: str
    params: dict
    lhs: Any = None
    rhs: Any = None
    status: str = PASS
    witness: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, EXPECTED_FAIL)

    @classmethod
    def compare(cls, id: str, params: dict, lhs, rhs, *, expect_equal: bool = True, **extra) -> VerifyReport:
        """Build a report from two sides.

        With ``expect_equal=False`` the instance is a documented counterexample:
        unequal sides give expected-fail, equal sides give pass.
        """
        equal = lhs == rhs
        if equal:
            status = PASS
        else:
            status = FAIL if expect_equal else EXPECTED_FAIL
        witness = None if equal else {"lhs": lhs, "rhs": rhs}
        return cls(id, params, lhs, rhs, status, witness, dict(extra))

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "id": self.id,
            "params": encode(self.params),
            "lhs": encode(self.lhs),
            "rhs": encode(self.rhs),
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = encode(self.witness)
        if self.extra:
            out["extra"] = encode(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> VerifyReport:
        """Rebuild a report with values left in their JSON form."""
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unexpected schema {data.get('schema')!r}")
        return cls(data["id"], data["params"], data["lhs"], data["rhs"], data["status"],
                   data.get("witness"), data.get("extra", {}))


def combine(id: str, params: dict, reports: list[VerifyReport]) -> VerifyReport:
    """Fold many reports into one: fail if any failed, otherwise pass."""
    failed = [r for r in reports if r.status == FAIL]
    counts = {s: sum(r.status == s for r in reports) for s in (PASS, FAIL, EXPECTED_FAIL)}
    rep = VerifyReport(id, params, status=FAIL if failed else PASS, extra={"counts": counts})
    if failed:
        first = failed[0]
        rep.witness = {"first_failure": first.to_json()}
    return rep

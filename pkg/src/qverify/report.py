"""Verification reports and their line-delimited JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

PASS = "pass"
FAIL = "fail"
ERROR = "error"


def frac_str(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Mismatch:
    """First differing coefficient: exponent of q is ``exp_num/exp_den``."""

    exp_num: int
    exp_den: int
    lhs: Fraction
    rhs: Fraction
    where: Optional[str] = None

    @classmethod
    def at(cls, unit_exp: int, den: int, lhs, rhs, where: Optional[str] = None) -> "Mismatch":
        x = Fraction(unit_exp, den)
        return cls(x.numerator, x.denominator, Fraction(lhs), Fraction(rhs), where)

    def to_record(self) -> dict:
        rec = {"exp_num": self.exp_num, "exp_den": self.exp_den, "lhs": frac_str(self.lhs), "rhs": frac_str(self.rhs)}
        if self.where is not None:
            rec["where"] = self.where
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "Mismatch":
        return cls(rec["exp_num"], rec["exp_den"], Fraction(rec["lhs"]), Fraction(rec["rhs"]), rec.get("where"))


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: dict[str, Any]
    order: int
    status: str
    first_mismatch: Optional[Mismatch] = None
    elapsed_ms: int = 0
    error: Optional[str] = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, ERROR):
            raise ValueError(f"unknown status {self.status!r}")
        if (self.status == FAIL) != (self.first_mismatch is not None):
            raise ValueError("first_mismatch is present exactly when status is fail")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_record(self) -> dict:
        rec = {
            "identity": self.identity,
            "params": self.params,
            "order": self.order,
            "status": self.status,
            "first_mismatch": self.first_mismatch.to_record() if self.first_mismatch else None,
            "ms": self.elapsed_ms,
        }
        if self.error is not None:
            rec["error"] = self.error
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=False)

    @classmethod
    def from_record(cls, rec: dict) -> "VerificationReport":
        mm = rec.get("first_mismatch")
        return cls(
            identity=rec["identity"],
            params=rec["params"],
            order=rec["order"],
            status=rec["status"],
            first_mismatch=Mismatch.from_record(mm) if mm else None,
            elapsed_ms=rec["ms"],
            error=rec.get("error"),
        )

    @classmethod
    def from_json(cls, line: str) -> "VerificationReport":
        return cls.from_record(json.loads(line))

    def summary(self) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params.items())
        head = f"{self.status.upper():5} {self.identity}" + (f"[{params}]" if params else "")
        head += f" order={self.order} ({self.elapsed_ms} ms)"
        if self.first_mismatch:
            m = self.first_mismatch
            exp = str(Fraction(m.exp_num, m.exp_den))
            loc = f" {m.where}" if m.where else ""
            head += f" first mismatch{loc} at q^{exp}: lhs={m.lhs} rhs={m.rhs}"
        if self.error:
            head += f" error: {self.error}"
        return head

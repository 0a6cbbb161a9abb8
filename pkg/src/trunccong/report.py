"""Check outcomes and their JSON / text encodings."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

REPORT_FIELDS = ("theorem", "params", "holds", "witness", "elapsed_ms")
WITNESS_FIELDS = ("kind", "location", "lhs", "rhs")


@dataclass(frozen=True)
class Witness:
    """First place where the two sides disagree.

    ``kind`` is "coefficient" (location names a monomial) or "point" (location
    names an evaluation point).  Values are decimal strings so arbitrary
    precision survives JSON.
    """

    kind: str
    location: str
    lhs: str
    rhs: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "location": self.location, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CongruenceReport:
    """Outcome of one check.  ``holds`` is None when the check was skipped
    (budget or field-existence policy); the reason is in ``params["skipped"]``."""

    theorem: str
    params: dict[str, Any]
    holds: bool | None
    witness: Witness | None = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.holds is False and self.witness is None:
            raise ValueError("a failing report needs a witness")
        if self.holds is not False and self.witness is not None:
            raise ValueError("only failing reports carry a witness")

    @property
    def skipped(self) -> bool:
        return self.holds is None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "holds": self.holds,
            "witness": self.witness.to_dict() if self.witness else None,
            "elapsed_ms": int(self.elapsed_ms),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CongruenceReport":
        if set(d) != set(REPORT_FIELDS):
            raise ValueError(f"unexpected report fields: {sorted(d)}")
        w = d["witness"]
        if w is not None:
            if set(w) != set(WITNESS_FIELDS):
                raise ValueError(f"unexpected witness fields: {sorted(w)}")
            w = Witness(**w)
        return cls(d["theorem"], dict(d["params"]), d["holds"], w, d["elapsed_ms"])

    def line(self) -> str:
        tag = {True: "PASS", False: "FAIL", None: "SKIP"}[self.holds]
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        text = f"[{tag}] {self.theorem} {params} ({self.elapsed_ms} ms)"
        if self.witness:
            w = self.witness
            text += f"\n    first mismatch at {w.kind} {w.location}: lhs={w.lhs} rhs={w.rhs}"
        return text

    def sort_key(self):
        def rank(v):
            return (0, v, "") if isinstance(v, (int, float)) and not isinstance(v, bool) else (1, 0, str(v))

        return (self.theorem, sorted((k, rank(v)) for k, v in self.params.items()))


def _jsonable(v):
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def dumps(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1)


def loads(text: str) -> list[CongruenceReport]:
    return [CongruenceReport.from_dict(d) for d in json.loads(text)]


@dataclass
class Verdict:
    """Accumulates comparisons for one check, keeping the first mismatch."""

    witness: Witness | None = None
    notes: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.witness is None

    def fail(self, witness: Witness):
        if self.witness is None:
            self.witness = witness

    def polys(self, lhs, rhs, var: str = "c", label: str = "") -> bool:
        """Compare two DensePoly (or coefficient sequences) exactly."""
        a = lhs.tolist() if hasattr(lhs, "tolist") else list(lhs)
        b = rhs.tolist() if hasattr(rhs, "tolist") else list(rhs)
        if a == b:
            return True
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        i = next(i for i in range(n) if a[i] != b[i])
        prefix = f"{label} " if label else ""
        self.fail(Witness("coefficient", f"{prefix}{var}^{i}", str(a[i]), str(b[i])))
        return False

    def values(self, lhs, rhs, location: str) -> bool:
        if lhs == rhs:
            return True
        self.fail(Witness("point", location, _fmt(lhs), _fmt(rhs)))
        return False

    def report(self, theorem: str, params: dict, elapsed_ms: int) -> CongruenceReport:
        return CongruenceReport(theorem, params, self.holds, self.witness, elapsed_ms)


def _fmt(v) -> str:
    if hasattr(v, "coords"):
        return ",".join(str(c) for c in v.coords) if len(v.coords) > 1 else str(v.coords[0])
    return str(v)


def elapsed_ms(start: float) -> int:
    """Milliseconds since a ``time.perf_counter()`` reading."""
    return int(round((time.perf_counter() - start) * 1000))


def skipped(theorem: str, params: dict, reason: str, ms: int = 0) -> CongruenceReport:
    return CongruenceReport(theorem, {**params, "skipped": reason}, None, None, ms)

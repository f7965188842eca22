"""Claim and report records shared by the verification modules."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
TRIVIAL_PASS = "TRIVIAL-PASS"


@dataclass(frozen=True)
class CongruenceClaim:
    """function(A*n + B) == 0 (mod modulus) for all n in a filtered range."""

    function: str
    progression: tuple[int, int]  # (A, B)
    modulus: int
    filter_desc: str = ""
    provenance: str = ""

    def __post_init__(self):
        a, _ = self.progression
        if a < 1 or self.modulus < 2:
            raise ValueError("need A >= 1 and modulus >= 2")

    def describe(self) -> str:
        a, b = self.progression
        arg = f"{a}n+{b}" if a != 1 else f"n+{b}" if b else "n"
        s = f"{self.function}({arg}) == 0 (mod {self.modulus})"
        if self.filter_desc:
            s += f" for {self.filter_desc}"
        return s


@dataclass
class VerificationReport:
    claim: CongruenceClaim
    n_range: tuple[int, int]
    counterexamples: list[tuple[int, int]] = field(default_factory=list)
    skipped: int = 0
    tested: int = 0
    elapsed: float = 0.0
    truncation: int = 0
    trivial: bool = False

    @property
    def status(self) -> str:
        if self.trivial:
            return TRIVIAL_PASS
        return PASS if not self.counterexamples else FAIL

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "claim": self.claim.describe(),
            "provenance": self.claim.provenance,
            "status": self.status,
            "n_range": list(self.n_range),
            "tested": self.tested,
            "skipped": self.skipped,
            "counterexamples": [list(c) for c in sorted(self.counterexamples)],
            "elapsed": round(self.elapsed, 3),
            "truncation": self.truncation,
        }

    def summary_line(self) -> str:
        return f"[{self.status}] {self.claim.describe()}  ({self.claim.provenance})"


def reports_to_json(reports) -> str:
    """Deterministic JSON: stable key order, fixed separators."""
    docs = [r.to_dict() for r in reports]
    return json.dumps(docs, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


_CSV_FIELDS = [
    "claim", "provenance", "status", "n_range", "tested",
    "skipped", "counterexamples", "elapsed", "truncation",
]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        row = r.to_dict()
        row["n_range"] = f"{row['n_range'][0]}..{row['n_range'][1]}"
        row["counterexamples"] = ";".join(f"{n}:{v}" for n, v in row["counterexamples"])
        writer.writerow(row)
    return buf.getvalue()

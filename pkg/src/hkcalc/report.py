"""Suite reports: per-identity rows, text and record rendering.

Records are newline-delimited JSON with sorted keys and fixed separators,
so byte-identical output is reproducible run to run.  Wall-clock timing
appears only in the human-readable text rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Row:
    """One verified identity: name, source anchor, arena, outcome.

    `factor` is the exact constant c with LHS = c * RHS_as_printed; "1"
    means the identity holds verbatim.  `detail` carries a counterexample
    description or a degeneracy note.
    """

    name: str
    anchor: str
    arena: str
    passed: bool
    factor: str = "1"
    detail: str = ""


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class Report:
    title: str
    rows: list[Row] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def add(self, row: Row) -> None:
        self.rows.append(row)

    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def merge(self, other: "Report") -> "Report":
        meta = dict(self.meta)
        meta.update(other.meta)
        return Report(self.title, self.rows + other.rows, meta,
                      self.elapsed + other.elapsed)

    def render_text(self) -> str:
        lines = [f"suite {self.title}: "
                 f"{'PASS' if self.all_passed() else 'FAIL'} "
                 f"({sum(r.passed for r in self.rows)}/{len(self.rows)} rows, "
                 f"{self.elapsed:.2f}s)"]
        if self.meta:
            pairs = ", ".join(
                f"{k}={_jsonable(v)}" for k, v in sorted(self.meta.items()))
            lines.append(f"  config: {pairs}")
        for r in self.rows:
            mark = "ok " if r.passed else "FAIL"
            factor = "" if r.factor == "1" else f"  [factor {r.factor}]"
            detail = f"  ({r.detail})" if r.detail else ""
            lines.append(
                f"  {mark} {r.name}  [{r.arena}]  <{r.anchor}>{factor}{detail}")
        return "\n".join(lines)

    def render_records(self) -> str:
        out = []
        for r in self.rows:
            rec = {"type": "row", "suite": self.title, "name": r.name,
                   "anchor": r.anchor, "arena": r.arena, "passed": r.passed,
                   "factor": r.factor, "detail": r.detail}
            out.append(json.dumps(rec, sort_keys=True,
                                  separators=(",", ":")))
        summary = {"type": "summary", "suite": self.title,
                   "passed": self.all_passed(), "rows": len(self.rows),
                   "meta": _jsonable(self.meta)}
        out.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
        return "\n".join(out)

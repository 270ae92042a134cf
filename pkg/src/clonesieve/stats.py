"""Run counters: filter-funnel effectiveness and per-phase timings.

The candidate funnel must narrow monotonically on every run:

    clone_pairs <= candidates_after_position <= candidates_after_size
                <= candidates_after_prefix  <= naive_pairs

token_comparisons counts every merge-step token comparison in both the
filter and the verify phase, so the cost of filtering itself is visible.
verified_pairs counts verifications that ran to completion without early
abandon (a completed verification may still fail the threshold).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

COUNTER_FIELDS = (
    "blocks",
    "naive_pairs",
    "candidates_after_prefix",
    "candidates_after_size",
    "candidates_after_position",
    "token_comparisons",
    "verified_pairs",
    "clone_pairs",
)

PHASES = ("lex", "rank", "index", "detect")


@dataclass
class RunStats:
    blocks: int = 0
    naive_pairs: int = 0
    candidates_after_prefix: int = 0
    candidates_after_size: int = 0
    candidates_after_position: int = 0
    token_comparisons: int = 0
    verified_pairs: int = 0
    clone_pairs: int = 0
    wall_time_ms: dict[str, float] = field(default_factory=dict)

    def record(self, event: str, amount: int = 1) -> None:
        """Add to a named counter; counters only ever grow."""
        if event not in COUNTER_FIELDS:
            raise KeyError(f"unknown counter: {event}")
        if amount < 0:
            raise ValueError("counters are monotone, amount must be >= 0")
        setattr(self, event, getattr(self, event) + amount)

    def time_phase(self, phase: str, ms: float) -> None:
        self.wall_time_ms[phase] = self.wall_time_ms.get(phase, 0.0) + ms

    def merge(self, other: "RunStats") -> None:
        """Fold worker-local counters into this one."""
        for name in COUNTER_FIELDS:
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for phase, ms in other.wall_time_ms.items():
            self.time_phase(phase, ms)

    def check_funnel(self) -> None:
        """Raise if the candidate funnel is not monotone."""
        chain = (
            self.clone_pairs,
            self.candidates_after_position,
            self.candidates_after_size,
            self.candidates_after_prefix,
            self.naive_pairs,
        )
        for lo, hi in zip(chain, chain[1:]):
            if lo > hi:
                raise AssertionError(f"candidate funnel violated: {self.to_dict()}")

    def to_dict(self) -> dict:
        out: dict = {name: getattr(self, name) for name in COUNTER_FIELDS}
        out["wall_time_ms"] = {p: round(self.wall_time_ms.get(p, 0.0), 3) for p in PHASES}
        return out

    def write_json(self, path: Path | str) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")


CSV_HEADER = ",".join(("blocks", "theta") + COUNTER_FIELDS[1:]) + "\n"


def append_csv_row(stats: RunStats, theta: int, path: Path | str) -> None:
    """Append one sweep row (header written for a new/empty file)."""
    path = Path(path)
    row = ",".join(
        str(v)
        for v in (stats.blocks, theta) + tuple(getattr(stats, f) for f in COUNTER_FIELDS[1:])
    )
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8", newline="") as fh:
        if new:
            fh.write(CSV_HEADER)
        fh.write(row + "\n")

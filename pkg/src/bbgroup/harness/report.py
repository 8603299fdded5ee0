"""Experiment reports: one ``key=value`` record per line, fixed key order."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

MAX_WITNESSES = 10
FIELDS = ("experiment", "parameters", "seed", "trials", "failures", "witnesses", "wall_time_ms")


@dataclass
class Report:
    experiment: str
    parameters: dict[str, object] = field(default_factory=dict)
    seed: int | None = None
    trials: int = 0
    failures: int = 0
    witnesses: list[str] = field(default_factory=list)
    wall_time_ms: int = 0
    _t0: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def record(self, ok: bool, witness: bytes | str | None = None) -> None:
        self.trials += 1
        if not ok:
            self.failures += 1
            if witness is not None and len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness.hex() if isinstance(witness, bytes) else str(witness))

    def finish(self) -> "Report":
        self.wall_time_ms = int((time.perf_counter() - self._t0) * 1000)
        return self

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_line(self, with_time: bool = True) -> str:
        params = ",".join(f"{k}:{v}" for k, v in self.parameters.items())
        parts = [
            f"experiment={self.experiment}",
            f"parameters={params}",
            f"seed={'' if self.seed is None else self.seed}",
            f"trials={self.trials}",
            f"failures={self.failures}",
            f"witnesses={','.join(self.witnesses)}",
        ]
        if with_time:
            parts.append(f"wall_time_ms={self.wall_time_ms}")
        return " ".join(parts)

    @classmethod
    def from_line(cls, line: str) -> "Report":
        kv = dict(part.split("=", 1) for part in line.split())
        params = {}
        if kv.get("parameters"):
            for item in kv["parameters"].split(","):
                k, _, v = item.partition(":")
                params[k] = v
        return cls(
            experiment=kv["experiment"],
            parameters=params,
            seed=int(kv["seed"]) if kv.get("seed") else None,
            trials=int(kv["trials"]),
            failures=int(kv["failures"]),
            witnesses=[w for w in kv.get("witnesses", "").split(",") if w],
            wall_time_ms=int(kv.get("wall_time_ms", 0)),
        )

    def append_to(self, path: str | Path) -> None:
        with open(path, "a") as fh:
            fh.write(self.to_line() + "\n")

"""Tolerance configuration embedded into every CLI report.

A single JSON file can override the defaults; individual CLI flags
override the file. ``DIRAC_LAB_THREADS`` caps worker threads used by
grid scans.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass


def _threads_from_env() -> int:
    raw = os.environ.get("DIRAC_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


@dataclass(frozen=True)
class ToleranceConfig:
    tol_1d: float = 1e-8
    tol_2d: float = 1e-8
    tol_4d_rel: float = 1e-3          # relative, Gagliardo double integrals
    gagliardo_depth: int = 12         # dyadic shells toward the vertex
    unitary_tol: float = 1e-12
    membership_tol: float = 1e-12
    degeneracy_rel_tol: float = 1e-12  # |cross| < tol*|e1||e2| -> collinear
    bc_samples: int = 200
    threads: int = dataclasses.field(default_factory=_threads_from_env)

    @classmethod
    def from_json(cls, path: str) -> "ToleranceConfig":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in dataclasses.fields(cls)}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**data)

    def with_overrides(self, **kwargs) -> "ToleranceConfig":
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return dataclasses.replace(self, **updates)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT_CONFIG = ToleranceConfig()

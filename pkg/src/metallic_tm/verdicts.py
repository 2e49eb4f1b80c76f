"""Verdict records and residual aggregation shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .scalars import scalar_abs, scalar_str

FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class Witness:
    point: tuple
    frame: tuple
    value: str

    def to_json(self) -> dict:
        return {
            "point": [scalar_str(c) for c in self.point],
            "frame": list(self.frame),
            "value": self.value,
        }


@dataclass(frozen=True)
class AxiomVerdict:
    axiom_id: str
    status: str  # "holds" or "fails"
    max_residual: Any
    witness: Optional[Witness] = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom_id,
            "status": self.status,
            "max_residual": {
                "exact": scalar_str(self.max_residual),
                "float": float(self.max_residual),
            },
            "witness": self.witness.to_json() if self.witness else None,
        }


class ResidualTracker:
    """Collects residual values and reports the max-magnitude one.

    In exact mode a residual "meets zero" iff it is exactly zero; in float
    mode iff its magnitude is at most ``tol`` times the tracked scale.
    """

    def __init__(self, mode: str = "exact", tol: float = FLOAT_TOL) -> None:
        self.mode = mode
        self.tol = tol
        self.max_value: Any = 0
        self.max_abs = 0.0
        self.scale = 1.0
        self.witness: Optional[Witness] = None

    def note_scale(self, value) -> None:
        m = scalar_abs(value)
        if m > self.scale:
            self.scale = m

    def update(self, value, point_coords, frame) -> None:
        m = scalar_abs(value)
        if m > self.max_abs:
            self.max_abs = m
            self.max_value = value
            self.witness = Witness(tuple(point_coords), tuple(frame), scalar_str(value))

    @property
    def all_zero(self) -> bool:
        if self.mode == "exact":
            return self.max_abs == 0.0 and (
                self.max_value == 0 or not self.max_value
            )
        return self.max_abs <= self.tol * self.scale

    def verdict(self, axiom_id: str, expect_zero: bool = True) -> AxiomVerdict:
        ok = self.all_zero if expect_zero else not self.all_zero
        return AxiomVerdict(
            axiom_id,
            "holds" if ok else "fails",
            self.max_value,
            self.witness,
        )

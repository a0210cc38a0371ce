"""Labeled execution traces shared by the four algorithm runners."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..hilbert import StateVector
from ..measurement import MeasurementRecord


@dataclass
class AlgorithmTrace:
    """Checkpoint states keyed by time labels t0..t5, plus measurement
    records, the number of oracle uses, and run metadata."""

    checkpoints: list[tuple[str, StateVector]] = field(default_factory=list)
    measurements: list[MeasurementRecord] = field(default_factory=list)
    oracle_queries: int = 0
    metadata: dict = field(default_factory=dict)

    def add(self, label: str, state: StateVector) -> StateVector:
        if self.checkpoints and label <= self.checkpoints[-1][0]:
            raise ValueError(
                f"checkpoint label {label!r} does not follow {self.checkpoints[-1][0]!r}"
            )
        self.checkpoints.append((label, state))
        return state

    def state_at(self, label: str) -> StateVector:
        for lbl, state in self.checkpoints:
            if lbl == label:
                return state
        raise KeyError(f"no checkpoint labeled {label!r}")

    @property
    def labels(self) -> list[str]:
        return [lbl for lbl, _ in self.checkpoints]

    def to_json(self, include_states: bool = True) -> dict:
        return {
            "metadata": self.metadata,
            "oracle_queries": self.oracle_queries,
            "checkpoints": [
                {"label": lbl, "state": state.records() if include_states else None}
                for lbl, state in self.checkpoints
            ],
            "measurements": [rec.to_json() for rec in self.measurements],
        }

"""The one-bit oracle identification game, in three tellings.

original  the challenger fixes a mode k and hands over the oracle; one
          quantum evaluation decides balanced vs unbalanced, where two
          classical evaluations would be needed.
extended  the mode itself sits in a register m in superposition; one oracle
          evaluation entangles m with the answer register, and measuring m
          selects the challenger's mode and the solver's answer together.
mixture   same circuit, but the mode superposition carries independent
          random phases, making the handed-over state indistinguishable
          from a classical random choice; the (mode, answer) correlation is
          untouched by the phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError, RangeError
from ..gates import GateSpec, apply_function_xor, apply_function_xor_controlled, hadamard
from ..hilbert import RegisterLayout, StateVector, make_basis_state
from ..measurement import StagedCircuit, measure
from ..oracles import deutsch_family
from .trace import AlgorithmTrace

VARIANTS = ("original", "extended", "mixture")

BALANCED_MODES = (0b01, 0b10)


@dataclass(frozen=True)
class DeutschResult:
    variant: str
    mode: int
    balanced: bool
    phases: tuple[float, ...] | None = None

    @property
    def mode_label(self) -> str:
        return f"{self.mode:02b}"

    @property
    def answer(self) -> str:
        return "balanced" if self.balanced else "unbalanced"


def parse_mode(k: int | str) -> int:
    """Accept a mode as an int 0..3 or a two-bit string like '10'."""
    try:
        mode = int(k, 2) if isinstance(k, str) else int(k)
    except ValueError as exc:
        raise RangeError(f"mode {k!r} is not one of 00, 01, 10, 11") from exc
    if not 0 <= mode < 4:
        raise RangeError(f"mode {k!r} is not one of 00, 01, 10, 11")
    return mode


def _inject_phases(state: StateVector, register: str, phases: np.ndarray) -> StateVector:
    """Multiply the branches with register value 1..len(phases) by e^(i*delta)."""
    layout = state.layout
    factors = np.ones(layout.register_dim(register), dtype=np.complex128)
    factors[1 : 1 + len(phases)] = np.exp(1j * phases)
    return StateVector(layout, state.amplitudes * factors[layout.values(register)])


def run_deutsch(
    variant: str = "original",
    k: int | str | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[AlgorithmTrace, DeutschResult]:
    """Run one variant; see the module docstring for what each one does."""
    if variant not in VARIANTS:
        raise RangeError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if variant == "original":
        if k is None:
            raise PreconditionError("original variant needs an explicit mode k")
        return _run_original(parse_mode(k), rng)
    if k is not None:
        raise PreconditionError(f"{variant} variant selects the mode itself; drop k")
    if rng is None:
        raise PreconditionError(f"{variant} variant needs an rng")
    return _run_mode_register(variant, rng)


def _run_original(
    mode: int, rng: np.random.Generator | None
) -> tuple[AlgorithmTrace, DeutschResult]:
    oracle = deutsch_family()[mode]
    layout = RegisterLayout((("a", 1), ("v", 1)))
    trace = AlgorithmTrace(metadata={"algorithm": "deutsch", "variant": "original", "mode": mode})
    state = make_basis_state(layout, {"a": 0, "v": 1})
    state = trace.add("t0", hadamard(state, "v"))
    state = trace.add("t1", hadamard(state, "a"))
    state = trace.add("t2", apply_function_xor(state, oracle, "a", "v"))
    trace.oracle_queries += 1
    state = trace.add("t3", hadamard(state, "a"))
    record = measure(state, "a", rng if rng is not None else np.random.default_rng(0))
    trace.measurements.append(record)
    return trace, DeutschResult("original", mode, balanced=record.outcome == 1)


def deutsch_extended_staged_circuit() -> StagedCircuit:
    """Extended-variant circuit with the mode measurement deferrable.

    Measuring the mode register right after the oracle (t2) or only after
    the final interference step (t3) must leave the joint (mode, answer)
    statistics unchanged, since t3 never touches the mode register.
    """
    layout = RegisterLayout((("m", 2), ("a", 1), ("v", 1)))
    initial = hadamard(make_basis_state(layout, {"m": 0, "a": 0, "v": 1}), "v")
    return StagedCircuit(
        initial=initial,
        steps=(
            ("t1", GateSpec("hadamard", ("m",))),
            ("t1", GateSpec("hadamard", ("a",))),
            (
                "t2",
                GateSpec(
                    "function-xor-controlled",
                    ("m", "a", "v"),
                    family=tuple(deutsch_family()),
                ),
            ),
            ("t3", GateSpec("hadamard", ("a",))),
        ),
        deferred_register="m",
        final_registers=("a",),
    )


def _run_mode_register(
    variant: str, rng: np.random.Generator
) -> tuple[AlgorithmTrace, DeutschResult]:
    layout = RegisterLayout((("m", 2), ("a", 1), ("v", 1)))
    trace = AlgorithmTrace(
        metadata={
            "algorithm": "deutsch",
            "variant": variant,
            "mode_register": "m",
            "mode_chosen_by": "challenger",
            "answer_register": "a",
            "answered_by": "solver",
        }
    )
    phases = rng.uniform(0.0, 2.0 * np.pi, size=3) if variant == "mixture" else None
    state = make_basis_state(layout, {"m": 0, "a": 0, "v": 1})
    state = trace.add("t0", hadamard(state, "v"))
    state = hadamard(hadamard(state, "m"), "a")
    if phases is not None:
        state = _inject_phases(state, "m", phases)
        trace.metadata["phases"] = [float(p) for p in phases]
    state = trace.add("t1", state)
    state = trace.add(
        "t2", apply_function_xor_controlled(state, deutsch_family(), "m", "a", "v")
    )
    trace.oracle_queries += 1
    state = trace.add("t3", hadamard(state, "a"))
    mode_record = measure(state, "m", rng)
    trace.measurements.append(mode_record)
    answer_record = measure(mode_record.post_state, "a", rng)
    trace.measurements.append(answer_record)
    return trace, DeutschResult(
        variant,
        mode_record.outcome,
        balanced=answer_record.outcome == 1,
        phases=tuple(float(p) for p in phases) if phases is not None else None,
    )

"""Parallel layering of a transform plan.

``P(I)`` runs at time step ``2I`` and ``Q(I, J)`` at step ``I + J``; steps
execute from ``2L - 2`` down to ``0``.  Under this rule every layer touches
each qubit at most once, and every reordering relative to the sequential
plan swaps only gates that act on disjoint qubits or that are both diagonal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .circuit import CircuitPlan, GateKind, GateOp, gates_to_matrix, plan_to_matrix

EQUIVALENCE_MAX_WIDTH = 7


def time_step(gate: GateOp) -> int:
    if gate.kind is GateKind.HADAMARD:
        return 2 * gate.j
    return gate.j + gate.k


@dataclass(frozen=True)
class Schedule:
    width_l: int
    layers: tuple[frozenset[GateOp], ...]
    steps: tuple[int, ...]
    empty_steps: tuple[int, ...] = ()

    def ordered_layers(self) -> list[list[GateOp]]:
        return [sorted(layer, key=GateOp.sort_key) for layer in self.layers]

    def flat_gates(self) -> list[GateOp]:
        return [g for layer in self.ordered_layers() for g in layer]

    def to_text(self) -> str:
        return " ".join(
            "[" + " ".join(g.label for g in layer) + "]" for layer in self.ordered_layers()
        )


def schedule_plan(plan: CircuitPlan) -> Schedule:
    l = plan.width_l
    buckets: dict[int, set[GateOp]] = {}
    for gate in plan.gates:
        if max(gate.qubits) >= l:
            raise ValueError(f"gate {gate.label} exceeds plan width {l}")
        buckets.setdefault(time_step(gate), set()).add(gate)
    steps = [k for k in range(2 * l - 2, -1, -1) if k in buckets]
    empty = tuple(k for k in range(2 * l - 2, -1, -1) if k not in buckets)
    return Schedule(l, tuple(frozenset(buckets[k]) for k in steps), tuple(steps), empty)


def schedule_depth(schedule: Schedule) -> int:
    return sum(1 for layer in schedule.layers if layer)


@dataclass
class ValidationReport:
    disjoint: bool = True
    complete: bool = True
    equivalent: bool | None = None
    max_matrix_error: float | None = None
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.complete and self.equivalent is not False


def validate_schedule(schedule: Schedule, plan: CircuitPlan, atol: float = 1e-10) -> ValidationReport:
    """Check qubit-disjointness per layer, gate multiset equality, and (small widths) unitary equality."""
    report = ValidationReport()
    for idx, layer in enumerate(schedule.ordered_layers()):
        seen: dict[int, GateOp] = {}
        for gate in layer:
            for q in gate.qubits:
                if q in seen:
                    report.disjoint = False
                    report.problems.append(
                        f"layer {idx}: {seen[q].label} and {gate.label} share qubit {q}"
                    )
                seen[q] = gate
    # layers are sets, so a duplicated gate inside one layer is only visible via counts
    scheduled = Counter(g for layer in schedule.layers for g in layer)
    planned = Counter(plan.gates)
    if scheduled != planned:
        report.complete = False
        missing = planned - scheduled
        extra = scheduled - planned
        if missing:
            report.problems.append("missing gates: " + " ".join(g.label for g in missing))
        if extra:
            report.problems.append("extra gates: " + " ".join(g.label for g in extra))
    if plan.width_l <= EQUIVALENCE_MAX_WIDTH:
        err = float(np.abs(
            gates_to_matrix(schedule.flat_gates(), plan.width_l) - plan_to_matrix(plan)
        ).max())
        report.max_matrix_error = err
        report.equivalent = err <= atol
        if not report.equivalent:
            report.problems.append(f"layer product differs from plan by {err:.3g}")
    return report

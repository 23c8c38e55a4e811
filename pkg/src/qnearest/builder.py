"""Builds and executes the nearest-element search circuits.

Three execution modes share one gate vocabulary:

``paper``
    Two elements only. The index qubit itself receives the comparison
    rotations, so its marginal distribution carries the decision directly.

``general``
    Any element count m. The index qudit gets one level per element and a
    dedicated score qubit receives the rotations; the decision is the index
    distribution conditioned on the score reading 0. Reduces to ranking by
    cos^2 of half the net rotation angle, which is strictly decreasing in
    the distance to the reference value.

``full``
    Reference and array values travel on simulated quantum wires initialized
    to the classical inputs. Copy gates become Toffoli-style (controlled on
    the array wires) and comparison rotations are controlled on the
    reference wires. Exists to validate that compiling the classical inputs
    away, as the other two modes do, is observationally equivalent.

In every mode the net rotation a branch holding value a accumulates against
reference b is pi * (b - a) / 2^n: bit k (most significant first) carries
weight pi / 2^(k+1), applied with positive sign where b's bit is high and
the copy bit low, negative sign in the opposite case, and skipped when the
bits agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import CapacityError, InvalidInputError
from .gates import Gate, fourier, hadamard, pauli_x, rx
from .state import (
    RegisterLayout,
    Role,
    Site,
    StateVector,
    apply_controlled,
    init_basis_state,
)

DEFAULT_AMPLITUDE_CAP = 1 << 26


class Mode(str, Enum):
    PAPER = "paper"
    GENERAL = "general"
    FULL = "full"


@dataclass(frozen=True)
class SearchProblem:
    """One search instance: find the element of ``a`` nearest to ``b``.

    All values are n-bit unsigned integers. ``amplitude_cap`` bounds the
    simulated state size; exceeding it raises :class:`CapacityError` before
    anything is allocated.
    """

    n: int
    a: tuple[int, ...]
    b: int
    mode: Mode = Mode.GENERAL
    amplitude_cap: int = DEFAULT_AMPLITUDE_CAP

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        object.__setattr__(self, "b", int(self.b))
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.n < 1:
            raise InvalidInputError(f"bit width must be >= 1, got {self.n}")
        if not self.a:
            raise InvalidInputError("array must be nonempty")
        limit = 1 << self.n
        for j, v in enumerate(self.a):
            if not 0 <= v < limit:
                raise InvalidInputError(f"a[{j}] = {v} outside [0, 2^{self.n})")
        if not 0 <= self.b < limit:
            raise InvalidInputError(f"b = {self.b} outside [0, 2^{self.n})")
        if self.mode is Mode.PAPER and self.m != 2:
            raise InvalidInputError(f"paper mode requires exactly 2 elements, got {self.m}")
        size = self.state_size()
        if size > self.amplitude_cap:
            raise CapacityError(
                f"state needs {size} amplitudes, cap is {self.amplitude_cap}"
            )

    @property
    def m(self) -> int:
        return len(self.a)

    def state_size(self) -> int:
        """Amplitude count of this problem's layout, computed without allocating."""
        size = (1 << self.n) * _index_dimension(self.m)
        if self.mode is Mode.FULL:
            size <<= self.n * (self.m + 1)
        if uses_score(self):
            size <<= 1
        return size


def _index_dimension(m: int) -> int:
    # a lone element still needs a valid two-level site; level 1 stays empty
    return max(2, m)


def uses_score(problem: SearchProblem) -> bool:
    """True when comparison rotations target the score qubit instead of the index."""
    return problem.mode is Mode.GENERAL or (problem.mode is Mode.FULL and problem.m != 2)


def value_bits(value: int, n: int) -> tuple[int, ...]:
    """Bits of an n-bit value, most significant first."""
    return tuple((value >> (n - 1 - k)) & 1 for k in range(n))


@dataclass(frozen=True)
class RotationSchedule:
    """Per-bit rotation weights, most significant bit first: pi/2, pi/4, ..."""

    weights: tuple[float, ...]


def rotation_schedule(n: int) -> RotationSchedule:
    if n < 1:
        raise InvalidInputError(f"bit width must be >= 1, got {n}")
    return RotationSchedule(tuple(math.pi / (1 << (k + 1)) for k in range(n)))


def net_rotation_angle(n: int, b: int, value: int) -> float:
    """Net signed angle a branch holding ``value`` accumulates against ``b``."""
    return math.pi * (b - value) / (1 << n)


def _signed_weight(reference_bit: int, weight: float) -> float:
    # direction convention: high reference bit rotates +, low rotates -
    return weight if reference_bit else -weight


@dataclass(frozen=True)
class CircuitGate:
    gate: Gate
    controls: tuple[tuple[int, int], ...]
    target: int


@dataclass(frozen=True)
class Circuit:
    """Gate list over a layout, starting from a fixed basis state."""

    layout: RegisterLayout
    initial_digits: tuple[int, ...]
    gates: tuple[CircuitGate, ...]

    def __post_init__(self) -> None:
        self.layout.flatten(self.initial_digits)  # validates length and ranges
        nsites = len(self.layout.sites)
        for cg in self.gates:
            if not 0 <= cg.target < nsites:
                raise InvalidInputError(f"gate {cg.gate.label!r}: unknown target {cg.target}")
            if cg.gate.dimension != self.layout.dims[cg.target]:
                raise InvalidInputError(
                    f"gate {cg.gate.label!r}: dimension {cg.gate.dimension} does not match "
                    f"target site dimension {self.layout.dims[cg.target]}"
                )
            for site, digit in cg.controls:
                if not 0 <= site < nsites or not 0 <= digit < self.layout.dims[site]:
                    raise InvalidInputError(
                        f"gate {cg.gate.label!r}: bad control ({site}, {digit})"
                    )

    def dump(self) -> str:
        """Line-oriented text form, stable across runs.

        Two comment lines describe the layout and the initial digits, then
        one line per gate: ``label | control=digit ... | target`` with ``-``
        standing for an empty control list. Rotation angles ride in the
        gate label.
        """
        sites = self.layout.sites
        lines = [
            "# sites: " + " ".join(f"{s.label}:{s.dimension}" for s in sites),
            "# init: " + " ".join(str(d) for d in self.initial_digits),
        ]
        for cg in self.gates:
            ctrl = " ".join(f"{sites[s].label}={d}" for s, d in cg.controls) or "-"
            lines.append(f"{cg.gate.label} | {ctrl} | {sites[cg.target].label}")
        return "\n".join(lines) + "\n"


def build_layout(problem: SearchProblem) -> RegisterLayout:
    """Canonical site order for a problem.

    Full mode: reference bits, then each element's bits, then the copy
    buffer, index qudit and (for m != 2) the score qubit. Compiled modes
    drop the reference and array wires. Bit sites are most significant
    first, matching :func:`value_bits`.
    """
    n, m = problem.n, problem.m
    sites: list[Site] = []
    if problem.mode is Mode.FULL:
        sites += [Site(Role.REFERENCE, 2, f"ref{k}") for k in range(n)]
        for j in range(m):
            sites += [Site(Role.ARRAY, 2, f"arr{j}.{k}") for k in range(n)]
    sites += [Site(Role.COPY, 2, f"copy{k}") for k in range(n)]
    sites.append(Site(Role.INDEX, _index_dimension(m), "index"))
    if uses_score(problem):
        sites.append(Site(Role.SCORE, 2, "score"))
    layout = RegisterLayout(tuple(sites))
    if layout.total_dimension > problem.amplitude_cap:
        raise CapacityError(
            f"state needs {layout.total_dimension} amplitudes, cap is {problem.amplitude_cap}"
        )
    return layout


def _initial_digits(problem: SearchProblem, layout: RegisterLayout) -> tuple[int, ...]:
    digits = [0] * len(layout.sites)
    if problem.mode is Mode.FULL:
        refs = layout.sites_of(Role.REFERENCE)
        arrs = layout.sites_of(Role.ARRAY)
        for k, bit in enumerate(value_bits(problem.b, problem.n)):
            digits[refs[k]] = bit
        for j, v in enumerate(problem.a):
            for k, bit in enumerate(value_bits(v, problem.n)):
                digits[arrs[j * problem.n + k]] = bit
    return tuple(digits)


def superposition_gates(problem: SearchProblem, layout: RegisterLayout) -> tuple[CircuitGate, ...]:
    """The uniform-superposition gate on the index qudit (none for m = 1)."""
    if problem.m == 1:
        return ()
    index = layout.single(Role.INDEX)
    d = layout.dims[index]
    return (CircuitGate(hadamard() if d == 2 else fourier(d), (), index),)


def copy_gates(problem: SearchProblem, layout: RegisterLayout) -> tuple[CircuitGate, ...]:
    """Controlled X gates copying element j into the buffer on the index-j branch.

    One gate per set bit of each element; in full mode the gate is also
    controlled on the matching array wire, Toffoli-style.
    """
    n = problem.n
    index = layout.single(Role.INDEX)
    copies = layout.sites_of(Role.COPY)
    arrs = layout.sites_of(Role.ARRAY)
    flip = pauli_x(2)
    out = []
    for j, v in enumerate(problem.a):
        for k, bit in enumerate(value_bits(v, n)):
            if not bit:
                continue
            controls = [(index, j)]
            if arrs:
                controls.append((arrs[j * n + k], 1))
            out.append(CircuitGate(flip, tuple(controls), copies[k]))
    return tuple(out)


def comparison_gates(problem: SearchProblem, layout: RegisterLayout) -> tuple[CircuitGate, ...]:
    """One controlled rotation per bit position where some element differs from b.

    The control requires the copy bit to differ from b's bit; in full mode
    the reference wire is a further control, so the rotation stays
    conditioned on the loaded reference value rather than baked in. Bits
    where every element matches b are skipped because the gate could never
    fire.
    """
    n = problem.n
    weights = rotation_schedule(n).weights
    copies = layout.sites_of(Role.COPY)
    refs = layout.sites_of(Role.REFERENCE)
    target = layout.single(Role.SCORE) if uses_score(problem) else layout.single(Role.INDEX)
    b_bits = value_bits(problem.b, n)
    out = []
    for k in range(n):
        b_k = b_bits[k]
        if all(value_bits(v, n)[k] == b_k for v in problem.a):
            continue
        controls = [(copies[k], 1 - b_k)]
        if refs:
            controls.insert(0, (refs[k], b_k))
        out.append(CircuitGate(rx(_signed_weight(b_k, weights[k])), tuple(controls), target))
    return tuple(out)


def build_circuit(problem: SearchProblem) -> Circuit:
    """Complete circuit for any mode: superposition, copy, then comparison."""
    layout = build_layout(problem)
    gates = (
        superposition_gates(problem, layout)
        + copy_gates(problem, layout)
        + comparison_gates(problem, layout)
    )
    return Circuit(layout, _initial_digits(problem, layout), gates)


def build_full_circuit(problem: SearchProblem) -> Circuit:
    """Wire-level circuit with reference and array registers as quantum wires."""
    if problem.mode is not Mode.FULL:
        raise InvalidInputError(f"expected full mode, got {problem.mode.value!r}")
    return build_circuit(problem)


def execute_circuit(circuit: Circuit) -> StateVector:
    state = init_basis_state(circuit.layout, circuit.initial_digits)
    for cg in circuit.gates:
        state = apply_controlled(state, cg.controls, cg.target, cg.gate.matrix)
    return state


def load_superposition(problem: SearchProblem) -> StateVector:
    """State after the loading stage: (1/sqrt(m)) sum_j |a_j> on the copy buffer, |j> on the index."""
    layout = build_layout(problem)
    state = init_basis_state(layout, _initial_digits(problem, layout))
    for cg in superposition_gates(problem, layout) + copy_gates(problem, layout):
        state = apply_controlled(state, cg.controls, cg.target, cg.gate.matrix)
    return state


def apply_comparison_stage(state: StateVector, problem: SearchProblem) -> StateVector:
    """Apply the bit-weighted comparison rotations to a loaded state."""
    layout = build_layout(problem)
    if state.layout != layout:
        raise InvalidInputError("state layout does not match the problem's mode")
    for cg in comparison_gates(problem, layout):
        state = apply_controlled(state, cg.controls, cg.target, cg.gate.matrix)
    return state


def run(problem: SearchProblem) -> StateVector:
    """Load the superposition, then apply the comparison stage."""
    return apply_comparison_stage(load_superposition(problem), problem)

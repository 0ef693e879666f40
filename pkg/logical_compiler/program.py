"""
Pulse programs and logical circuits.

A PulseProgram is the physical artifact: free ZZ evolution windows,
zero-time single-qubit gates, Z measurements and classical branches. A
LogicalCircuit is the input: operations on N logical qubits.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union
import math

import numpy as np

from logical_compiler.gates import GATES, is_unitary, rx, rz
from errors import ConfigError, ProgramError
from flip_scheduler.models import FlipSchedule, check_spins

Pair = Tuple[int, int]


# ==================== Physical steps ====================

@dataclass(frozen=True)
class Evolve:
    """
    Free evolution for `duration` under the native couplings.

    profile holds the effective spin of every physical qubit. When a
    schedule is attached it is the authoritative description of the flips,
    including intra-class multipliers that a product profile cannot express.
    """
    duration: float
    profile: Tuple[float, ...]
    schedule: Optional[FlipSchedule] = None
    label: str = ""

    def __post_init__(self):
        if not self.duration > 0:
            raise ProgramError(f"Evolve duration must be positive, got {self.duration}")
        object.__setattr__(self, "profile", tuple(float(s) for s in check_spins(self.profile)))
        if self.schedule is not None and not math.isclose(self.schedule.window, self.duration):
            raise ProgramError(f"Schedule window {self.schedule.window} differs from duration {self.duration}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step": "evolve",
            "label": self.label,
            "duration": self.duration,
            "profile": list(self.profile),
            "flips": 0 if self.schedule is None else self.schedule.flip_count,
        }


@dataclass(frozen=True)
class SingleQubitGate:
    """Zero-time gate: X, Y, Z, H, S, Sdg, Rz(angle), Rx(angle) or U(matrix)."""
    qubit: int
    name: str
    angle: Optional[float] = None
    matrix: Optional[Tuple[Tuple[complex, complex], Tuple[complex, complex]]] = None

    def __post_init__(self):
        if self.name in ("Rz", "Rx") and self.angle is None:
            raise ProgramError(f"{self.name} needs an angle")
        if self.name == "U":
            if self.matrix is None:
                raise ProgramError("U gate needs a matrix")
            U = np.asarray(self.matrix, dtype=complex)
            if not is_unitary(U):
                raise ProgramError("U gate matrix is not a 2x2 unitary")
            object.__setattr__(self, "matrix", tuple(tuple(complex(v) for v in row) for row in U))
        elif self.name not in GATES and self.name not in ("Rz", "Rx"):
            raise ProgramError(f"Unknown gate '{self.name}'")

    def unitary(self) -> np.ndarray:
        if self.name == "Rz":
            return rz(self.angle)
        if self.name == "Rx":
            return rx(self.angle)
        if self.name == "U":
            return np.array(self.matrix, dtype=complex)
        return GATES[self.name]

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"step": "gate", "qubit": self.qubit + 1, "name": self.name}
        if self.angle is not None:
            data["angle"] = self.angle
        return data


def unitary_gate(qubit: int, U: np.ndarray) -> SingleQubitGate:
    return SingleQubitGate(qubit, "U", matrix=np.asarray(U, dtype=complex))


@dataclass(frozen=True)
class MeasureZ:
    """Z measurement recorded under `key` (0 for Z = +1)."""
    qubit: int
    key: str

    def to_dict(self) -> Dict[str, Any]:
        return {"step": "measure", "qubit": self.qubit + 1, "key": self.key}


@dataclass(frozen=True)
class Conditional:
    """Run branches[outcome] for the recorded outcome of `key`."""
    key: str
    branches: Mapping[int, Tuple["Step", ...]]

    def __post_init__(self):
        object.__setattr__(self, "branches", {int(k): tuple(v) for k, v in self.branches.items()})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step": "conditional",
            "key": self.key,
            "branches": {str(k): [s.to_dict() for s in v] for k, v in self.branches.items()},
        }


Step = Union[Evolve, SingleQubitGate, MeasureZ, Conditional]


def steps_time(steps: Sequence[Step]) -> float:
    """Evolution time of a step list; a conditional costs its longest branch."""
    total = 0.0
    for step in steps:
        if isinstance(step, Evolve):
            total += step.duration
        elif isinstance(step, Conditional):
            total += max((steps_time(b) for b in step.branches.values()), default=0.0)
    return total


@dataclass
class PulseProgram:
    """Ordered physical steps over num_qubits qubits."""
    num_qubits: int
    steps: List[Step] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.steps = list(self.steps)
        self.validate()

    def validate(self) -> None:
        def walk(steps: Sequence[Step]) -> None:
            for step in steps:
                if isinstance(step, Evolve):
                    if len(step.profile) != self.num_qubits:
                        raise ProgramError(f"Evolve profile has {len(step.profile)} entries, program has {self.num_qubits} qubits")
                elif isinstance(step, (SingleQubitGate, MeasureZ)):
                    if not 0 <= step.qubit < self.num_qubits:
                        raise ProgramError(f"Step acts on qubit {step.qubit} outside {self.num_qubits}")
                elif isinstance(step, Conditional):
                    for branch in step.branches.values():
                        walk(branch)
                else:
                    raise ProgramError(f"Unknown step type {type(step).__name__}")

        walk(self.steps)

    @property
    def total_time(self) -> float:
        return steps_time(self.steps)

    @property
    def evolve_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, Evolve))

    def extend(self, other: "PulseProgram") -> "PulseProgram":
        if other.num_qubits != self.num_qubits:
            raise ProgramError("Cannot join programs over different qubit counts")
        self.steps.extend(other.steps)
        for key, value in other.metadata.items():
            if isinstance(value, (int, float)) and key in self.metadata and isinstance(self.metadata[key], (int, float)):
                self.metadata[key] += value
            else:
                self.metadata.setdefault(key, value)
        return self

    def __add__(self, other: "PulseProgram") -> "PulseProgram":
        joined = PulseProgram(self.num_qubits, list(self.steps), dict(self.metadata))
        return joined.extend(other)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_qubits": self.num_qubits,
            "total_time": self.total_time,
            "steps": [s.to_dict() for s in self.steps],
            "metadata": {k: v for k, v in self.metadata.items() if isinstance(v, (int, float, str, bool))},
        }


# ==================== Logical operations ====================

@dataclass(frozen=True)
class PrepGHZ:
    """|0^L> -> (|0^L> + |1^L>)/sqrt(2) on set i."""
    set_index: int


@dataclass(frozen=True)
class LogicalUnitary:
    set_index: int
    matrix: Tuple[Tuple[complex, complex], Tuple[complex, complex]]
    label: str = "U"

    def __post_init__(self):
        U = np.asarray(self.matrix, dtype=complex)
        if not is_unitary(U):
            raise ConfigError(f"Logical {self.label} is not a 2x2 unitary")
        object.__setattr__(self, "matrix", tuple(tuple(complex(v) for v in row) for row in U))

    def unitary(self) -> np.ndarray:
        return np.array(self.matrix, dtype=complex)


@dataclass(frozen=True)
class LogicalZRotation:
    """exp(-i angle Z^L / 2)."""
    set_index: int
    angle: float


@dataclass(frozen=True)
class LogicalX:
    set_index: int


@dataclass(frozen=True)
class LogicalEvolve:
    """
    exp(-i T sum lambda_ij Z^L_i Z^L_j).

    vectors optionally fixes the logical-subspace vectors; otherwise the
    compiler solves for them.
    """
    pattern: Mapping[Pair, float]
    duration: float
    vectors: Optional[Tuple[Tuple[float, ...], ...]] = None

    def __post_init__(self):
        if not self.duration > 0:
            raise ConfigError(f"Logical evolution time must be positive, got {self.duration}")
        clean = {}
        for (i, j), value in self.pattern.items():
            if i == j:
                raise ConfigError(f"Self-coupling of logical qubit {i}")
            clean[(min(i, j), max(i, j))] = float(value)
        object.__setattr__(self, "pattern", dict(sorted(clean.items())))
        if self.vectors is not None:
            object.__setattr__(self, "vectors", tuple(tuple(float(x) for x in v) for v in self.vectors))


@dataclass(frozen=True)
class LogicalCX:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ConfigError("Logical CX needs two distinct logical qubits")


@dataclass(frozen=True)
class MeasureLogical:
    """Measure set i in the orthogonal logical basis (psi, psi_perp); outcome 0 is psi."""
    set_index: int
    basis: Tuple[Tuple[complex, complex], Tuple[complex, complex]]
    key: str = ""

    def __post_init__(self):
        psi, perp = (np.asarray(v, dtype=complex) for v in self.basis)
        if psi.shape != (2,) or perp.shape != (2,):
            raise ConfigError("Logical basis states are 2-component vectors")
        object.__setattr__(self, "basis", (tuple(psi / np.linalg.norm(psi)), tuple(perp / np.linalg.norm(perp))))
        if not self.key:
            object.__setattr__(self, "key", f"L{self.set_index}")


LogicalOperation = Union[PrepGHZ, LogicalUnitary, LogicalZRotation, LogicalX, LogicalEvolve, LogicalCX, MeasureLogical]


def _touched(op: LogicalOperation) -> List[int]:
    if isinstance(op, LogicalEvolve):
        return [k for pair in op.pattern for k in pair]
    if isinstance(op, LogicalCX):
        return [op.control, op.target]
    return [op.set_index]


@dataclass
class LogicalCircuit:
    """Operations on num_sets logical qubits, applied in list order."""
    num_sets: int
    operations: List[LogicalOperation] = field(default_factory=list)

    def __post_init__(self):
        self.operations = list(self.operations)
        for op in self.operations:
            self._check(op)

    def _check(self, op: LogicalOperation) -> None:
        for k in _touched(op):
            if not 0 <= k < self.num_sets:
                raise ConfigError(f"{type(op).__name__} references logical qubit {k} of {self.num_sets}")

    def append(self, op: LogicalOperation) -> "LogicalCircuit":
        self._check(op)
        self.operations.append(op)
        return self

    def __add__(self, other: "LogicalCircuit") -> "LogicalCircuit":
        if other.num_sets != self.num_sets:
            raise ConfigError("Cannot join circuits over different logical qubit counts")
        return LogicalCircuit(self.num_sets, self.operations + other.operations)

    def __len__(self) -> int:
        return len(self.operations)

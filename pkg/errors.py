"""
LatticeIQ exception hierarchy.

Every error carries the CLI exit code it maps to:
- 2: configuration / input errors
- 3: verification failures
- 4: infeasible targets
"""

from typing import Any, Dict, Optional, Sequence, Tuple


class LatticeIQError(Exception):
    """Base exception for all LatticeIQ errors."""
    exit_code: int = 2


# ==================== Configuration ====================

class ConfigError(LatticeIQError):
    """Raised for malformed configs, unknown presets and invalid inputs."""
    exit_code = 2


class UnknownPresetError(ConfigError):
    """Raised when a scenario names a preset that does not exist."""

    def __init__(self, kind: str, name: str, known: Sequence[str] = ()):
        self.kind = kind
        self.name = name
        hint = f" (known: {', '.join(sorted(known))})" if known else ""
        super().__init__(f"Unknown {kind} preset '{name}'{hint}")


class DimensionMismatchError(ConfigError):
    """Raised when vector and matrix shapes disagree."""

    def __init__(self, expected: Tuple[int, ...], got: Tuple[int, ...], what: str = "operand"):
        self.expected = expected
        self.got = got
        super().__init__(f"Dimension mismatch for {what}: expected {expected}, got {got}")


class SelfCouplingError(ConfigError):
    """Raised when the coupling of a qubit with itself is requested."""

    def __init__(self, qubit: int):
        self.qubit = qubit
        super().__init__(f"Self-coupling of qubit {qubit} is undefined")


class CanonicalOrderError(ConfigError):
    """Raised when a set pair is not given as i < j."""

    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"Set pair ({i}, {j}) must satisfy i < j")


class ScenarioError(ConfigError):
    """Raised when a scenario file cannot be read or validated."""

    def __init__(self, source: str, detail: str):
        self.source = source
        self.detail = detail
        super().__init__(f"{source}: {detail}")


class SpinRangeError(ConfigError):
    """Raised when an effective spin lies outside [-1, 1]."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"Spin {index} = {value} lies outside [-1, 1]")


class CapacityError(ConfigError):
    """Raised when a simulation or oracle exceeds its qubit cap."""

    def __init__(self, qubits: int, cap: int, what: str = "statevector"):
        self.qubits = qubits
        self.cap = cap
        super().__init__(f"{what} needs {qubits} qubits, cap is {cap}")


class ImproperColoringError(ConfigError):
    """Raised when two coupled qubits share a color class."""

    def __init__(self, edge: Tuple[int, int], color: int):
        self.edge = edge
        self.color = color
        super().__init__(f"Qubits {edge[0]} and {edge[1]} are coupled but share color {color}")


class NonOrthogonalBasisError(ConfigError):
    """Raised when a measurement basis pair is not orthogonal."""

    def __init__(self, overlap: float):
        self.overlap = overlap
        super().__init__(f"Measurement basis states overlap by {overlap:.3e}")


# ==================== Solver ====================

class SolverError(LatticeIQError):
    """Base class for pattern-solver failures."""
    exit_code = 4


class LIConditionError(SolverError):
    """Raised when the linear-independence condition fails after all reseeds."""

    def __init__(self, step: int, rank: int, attempts: int):
        self.step = step
        self.rank = rank
        self.attempts = attempts
        super().__init__(
            f"LI condition failed at step {step} (rank {rank} < {step - 1}) "
            f"after {attempts} attempts"
        )


class UnderdeterminedStepError(SolverError):
    """Raised when a linear step of Algorithm-1 has no solution."""

    def __init__(self, step: int, residual: float):
        self.step = step
        self.residual = residual
        super().__init__(f"Linear step {step} has no solution (residual {residual:.3e})")


class InfeasiblePatternError(SolverError):
    """Raised when no start of the optimizer reaches a feasible point."""

    def __init__(self, pair: Tuple[int, int], residual: float):
        self.pair = pair
        self.residual = residual
        super().__init__(
            f"No feasible point found; worst violated pair {pair} (residual {residual:.3e})"
        )


# ==================== Compiler ====================

class CompilationError(LatticeIQError):
    """Base class for logical-compiler failures."""
    exit_code = 4


class DisconnectedSetError(CompilationError):
    """Raised when a set's interaction graph is disconnected."""

    def __init__(self, set_index: int):
        self.set_index = set_index
        super().__init__(
            f"Set {set_index} is disconnected; delocalize_grouping it onto a connected layout first"
        )


class UncoupledPairError(CompilationError):
    """Raised when a CX is requested on two qubits without a direct coupling."""

    def __init__(self, a: int, b: int):
        self.pair = (a, b)
        super().__init__(f"Qubits {a} and {b} are not coupled; route them with SWAPs")


class RoutingError(CompilationError):
    """Raised when no routing path exists on the coupling graph."""
    pass


class ProgramError(CompilationError):
    """Raised when a pulse program is malformed."""
    exit_code = 2


# ==================== Verification ====================

class VerificationError(LatticeIQError):
    """Raised when a computed artifact fails its oracle check."""
    exit_code = 3

    def __init__(self, message: str, report: Optional[Dict[str, Any]] = None):
        self.report = report or {}
        super().__init__(message)


__all__ = [
    "LatticeIQError",
    "ConfigError",
    "UnknownPresetError",
    "ScenarioError",
    "DimensionMismatchError",
    "SelfCouplingError",
    "CanonicalOrderError",
    "SpinRangeError",
    "CapacityError",
    "ImproperColoringError",
    "NonOrthogonalBasisError",
    "SolverError",
    "LIConditionError",
    "UnderdeterminedStepError",
    "InfeasiblePatternError",
    "CompilationError",
    "DisconnectedSetError",
    "UncoupledPairError",
    "RoutingError",
    "ProgramError",
    "VerificationError",
]

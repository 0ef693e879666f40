"""
Scenario Data Models

Pydantic models for scenario TOML files. Sets, qubits and logical indices
are 1-based here, exactly as written in the files; expansion converts them
to the 0-based library API. Physical quantities carry their unit in the key
name (spacing_delta, time_over_deltaJ, cutoff_over_delta).
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from settings import FixtureTier

CouplingEntry = Tuple[int, int, float]


class Command(str, Enum):
    """Scenario commands; run-all dispatches each fixture to its own."""
    SOLVE = "solve"
    OPTIMIZE = "optimize"
    VERIFY = "verify"
    SCHEDULE = "schedule"
    COMPILE = "compile"
    SIMULATE = "simulate"
    COMPARE = "compare"
    RENDER = "render"


class LayoutSpec(BaseModel):
    """
    Physical lattice and coupling law.

    Law fields left unset take the preset's default, or J = alpha =
    spacing_delta = 1 and an infinite cutoff for explicit lattices.
    """
    width: Optional[int] = Field(None, description="Lattice columns")
    height: Optional[int] = Field(None, description="Lattice rows")
    depth: Optional[int] = Field(None, description="Lattice layers for cubic lattices")
    positions: Optional[List[List[float]]] = Field(None, description="Explicit positions in units of delta")
    coupling_J: Optional[float] = Field(None, description="Coupling constant J")
    alpha: Optional[float] = Field(None, description="Distance exponent")
    cutoff_over_delta: Optional[float] = Field(None, description="Interaction range r in units of delta")
    spacing_delta: Optional[float] = Field(None, description="Lattice spacing delta")

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _one_geometry(self):
        if self.positions is not None and self.width is not None:
            raise ValueError("layout takes either positions or width/height, not both")
        if self.height is not None and self.width is None:
            raise ValueError("layout height needs a width")
        return self


class GroupingSpec(BaseModel):
    """Named preset (which also fixes the lattice) or explicit slot lists."""
    preset: Optional[str] = Field(None, description="G1, G2, fig5-cube, fig5-nn9, fig6a, fig6b, fig8a/b/c, appD-N8")
    preset_params: Dict[str, int] = Field(default_factory=dict, description="Block counts for fig6 presets")
    sets: Optional[List[List[int]]] = Field(None, description="1-based qubits per set, in slot order")
    labels: Optional[List[str]] = Field(None, description="Per-set labels for periodic lattices")

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _preset_or_sets(self):
        if self.preset is not None and self.sets is not None:
            raise ValueError("grouping takes either a preset or explicit sets, not both")
        if self.labels is not None and self.sets is not None and len(self.labels) != len(self.sets):
            raise ValueError(f"{len(self.labels)} labels for {len(self.sets)} sets")
        return self


class TargetSpec(BaseModel):
    """Target couplings: explicit [i, j, value] entries or a topology preset."""
    ratio_form: bool = Field(True, description="Entries are ratios c_ij of a free scale")
    topology: Optional[str] = Field(None, description="star, all, coupled, centroid-nn, centroid-nn-diag, cube, cube-nn")
    couplings: Optional[List[CouplingEntry]] = Field(None, description="1-based [i, j, value]; unlisted pairs are zero")

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _topology_or_couplings(self):
        if (self.topology is None) == (self.couplings is None):
            raise ValueError("target takes exactly one of topology or couplings")
        return self


class VectorsSpec(BaseModel):
    """Pinned logical-subspace vectors, per set or per periodic label."""
    sets: Optional[List[List[float]]] = None
    by_label: Optional[Dict[str, List[float]]] = None

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _one_source(self):
        if (self.sets is None) == (self.by_label is None):
            raise ValueError("vectors take exactly one of sets or by_label")
        return self


class TrotterSpec(BaseModel):
    """ZZ pattern plus a transverse X field, compared against the dense exponential."""
    num_qubits: int = Field(..., ge=1, description="Logical qubits")
    zz: List[CouplingEntry] = Field(default_factory=list, description="1-based [i, j, lambda]")
    field_x: float = Field(1.0, description="Uniform X-field strength")
    time_over_deltaJ: float = Field(1.0, gt=0, description="Total evolution time T")
    steps: List[int] = Field(default_factory=lambda: [8, 16, 32, 64], description="Trotter step counts k")

    class Config:
        extra = "forbid"


class RunOptions(BaseModel):
    """Per-command knobs; unset optimizer fields fall back to settings."""

    # ==================== Optimizer ====================
    starts: Optional[int] = Field(None, ge=1)
    max_iterations: Optional[int] = Field(None, ge=1)
    optimizer_tolerance: Optional[float] = Field(None, gt=0)
    tie_labels: bool = Field(False, description="Sets sharing a label share one vector")

    # ==================== Verification ====================
    relative: bool = Field(True, description="Pattern tolerance relative to the largest coupling")

    # ==================== Flip Schedules ====================
    spins: Optional[List[float]] = Field(None, description="Per-qubit effective spins")
    window_over_deltaJ: float = Field(1.0, gt=0, description="Schedule window tau")
    schedule_kinds: List[str] = Field(default_factory=lambda: ["sequential", "parallel"])

    # ==================== Simulation ====================
    shots: Optional[int] = Field(None, ge=1)
    flip_by_flip: bool = False
    trotter: Optional[TrotterSpec] = None

    # ==================== Cost Model ====================
    time_over_deltaJ: Optional[float] = Field(None, ge=0, description="Target evolution time T")
    trotter_steps: Optional[int] = Field(None, ge=0, description="Trotter steps k")
    lattice_side: Optional[int] = Field(None, ge=1, description="Side l of the standard-method lattice")
    set_index: int = Field(1, ge=1, description="Set whose compiled components are measured")
    table_ks: List[int] = Field(default_factory=list)
    table_ells: List[int] = Field(default_factory=list)
    scaling_sets: Optional[int] = Field(None, description="N for the polynomial-scaling construction")

    class Config:
        extra = "forbid"


class OperationSpec(BaseModel):
    """One logical-circuit operation."""
    op: str = Field(..., description="prep-ghz, gate, rz, x, cx, evolve, measure")
    set: Optional[int] = Field(None, ge=1)
    gate: Optional[str] = None
    angle: Optional[float] = None
    control: Optional[int] = Field(None, ge=1)
    target: Optional[int] = Field(None, ge=1)
    couplings: Optional[List[CouplingEntry]] = None
    time_over_deltaJ: Optional[float] = None
    basis: Optional[str] = Field(None, description="x, y or z")
    key: Optional[str] = None

    class Config:
        extra = "forbid"


class Expectation(BaseModel):
    """Expected value (within tolerance) or bounds for one reported metric."""
    value: Optional[float] = None
    tolerance: float = Field(1e-9, ge=0)
    min: Optional[float] = None
    max: Optional[float] = None

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _something_to_check(self):
        if self.value is None and self.min is None and self.max is None:
            raise ValueError("expectation needs value, min or max")
        return self

    def check(self, actual: float) -> bool:
        if self.value is not None and abs(actual - self.value) > self.tolerance:
            return False
        if self.min is not None and actual < self.min:
            return False
        if self.max is not None and actual > self.max:
            return False
        return True

    def describe(self) -> str:
        parts = []
        if self.value is not None:
            parts.append(f"{self.value} +- {self.tolerance}")
        if self.min is not None:
            parts.append(f">= {self.min}")
        if self.max is not None:
            parts.append(f"<= {self.max}")
        return ", ".join(parts)


class Scenario(BaseModel):
    """
    One scenario file.

    Presets (grouping, topology, by-label vectors) are expanded to explicit
    data before execution; expanded_from records what they were.
    """
    name: str = Field(..., min_length=1)
    command: Command = Field(Command.VERIFY, description="Command run-all executes")
    description: str = ""
    tier: FixtureTier = Field(FixtureTier.EXACT, description="Tolerance tier")
    tolerance: Optional[float] = Field(None, gt=0, description="Overrides the tier tolerance")
    reconstructed: bool = Field(False, description="Geometry reconstructed from a figure")
    seed: Optional[int] = None
    layout: LayoutSpec = Field(default_factory=LayoutSpec)
    grouping: GroupingSpec = Field(default_factory=GroupingSpec)
    target: Optional[TargetSpec] = None
    vectors: Optional[VectorsSpec] = None
    options: RunOptions = Field(default_factory=RunOptions)
    circuit: List[OperationSpec] = Field(default_factory=list)
    expect: Dict[str, Expectation] = Field(default_factory=dict)
    expanded_from: Dict[str, str] = Field(default_factory=dict)

    class Config:
        extra = "forbid"

    @property
    def is_expanded(self) -> bool:
        return self.grouping.preset is None and (self.target is None or self.target.topology is None) \
            and (self.vectors is None or self.vectors.by_label is None)


__all__ = [
    "Command",
    "LayoutSpec",
    "GroupingSpec",
    "TargetSpec",
    "VectorsSpec",
    "TrotterSpec",
    "RunOptions",
    "OperationSpec",
    "Expectation",
    "Scenario",
]

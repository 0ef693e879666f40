"""
LatticeIQ Settings Module
Centralized, typed configuration with Pydantic BaseSettings

Supports:
- Environment variables
- .env file loading
- Type validation
- Numerical defaults for every solver, scheduler and simulator
"""

from pydantic_settings import BaseSettings
from pydantic import Field
from typing import Optional
from pathlib import Path
from enum import Enum


class FixtureTier(str, Enum):
    """Tolerance tiers for bundled scenario fixtures."""
    EXACT = "exact"
    APPENDIX = "appendix"
    ROUNDED = "rounded"
    RECONSTRUCTED = "reconstructed"
    ADVISORY = "advisory"


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    Usage:
        from settings import settings
        starts = settings.OPTIMIZER_STARTS
    """

    # ==================== Logging ====================
    LOG_LEVEL: str = Field(
        default="INFO",
        description="Root log level for the CLI and batch runtime"
    )

    # ==================== Paths ====================
    OUTPUT_DIR: str = Field(
        default="outputs",
        description="Directory receiving reports, listings and diagrams"
    )
    FIXTURES_DIR: Optional[str] = Field(
        default=None,
        description="Fixture library directory (defaults to scenarios/fixtures)"
    )

    # ==================== Lattice ====================
    CUTOFF_TOLERANCE: float = Field(
        default=1e-9,
        description="Slack (in units of delta) on the |x| <= r cutoff comparison"
    )

    # ==================== Pattern Solver ====================
    LI_RANK_THRESHOLD: float = Field(
        default=1e-10,
        description="Singular values below this fraction of the largest count as zero"
    )
    ALGORITHM1_MAX_RESEEDS: int = Field(
        default=32,
        description="Whole-procedure reseeds before an LI failure is raised"
    )
    SOLVER_RESIDUAL_TOL: float = Field(
        default=1e-9,
        description="Maximum residual of the rescaled bilinear system"
    )

    # ==================== Optimizer ====================
    OPTIMIZER_STARTS: int = Field(
        default=64,
        description="Multi-start count for coupling maximization"
    )
    OPTIMIZER_MAX_ITERATIONS: int = Field(
        default=2000,
        description="Iteration cap per start across the whole penalty ladder"
    )
    OPTIMIZER_PENALTY_GROWTH: float = Field(
        default=10.0,
        description="Penalty multiplier applied at each ladder stage"
    )
    OPTIMIZER_PENALTY_INTERVAL: int = Field(
        default=200,
        description="Iterations spent on each penalty stage"
    )
    OPTIMIZER_TOLERANCE: float = Field(
        default=1e-6,
        description="Relative ratio-constraint residual accepted as feasible"
    )

    # ==================== Flip Scheduler ====================
    SCHEDULE_ORACLE_MAX_QUBITS: int = Field(
        default=14,
        description="Largest qubit count the phase oracle enumerates"
    )
    BRUTE_FORCE_MAX_COMPONENTS: int = Field(
        default=12,
        description="Largest total component count for the {-1,0,1} brute force"
    )

    # ==================== Dynamics ====================
    STATEVECTOR_MAX_QUBITS: int = Field(
        default=24,
        description="Hard cap on statevector width"
    )
    NORM_TOLERANCE: float = Field(
        default=1e-10,
        description="Allowed drift of the state norm"
    )
    MEASUREMENT_SHOTS: int = Field(
        default=10000,
        description="Shots sampled by the simulate command for measurement programs"
    )

    # ==================== Fixture Tiers ====================
    EXACT_TOLERANCE: float = Field(
        default=1e-9,
        description="Tolerance for fixtures with exact +-1/0 vectors"
    )
    APPENDIX_TOLERANCE: float = Field(
        default=1e-3,
        description="Tolerance for fixtures reproducing worked-example numbers"
    )
    RECONSTRUCTED_TOLERANCE: float = Field(
        default=0.1,
        description="Relative tolerance for geometrically reconstructed fixtures"
    )

    # ==================== Cost Model ====================
    ZETA_BAR: float = Field(
        default=1.912,
        description="Constant in the lower bound zeta >= l delta / (zeta_bar J)"
    )

    # ==================== Runtime ====================
    DEFAULT_SEED: int = Field(
        default=20240117,
        description="Run-level seed when neither the scenario nor --seed sets one"
    )
    RUN_ALL_CONCURRENCY: int = Field(
        default=4,
        description="Fixtures executed concurrently by run-all"
    )
    TASK_TIMEOUT_SECONDS: int = Field(
        default=600,
        description="Per-fixture timeout in run-all"
    )

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"

    # ==================== Helper Properties ====================

    @property
    def output_path(self) -> Path:
        """Get the output directory as a Path."""
        return Path(self.OUTPUT_DIR)

    @property
    def fixtures_path(self) -> Path:
        """Get the fixture library directory."""
        if self.FIXTURES_DIR:
            return Path(self.FIXTURES_DIR)
        return Path(__file__).parent / "scenarios" / "fixtures"

    def tier_tolerance(self, tier: FixtureTier) -> float:
        """Default tolerance for a fixture tier (rounded fixtures carry their own)."""
        return {
            FixtureTier.EXACT: self.EXACT_TOLERANCE,
            FixtureTier.APPENDIX: self.APPENDIX_TOLERANCE,
            FixtureTier.ROUNDED: self.RECONSTRUCTED_TOLERANCE,
            FixtureTier.RECONSTRUCTED: self.RECONSTRUCTED_TOLERANCE,
            FixtureTier.ADVISORY: self.RECONSTRUCTED_TOLERANCE,
        }[FixtureTier(tier)]

    def get_numerics_summary(self) -> dict:
        """Get the numerical knobs grouped by subsystem."""
        return {
            "solver": {
                "li_rank_threshold": self.LI_RANK_THRESHOLD,
                "max_reseeds": self.ALGORITHM1_MAX_RESEEDS,
                "residual_tol": self.SOLVER_RESIDUAL_TOL,
            },
            "optimizer": {
                "starts": self.OPTIMIZER_STARTS,
                "max_iterations": self.OPTIMIZER_MAX_ITERATIONS,
                "penalty_growth": self.OPTIMIZER_PENALTY_GROWTH,
                "penalty_interval": self.OPTIMIZER_PENALTY_INTERVAL,
                "tolerance": self.OPTIMIZER_TOLERANCE,
            },
            "dynamics": {
                "max_qubits": self.STATEVECTOR_MAX_QUBITS,
                "norm_tolerance": self.NORM_TOLERANCE,
            },
        }


# Create singleton instance
settings = Settings()


# Export for easy import
__all__ = ["Settings", "settings", "FixtureTier"]

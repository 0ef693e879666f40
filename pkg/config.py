"""
LatticeIQ Configuration

Path constants and re-exported numerical defaults on top of the
Pydantic-based settings system.

For new code, prefer importing from settings.py:
    from settings import settings
"""

from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

from settings import settings, Settings, FixtureTier

# ==================== Base Paths ====================
BASE_DIR = Path(__file__).parent
OUTPUT_DIR = BASE_DIR / settings.OUTPUT_DIR
FIXTURES_DIR = settings.fixtures_path
TEMPLATES_DIR = BASE_DIR / "templates"

# ==================== Solver ====================
LI_RANK_THRESHOLD = settings.LI_RANK_THRESHOLD
ALGORITHM1_MAX_RESEEDS = settings.ALGORITHM1_MAX_RESEEDS
SOLVER_RESIDUAL_TOL = settings.SOLVER_RESIDUAL_TOL

# ==================== Dynamics ====================
STATEVECTOR_MAX_QUBITS = settings.STATEVECTOR_MAX_QUBITS

# ==================== Exit Codes ====================
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_VERIFICATION_FAILURE = 3
EXIT_INFEASIBLE = 4


def get_settings() -> Settings:
    """Get the current settings instance."""
    return settings


def ensure_output_dir(path: Path = None) -> Path:
    """Create the output directory on demand and return it."""
    target = Path(path) if path is not None else OUTPUT_DIR
    target.mkdir(parents=True, exist_ok=True)
    return target


__all__ = [
    # Paths
    "BASE_DIR",
    "OUTPUT_DIR",
    "FIXTURES_DIR",
    "TEMPLATES_DIR",
    # Solver
    "LI_RANK_THRESHOLD",
    "ALGORITHM1_MAX_RESEEDS",
    "SOLVER_RESIDUAL_TOL",
    # Dynamics
    "STATEVECTOR_MAX_QUBITS",
    # Exit codes
    "EXIT_OK",
    "EXIT_CONFIG_ERROR",
    "EXIT_VERIFICATION_FAILURE",
    "EXIT_INFEASIBLE",
    # Functions
    "get_settings",
    "ensure_output_dir",
    # Settings
    "settings",
    "Settings",
    "FixtureTier",
]

"""
Base Task Class for LatticeIQ

Every subcommand is a task: it expands a scenario, runs the numerics in a
worker thread, evaluates the scenario's expectations against the reported
metrics and returns a standardized response dict.

Subclasses implement:
- validate_input(): scenario-level checks before expansion
- _execute(): the numerics, returning metrics, checks, records and artifacts
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Dict, List, Mapping, Optional, Tuple, TYPE_CHECKING
import asyncio
import logging
import time

from config import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILURE
from errors import ConfigError, LatticeIQError
from scenarios import ResolvedScenario, Scenario, dump_scenario, expand_scenario
from settings import FixtureTier

if TYPE_CHECKING:
    from settings import Settings

logger = logging.getLogger(__name__)

EXIT_UNEXPECTED = 1


@dataclass
class RunContext:
    """Everything a task run needs besides the task itself."""
    resolved: ResolvedScenario
    settings: "Settings"
    seed: int
    tolerance: float
    svg: bool = False

    @property
    def scenario(self) -> Scenario:
        return self.resolved.scenario

    @property
    def options(self):
        return self.resolved.scenario.options


def coupling_metrics(couplings: Mapping, prefix: str = "lambda") -> Dict[str, float]:
    """1-based metric names for a pair -> value map."""
    return {f"{prefix}_{i + 1}_{j + 1}": float(v) for (i, j), v in sorted(couplings.items())}


class BaseTask(ABC):
    """
    Base class for all LatticeIQ tasks.

    Args:
        name: Task (subcommand) name
        description: Task description
        settings: Optional Settings instance (defaults to global settings)
    """

    requires: Tuple[str, ...] = ()

    def __init__(
        self,
        name: str,
        description: str,
        settings: Optional["Settings"] = None
    ):
        self.name = name
        self.description = description
        self.created_at = datetime.now()

        if settings is None:
            from settings import settings as default_settings
            self._settings = default_settings
        else:
            self._settings = settings

        logger.debug(f"Initialized {self.name} task")

    @property
    def settings(self) -> "Settings":
        """Get the settings instance."""
        return self._settings

    # ==================== Processing ====================

    async def process(self, scenario: Scenario, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Run the task on one scenario.

        overrides may carry seed, tolerance, max_qubits and svg (CLI flags).

        Returns:
            Standardized response dict; exit_code is 0 on success, 3 on a
            failed check and the error's own code otherwise
        """
        _start = time.monotonic()
        overrides = overrides or {}

        if not await self.validate_input(scenario):
            return self.create_response(
                success=False,
                scenario=scenario.name,
                error=f"Invalid input for {self.name}: scenario needs {', '.join(self.requires) or 'a body'}",
                exit_code=EXIT_CONFIG_ERROR,
            )

        try:
            resolved = expand_scenario(scenario)
            ctx = self.build_context(resolved, overrides)
            self.log_activity("start", f"{scenario.name} | seed={ctx.seed} | tolerance={ctx.tolerance:g}")
            data = await asyncio.to_thread(self._execute, ctx)
        except LatticeIQError as e:
            logger.error(f"{self.name} | {scenario.name} | {type(e).__name__}: {e}")
            return self.create_response(
                success=False,
                scenario=scenario.name,
                data=getattr(e, "report", None) or None,
                error=str(e),
                exit_code=e.exit_code,
                metadata={"duration_s": round(time.monotonic() - _start, 3)},
            )
        except Exception as e:
            logger.error(f"{self.name} | Processing error: {e}", exc_info=True)
            return self.create_response(
                success=False,
                scenario=scenario.name,
                error=str(e),
                exit_code=EXIT_UNEXPECTED,
            )

        data.setdefault("metrics", {})
        data.setdefault("checks", {})
        data.setdefault("records", {})
        data.setdefault("artifacts", {})
        data["artifacts"]["scenario.toml"] = dump_scenario(resolved.scenario)
        failures = self.evaluate(scenario, data)
        data["failures"] = failures

        advisory = scenario.tier is FixtureTier.ADVISORY
        if failures and advisory:
            for failure in failures:
                logger.warning(f"{self.name} | {scenario.name} | advisory | {failure}")
        success = advisory or not failures
        self.log_activity(
            "done",
            f"{scenario.name} | {'ok' if not failures else f'{len(failures)} failure(s)'} | "
            f"{time.monotonic() - _start:.2f}s",
        )
        return self.create_response(
            success=success,
            scenario=scenario.name,
            data=data,
            error=None if success else "; ".join(failures),
            exit_code=EXIT_OK if success else EXIT_VERIFICATION_FAILURE,
            metadata={
                "command": self.name,
                "tier": scenario.tier.value,
                "seed": ctx.seed,
                "tolerance": ctx.tolerance,
                "duration_s": round(time.monotonic() - _start, 3),
            },
        )

    def build_context(self, resolved: ResolvedScenario, overrides: Mapping[str, Any]) -> RunContext:
        scenario = resolved.scenario
        settings = self.settings
        max_qubits = overrides.get("max_qubits")
        if max_qubits is not None:
            if not 1 <= int(max_qubits) <= 24:
                raise ConfigError(f"--max-qubits must lie in 1..24, got {max_qubits}")
            settings = settings.model_copy(update={"STATEVECTOR_MAX_QUBITS": int(max_qubits)})

        seed = overrides.get("seed")
        if seed is None:
            seed = scenario.seed if scenario.seed is not None else settings.DEFAULT_SEED
        tolerance = overrides.get("tolerance") or scenario.tolerance or settings.tier_tolerance(scenario.tier)
        return RunContext(resolved, settings, int(seed), float(tolerance), bool(overrides.get("svg", False)))

    @staticmethod
    def evaluate(scenario: Scenario, data: Dict[str, Any]) -> List[str]:
        """Failed checks plus unmet expectations, as readable strings."""
        failures = [f"check '{name}' failed" for name, ok in data["checks"].items() if not ok]
        metrics = data["metrics"]
        for key, expectation in scenario.expect.items():
            if key not in metrics:
                failures.append(f"metric '{key}' was not reported")
            elif not expectation.check(metrics[key]):
                failures.append(f"{key} = {metrics[key]:.9g}, expected {expectation.describe()}")
        return failures

    async def validate_input(self, scenario: Scenario) -> bool:
        """Check that the scenario carries every section listed in `requires`."""
        if scenario is None:
            return False
        missing = [section for section in self.requires if not getattr(scenario, section)]
        if missing:
            logger.error(f"{self.name} | {scenario.name} | missing section(s): {', '.join(missing)}")
            return False
        return True

    @abstractmethod
    def _execute(self, ctx: RunContext) -> Dict[str, Any]:
        """
        Run the numerics for one expanded scenario.

        Returns:
            Dict with "metrics" (name -> float), "checks" (name -> bool),
            "records" (report sections) and "artifacts" (filename -> text)
        """
        pass

    def get_info(self) -> Dict[str, Any]:
        """
        Get task information.

        Returns:
            Dict with task metadata
        """
        return {
            "name": self.name,
            "description": self.description,
            "type": self.__class__.__name__,
            "created_at": self.created_at.isoformat()
        }

    def create_response(
        self,
        success: bool,
        scenario: str,
        data: Any = None,
        error: str = None,
        exit_code: int = EXIT_OK,
        metadata: Dict = None
    ) -> Dict[str, Any]:
        """
        Create a standardized response.

        Args:
            success: Whether the run passed
            scenario: Scenario name
            data: Task data (metrics, checks, records, artifacts)
            error: Error message if failed
            exit_code: CLI exit code this response maps to
            metadata: Additional metadata

        Returns:
            Standardized response dict
        """
        response = {
            "success": success,
            "task": self.name,
            "scenario": scenario,
            "timestamp": datetime.now().isoformat(),
            "data": data,
            "error": error,
            "exit_code": exit_code,
        }

        if metadata:
            response["metadata"] = metadata

        return response

    def log_activity(self, action: str, details: str = None) -> None:
        """
        Log task activity for tracking.

        Args:
            action: Action being performed
            details: Additional details
        """
        logger.info(
            f"{self.name} | {action}"
            + (f" | {details}" if details else "")
        )


__all__ = ["BaseTask", "RunContext", "coupling_metrics", "EXIT_UNEXPECTED"]

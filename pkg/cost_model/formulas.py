"""
Wall-time comparison of the grouping method against standard Hamiltonian simulation.

All times are in units of delta/J. For a ZZ pattern plus a logical X field
evolved for T with k alternations:

    t_g = T/2 + 2k eta_H + eta_0
    t_s = 2T + 2k zeta(l)

eta_0 prepares the logical qubits, eta_H is one round of logical
Hadamards and zeta is one rearrangement of an l x l lattice.
"""

from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging
import math

from errors import ConfigError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout

logger = logging.getLogger(__name__)

# Closed forms for the 8-qubit 2x4 n.n. set with a three-layer tree.
ETA_0 = 3 * math.pi / 4
ETA_H = 3 * math.pi / 2
SWAP_TIME = 3 * math.pi / 4


@dataclass
class CostReport:
    scenario: str
    T: float
    k: int
    t_g: float
    t_s: float
    eta_0: float
    eta_H: float
    zeta: float
    zeta_lower_bound: float
    ell: int
    crossover: Optional[int] = None
    grouping_qubits: Optional[int] = None
    standard_qubits: Optional[int] = None
    measured: bool = False

    @property
    def speedup(self) -> float:
        return self.t_s / self.t_g if self.t_g > 0 else math.inf

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["speedup"] = self.speedup
        return {k: v for k, v in data.items() if v is not None}


def _check_times(T: float, k: int) -> None:
    if T < 0:
        raise ConfigError(f"Evolution time must be non-negative, got {T}")
    if k < 0 or int(k) != k:
        raise ConfigError(f"Alternation count must be a non-negative integer, got {k}")


def grouping_cost(T: float, k: int, eta_0: float = ETA_0, eta_H: float = ETA_H) -> float:
    """t_g = T/2 + 2k eta_H + eta_0."""
    _check_times(T, k)
    return T / 2 + 2 * k * eta_H + eta_0


def swap_zeta(ell: int) -> float:
    """SWAP-based rearrangement time (l - 1) permutation shots of 3 pi/4 each."""
    if ell < 1:
        raise ConfigError(f"Lattice side must be >= 1, got {ell}")
    return (ell - 1) * SWAP_TIME


def zeta_lower_bound(ell: int, settings=None) -> float:
    """Any rearrangement of a column of length l needs at least l / zeta_bar."""
    if settings is None:
        from settings import settings
    return ell / settings.ZETA_BAR


def standard_cost(T: float, k: int, ell: int, zeta: Optional[float] = None) -> float:
    """t_s = 2T + 2k zeta; zeta defaults to the SWAP-based rearrangement."""
    _check_times(T, k)
    if zeta is None:
        zeta = swap_zeta(ell)
    return 2 * T + 2 * k * zeta


def crossover_k(T: float, eta_0: float, eta_H: float, zeta: float) -> Optional[int]:
    """
    Smallest k >= 0 with t_g < t_s, or None if the grouping method never wins.

    t_s - t_g = 1.5 T - eta_0 + 2k (zeta - eta_H) is linear in k.
    """
    _check_times(T, 0)
    offset = eta_0 - 1.5 * T
    if offset < 0:
        return 0
    if zeta <= eta_H:
        return None
    return int(math.floor(offset / (2 * (zeta - eta_H)))) + 1


def measured_components(
    layout: PhysicalLayout,
    grouping: Grouping,
    set_index: int = 0,
) -> Tuple[float, float]:
    """
    (eta_0, eta_H) read from compiled programs of one set.

    Sets are prepared and rotated in parallel, so one set's program time is
    the time of the whole round.
    """
    from logical_compiler.gates import GATES
    from logical_compiler.ghz import compile_ghz_prep
    from logical_compiler.unitary import compile_logical_unitary

    eta_0 = compile_ghz_prep(layout, grouping, set_index).total_time
    eta_H = compile_logical_unitary(layout, grouping, set_index, GATES["H"]).total_time
    logger.debug(f"measured_components | set={set_index + 1} | eta_0={eta_0:.6g} | eta_H={eta_H:.6g}")
    return eta_0, eta_H


def cost_report(
    scenario: str,
    T: float,
    k: int,
    ell: int,
    layout: Optional[PhysicalLayout] = None,
    grouping: Optional[Grouping] = None,
    set_index: int = 0,
    zeta: Optional[float] = None,
    settings=None,
) -> CostReport:
    """
    Both costs for one (T, k, l) point.

    With a layout and grouping, eta_0 and eta_H come from the compiler;
    otherwise the closed forms are used.
    """
    if settings is None:
        from settings import settings
    measured = layout is not None and grouping is not None
    if measured:
        eta_0, eta_H = measured_components(layout, grouping, set_index)
    else:
        eta_0, eta_H = ETA_0, ETA_H
    zeta = swap_zeta(ell) if zeta is None else zeta
    report = CostReport(
        scenario=scenario,
        T=float(T),
        k=int(k),
        t_g=grouping_cost(T, k, eta_0, eta_H),
        t_s=standard_cost(T, k, ell, zeta),
        eta_0=eta_0,
        eta_H=eta_H,
        zeta=zeta,
        zeta_lower_bound=zeta_lower_bound(ell, settings),
        ell=int(ell),
        crossover=crossover_k(T, eta_0, eta_H, zeta),
        grouping_qubits=layout.num_qubits if layout is not None else None,
        standard_qubits=ell * ell,
        measured=measured,
    )
    logger.info(
        f"cost_report | {scenario} | T={T} | k={k} | l={ell} | "
        f"t_g={report.t_g:.6g} | t_s={report.t_s:.6g}"
    )
    return report


def cost_table(
    T: float,
    ks: Sequence[int],
    ells: Sequence[int],
    eta_0: float = ETA_0,
    eta_H: float = ETA_H,
    scenario: str = "cost-table",
    settings=None,
) -> Tuple[str, List[Dict[str, Any]]]:
    """Aligned plain-text table and records over every (k, l)."""
    if settings is None:
        from settings import settings
    from rendering import render

    records = []
    for k in ks:
        t_g = grouping_cost(T, k, eta_0, eta_H)
        for ell in ells:
            zeta = swap_zeta(ell)
            records.append({
                "k": int(k),
                "ell": int(ell),
                "t_g": t_g,
                "t_s": standard_cost(T, k, ell, zeta),
                "zeta": zeta,
                "zeta_lower_bound": zeta_lower_bound(ell, settings),
                "crossover": crossover_k(T, eta_0, eta_H, zeta),
            })
    text = render("cost_table.txt.j2", scenario=scenario, T=T, eta_0=eta_0, eta_H=eta_H, records=records)
    return text, records

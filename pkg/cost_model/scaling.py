"""
Qubit counts for large logical registers on n.n. lattices.

N = 2^kappa logical sets are split into quarters; the six pairs of quarters
give six halves, and each half is split again until blocks of four remain.
Every pair of sets shares some block, and each block gets its own 4 x 4
sublattice, separated from the next by one column.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple
import logging
import math

from errors import ConfigError

logger = logging.getLogger(__name__)

# Order of the six quarter pairs inside one level.
QUARTER_PAIRS = ((0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2))


@dataclass(frozen=True)
class ScalingConstruction:
    num_sets: int
    blocks: Tuple[Tuple[int, ...], ...]

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def num_qubits(self) -> int:
        a = self.num_blocks
        return 16 * a + 4 * (a - 1)

    def uncovered_pairs(self) -> List[Tuple[int, int]]:
        covered = {pair for block in self.blocks for pair in combinations(sorted(block), 2)}
        return [pair for pair in combinations(range(self.num_sets), 2) if pair not in covered]

    def preset(self, **law: Any):
        """The 4 x (5a - 1) n.n. lattice with its grouping."""
        from lattice.presets import sublattice_chain

        return sublattice_chain(self.blocks, self.num_sets, **law)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "num_sets": self.num_sets,
            "num_blocks": self.num_blocks,
            "num_qubits": self.num_qubits,
            "closed_form": closed_form_qubits(self.num_sets),
            "blocks": [[i + 1 for i in block] for block in self.blocks],
        }


def _split(sets: Sequence[int]) -> List[Tuple[int, ...]]:
    if len(sets) == 4:
        return [tuple(sets)]
    size = len(sets) // 4
    quarters = [tuple(sets[q * size:(q + 1) * size]) for q in range(4)]
    blocks: List[Tuple[int, ...]] = []
    for a, b in QUARTER_PAIRS:
        blocks.extend(_split(quarters[a] + quarters[b]))
    return blocks


def _check_power_of_two(N: int) -> int:
    if N < 4 or N & (N - 1):
        raise ConfigError(f"Logical register size must be a power of two >= 4, got {N}")
    return N.bit_length() - 1


def closed_form_qubits(N: int) -> int:
    """(5/9) N^log2(6) - 4, evaluated exactly as 20 * 6^(kappa - 2) - 4."""
    kappa = _check_power_of_two(N)
    return 20 * 6 ** (kappa - 2) - 4


def polynomial_scaling_construction(N: int) -> ScalingConstruction:
    """
    Block assignment for N = 2^kappa sets, kappa >= 2.

    N = 8 gives the six blocks (1,2,3,4), (5,6,7,8), (1,2,5,6), (3,4,7,8),
    (1,2,7,8), (3,4,5,6) in 1-based labels and 116 qubits.
    """
    kappa = _check_power_of_two(N)
    construction = ScalingConstruction(N, tuple(_split(list(range(N)))))
    if construction.num_blocks != 6 ** (kappa - 2):
        raise ConfigError(f"Construction produced {construction.num_blocks} blocks for N={N}")
    logger.debug(
        f"polynomial_scaling_construction | N={N} | blocks={construction.num_blocks} | "
        f"qubits={construction.num_qubits}"
    )
    return construction


def qudit_embedding_count(num_qudits: int, dimension: int) -> int:
    """
    Physical qubits for num_qudits qudits of dimension d = 2^k made of k logical qubits each.

    n = k N' (k N' - 1); a single qubit (k N' = 1) gives 0.
    """
    if dimension < 2 or dimension & (dimension - 1):
        raise ConfigError(f"Qudit dimension must be a power of two, got {dimension}")
    if num_qudits < 1:
        raise ConfigError(f"Qudit count must be >= 1, got {num_qudits}")
    logical = int(math.log2(dimension)) * num_qudits
    count = logical * (logical - 1)
    if count == 0:
        logger.warning(
            f"qudit_embedding_count | N'={num_qudits} | d={dimension} | "
            f"single logical qubit, formula gives no physical qubits"
        )
    return count


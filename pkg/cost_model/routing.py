"""
SWAP cost of shifting an l x l lattice for the standard diagonal-coupling method.

Column k (1-based) moves its last k - 1 states to the top, so it needs
(k - 1)(l - k + 1) adjacent swaps; all columns together need (l^3 - l)/6.
Columns are independent and each finishes in l - 1 permutation shots.
"""

from typing import List, Tuple

from errors import ConfigError


def swap_rearrange_count(ell: int) -> Tuple[int, int]:
    """(SWAP gates, permutation shots) for one rearrangement."""
    if ell < 1:
        raise ConfigError(f"Lattice side must be >= 1, got {ell}")
    return (ell ** 3 - ell) // 6, ell - 1


def column_shift(ell: int, k: int) -> List[int]:
    """Target order of column k: the last k - 1 states first."""
    order = list(range(ell))
    shift = k - 1
    return order[ell - shift:] + order[:ell - shift] if shift else order


def brute_force_rearrange(ell: int) -> int:
    """Count adjacent swaps by bubbling every column into its shifted order."""
    if ell < 1:
        raise ConfigError(f"Lattice side must be >= 1, got {ell}")
    total = 0
    for k in range(1, ell + 1):
        target = {state: position for position, state in enumerate(column_shift(ell, k))}
        column = list(range(ell))
        changed = True
        while changed:
            changed = False
            for p in range(ell - 1):
                if target[column[p]] > target[column[p + 1]]:
                    column[p], column[p + 1] = column[p + 1], column[p]
                    total += 1
                    changed = True
    return total

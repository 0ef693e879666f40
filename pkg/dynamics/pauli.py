"""
Pauli-string Hamiltonians and the projection onto ZZ form.

Conjugating H by a Z-string W flips the sign of every term that
anticommutes with W. Averaging over the group generated by a set of such
W keeps exactly the terms commuting with all generators; with one
generator per level of a recursive bipartition, every cross term other
than Z_a Z_b is removed.
"""

from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import itertools
import logging

import numpy as np
from scipy.linalg import expm

from logical_compiler.gates import GATES
from errors import ConfigError
from flip_scheduler.models import Coloring

logger = logging.getLogger(__name__)

PAULI = "IXYZ"


@dataclass(frozen=True)
class PauliStringHamiltonian:
    """
    sum_k c_k P_k with real c_k and P_k a string over {I, X, Y, Z}.

    Character q of a string acts on qubit q.
    """
    num_qubits: int
    terms: Tuple[Tuple[float, str], ...]

    def __post_init__(self):
        merged: Dict[str, float] = {}
        for coefficient, string in self.terms:
            if len(string) != self.num_qubits or set(string) - set(PAULI):
                raise ConfigError(f"Bad Pauli string '{string}' for {self.num_qubits} qubits")
            if np.iscomplexobj(coefficient) or not np.isfinite(coefficient):
                raise ConfigError(f"Pauli coefficient must be real, got {coefficient}")
            merged[string] = merged.get(string, 0.0) + float(coefficient)
        terms = tuple((c, s) for s, c in sorted(merged.items()) if c != 0.0)
        object.__setattr__(self, "terms", terms)

    # ==================== Builders ====================

    @staticmethod
    def string(num_qubits: int, ops: Mapping[int, str]) -> str:
        chars = ["I"] * num_qubits
        for q, op in ops.items():
            chars[q] = op
        return "".join(chars)

    @classmethod
    def two_body(
        cls,
        num_qubits: int,
        couplings: Mapping[Tuple[int, int], Mapping[str, float]],
        fields: Optional[Mapping[int, Mapping[str, float]]] = None,
    ) -> "PauliStringHamiltonian":
        """
        General two-body plus local Hamiltonian.

        couplings[(a, b)]["XZ"] is the coefficient of X_a Z_b; fields[a]["Y"]
        the coefficient of Y_a.
        """
        terms = []
        for (a, b), coefficients in couplings.items():
            if a == b:
                raise ConfigError(f"Two-body term on a single qubit {a}")
            for ops, c in coefficients.items():
                terms.append((c, cls.string(num_qubits, {a: ops[0], b: ops[1]})))
        for a, coefficients in (fields or {}).items():
            for op, c in coefficients.items():
                terms.append((c, cls.string(num_qubits, {a: op})))
        return cls(num_qubits, tuple(terms))

    @classmethod
    def xyz(
        cls,
        num_qubits: int,
        alpha: Mapping[Tuple[int, int], float],
        beta: Mapping[Tuple[int, int], float],
        lam: Mapping[Tuple[int, int], float],
    ) -> "PauliStringHamiltonian":
        """sum alpha_ab X_a X_b + beta_ab Y_a Y_b + lambda_ab Z_a Z_b."""
        couplings: Dict[Tuple[int, int], Dict[str, float]] = {}
        for name, table in (("XX", alpha), ("YY", beta), ("ZZ", lam)):
            for pair, c in table.items():
                couplings.setdefault(pair, {})[name] = c
        return cls.two_body(num_qubits, couplings)

    # ==================== Algebra ====================

    def __add__(self, other: "PauliStringHamiltonian") -> "PauliStringHamiltonian":
        if other.num_qubits != self.num_qubits:
            raise ConfigError("Cannot add Hamiltonians on different qubit counts")
        return PauliStringHamiltonian(self.num_qubits, self.terms + other.terms)

    def scaled(self, factor: float) -> "PauliStringHamiltonian":
        return PauliStringHamiltonian(self.num_qubits, tuple((c * factor, s) for c, s in self.terms))

    def conjugated(self, mask: Sequence[bool]) -> "PauliStringHamiltonian":
        """W H W for the Z-string W acting on qubits where mask is True."""
        return PauliStringHamiltonian(
            self.num_qubits,
            tuple((-c if anticommutes(s, mask) else c, s) for c, s in self.terms),
        )

    def is_diagonal(self) -> bool:
        """True when every term commutes with every Z_q."""
        return all(set(s) <= {"I", "Z"} for _, s in self.terms)

    def coefficient(self, string: str) -> float:
        return dict((s, c) for c, s in self.terms).get(string, 0.0)

    def dense_matrix(self) -> np.ndarray:
        dim = 1 << self.num_qubits
        matrix = np.zeros((dim, dim), dtype=complex)
        for c, s in self.terms:
            matrix += c * reduce(np.kron, [GATES[ch] for ch in s], np.eye(1, dtype=complex))
        return matrix

    def to_dict(self) -> Dict[str, object]:
        return {"num_qubits": self.num_qubits, "terms": [[c, s] for c, s in self.terms]}


def anticommutes(string: str, mask: Sequence[bool]) -> bool:
    """Whether the Z-string on mask anticommutes with the Pauli string."""
    return sum(1 for ch, on in zip(string, mask) if on and ch in "XY") % 2 == 1


# ==================== Projection ====================

def halving_codes(num_qubits: int) -> List[Tuple[int, ...]]:
    """
    Per-qubit bit codes of a recursive bisection.

    Each block of size n splits into ceil(n/2) (bit 0) and floor(n/2)
    (bit 1) until every block holds one qubit; all codes have the same
    length ceil(log2 n).
    """
    depth = max(0, (num_qubits - 1).bit_length())
    codes: List[List[int]] = [[] for _ in range(num_qubits)]

    def split(block: List[int], level: int) -> None:
        if level == depth:
            return
        cut = (len(block) + 1) // 2
        for q in block[:cut]:
            codes[q].append(0)
        for q in block[cut:]:
            codes[q].append(1)
        if block[:cut]:
            split(block[:cut], level + 1)
        if block[cut:]:
            split(block[cut:], level + 1)

    split(list(range(num_qubits)), 0)
    return [tuple(c) for c in codes]


def coloring_codes(num_qubits: int, coloring: Coloring) -> List[Tuple[int, ...]]:
    """Per-qubit codes from the binary digits of the color index."""
    bits = max(1, (len(coloring.classes) - 1).bit_length())
    codes = []
    for q in range(num_qubits):
        color = coloring.color_of(q)
        codes.append(tuple((color >> b) & 1 for b in range(bits)))
    return codes


@dataclass
class ZZProjection:
    """Projected Hamiltonian, generators W_k, the group they generate and uniform weights."""
    hamiltonian: PauliStringHamiltonian
    generators: List[Tuple[bool, ...]]
    group: List[Tuple[bool, ...]]
    weights: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        def label(mask):
            return [q + 1 for q, on in enumerate(mask) if on]

        return {
            "hamiltonian": self.hamiltonian.to_dict(),
            "generators": [label(m) for m in self.generators],
            "group_size": len(self.group),
            "weight": self.weights[0] if self.weights else None,
        }


def zz_projection_transform(
    hamiltonian: PauliStringHamiltonian,
    mode: str = "halving",
    coloring: Optional[Coloring] = None,
    kill_local: bool = False,
) -> ZZProjection:
    """
    Average H over the group generated by bipartition Z-strings.

    mode "halving" uses one generator per bisection level; mode "coloring"
    one per bit of the color index, which removes cross terms only between
    qubits of different colors. kill_local adds the complementary strings
    so that local X and Y fields cancel too and local Z survives.
    """
    n = hamiltonian.num_qubits
    if mode == "halving":
        codes = halving_codes(n)
    elif mode == "coloring":
        if coloring is None:
            raise ConfigError("Coloring mode needs a coloring")
        codes = coloring_codes(n, coloring)
    else:
        raise ConfigError(f"Unknown projection mode '{mode}'")

    levels = len(codes[0]) if codes else 0
    generators = [tuple(code[k] == 0 for code in codes) for k in range(levels)]
    if kill_local:
        generators += [tuple(not on for on in mask) for mask in generators]
    generators = [g for g in dict.fromkeys(generators) if any(g)]

    group = []
    for picks in itertools.product((False, True), repeat=len(generators)):
        mask = [False] * n
        for pick, generator in zip(picks, generators):
            if pick:
                mask = [a != b for a, b in zip(mask, generator)]
        group.append(tuple(mask))
    group = list(dict.fromkeys(group))
    gamma = 1.0 / len(group)

    kept = tuple(
        (c, s) for c, s in hamiltonian.terms if not any(anticommutes(s, g) for g in generators)
    )
    projected = PauliStringHamiltonian(n, kept)
    logger.debug(
        f"zz_projection_transform | mode={mode} | generators={len(generators)} | "
        f"group={len(group)} | kept={len(kept)}/{len(hamiltonian.terms)}"
    )
    return ZZProjection(projected, generators, group, [gamma] * len(group))


def z_string_matrix(mask: Sequence[bool]) -> np.ndarray:
    """Diagonal of the Z-string on mask."""
    return reduce(np.kron, [GATES["Z"] if on else GATES["I"] for on in mask], np.eye(1, dtype=complex))


def averaged_evolution(
    hamiltonian: PauliStringHamiltonian,
    projection: ZZProjection,
    T: float,
    k: int,
) -> np.ndarray:
    """
    prod over k steps of prod_V V e^{-i gamma H T / k} V.

    Converges to e^{-i H' T} as k grows.
    """
    if k < 1:
        raise ConfigError(f"Step count must be >= 1, got {k}")
    H = hamiltonian.dense_matrix()
    step = np.eye(H.shape[0], dtype=complex)
    for mask, gamma in zip(projection.group, projection.weights):
        V = z_string_matrix(mask)
        step = V @ expm(-1j * gamma * H * T / k) @ V @ step
    return np.linalg.matrix_power(step, k)

"""
Adaptive logical measurement of one set.

Two orthogonal logical states of a K-qubit set are told apart with
single-qubit measurements only. At each node the measured qubit gets a
basis {u, u_perp} in which the two conditional remainders stay
orthogonal, so the outcome string always decides which state was
present. Once a branch is decided the set is in a known state; if that is
not already the logical target it is reset and re-encoded.
"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from errors import ConfigError, NonOrthogonalBasisError, ProgramError
from lattice.grouping import Grouping
from lattice.layout import PhysicalLayout
from logical_compiler.gates import GATES
from logical_compiler.ghz import EncodingPlan, SlotEdge, encoding_plan
from logical_compiler.program import Conditional, MeasureZ, PulseProgram, Step, unitary_gate

logger = logging.getLogger(__name__)

Basis = Tuple[Sequence[complex], Sequence[complex]]


def measurement_key(set_index: int, qubit: int) -> str:
    return f"set{set_index + 1}.q{qubit + 1}"


def logical_basis_state(coefficients: Sequence[complex], size: int) -> np.ndarray:
    """c0 |0...0> + c1 |1...1> on `size` qubits."""
    state = np.zeros(1 << size, dtype=complex)
    state[0] += coefficients[0]
    state[-1] += coefficients[1]
    return state


def bloch_pair(direction: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """(u, u_perp) with u pointing along the Bloch vector `direction`."""
    x, y, z = direction / np.linalg.norm(direction)
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.array([c, np.exp(1j * phi) * s])
    perp = np.array([-np.exp(-1j * phi) * s, c])
    return u, perp


def _perpendicular(n: np.ndarray) -> np.ndarray:
    n = n / np.linalg.norm(n)
    e = np.zeros(3)
    e[int(np.argmin(np.abs(n)))] = 1.0
    v = e - (e @ n) * n
    return v / np.linalg.norm(v)


def orthogonalizing_basis(psi: np.ndarray, phi: np.ndarray, tol: float = 1e-12) -> Tuple[np.ndarray, np.ndarray]:
    """
    Basis of the leading qubit keeping the remainders of psi and phi orthogonal.

    With A_ab = <phi_a|psi_b> and B = A^T, the remainder overlap for u is
    <u|B|u> = a . r(u) where B = a . sigma (B is traceless because
    <phi|psi> = 0). r is chosen perpendicular to Re a and Im a.
    """
    psi = psi.reshape(2, -1)
    phi = phi.reshape(2, -1)
    B = (phi.conj() @ psi.T).T
    a = np.array([
        (B[0, 1] + B[1, 0]) / 2,
        (B[1, 0] - B[0, 1]) / 2j,
        (B[0, 0] - B[1, 1]) / 2,
    ])
    re, im = a.real, a.imag
    if np.linalg.norm(a) < tol:
        direction = np.array([0.0, 0.0, 1.0])
    else:
        direction = np.cross(re, im)
        if np.linalg.norm(direction) < tol:
            direction = _perpendicular(re if np.linalg.norm(re) >= np.linalg.norm(im) else im)
    u, perp = bloch_pair(direction)
    overlap = u.conj() @ B @ u
    if abs(overlap) > max(tol, 1e-9) * max(1.0, np.linalg.norm(B)):
        raise ProgramError(f"Measurement basis leaves remainder overlap {abs(overlap):.3e}")
    return u, perp


def _restore_gate(plan_target: np.ndarray) -> np.ndarray:
    """U with U|0> = c0|0> + c1|1>."""
    c0, c1 = plan_target
    return np.array([[c0, -np.conj(c1)], [c1, np.conj(c0)]], dtype=complex)


class _TreeBuilder:
    def __init__(
        self,
        layout: PhysicalLayout,
        grouping: Grouping,
        set_index: int,
        targets: Tuple[np.ndarray, np.ndarray],
        cx_tree: Optional[Sequence[SlotEdge]],
        tol: float,
    ):
        self.layout = layout
        self.grouping = grouping
        self.set_index = set_index
        self.members = grouping.members(set_index)
        self.targets = targets
        self.cx_tree = cx_tree
        self.tol = tol
        self.decoder: Dict[str, int] = {}
        self.corrections = 0
        self._plan: Optional[EncodingPlan] = None

    @property
    def plan(self) -> EncodingPlan:
        if self._plan is None:
            self._plan = encoding_plan(self.layout, self.grouping, self.set_index, self.cx_tree)
        return self._plan

    def _correction(self, decided: int, measured: List[Tuple[int, np.ndarray, int]]) -> List[Step]:
        """Reset every measured qubit to |0>, rotate the root, re-encode."""
        steps: List[Step] = []
        for q, R, outcome in measured:
            G = GATES["X"] @ R if outcome else R
            if not np.allclose(G, np.eye(2)):
                steps.append(unitary_gate(q, G))
        coefficients = self.targets[decided][[0, -1]]
        steps.append(unitary_gate(self.plan.root, _restore_gate(coefficients)))
        steps.extend(self.plan.encode_steps(self.layout))
        self.corrections += 1
        return steps

    def node(
        self,
        psi: np.ndarray,
        phi: np.ndarray,
        depth: int,
        measured: List[Tuple[int, np.ndarray, int]],
        states: List[np.ndarray],
        path: str,
    ) -> List[Step]:
        n_psi, n_phi = np.linalg.norm(psi), np.linalg.norm(phi)
        if n_psi < self.tol and n_phi < self.tol:
            # unreachable branch
            self.decoder[path] = 0
            return []
        decided = None
        if n_phi < self.tol:
            decided = 0
        elif n_psi < self.tol:
            decided = 1

        if decided is not None:
            rest = psi if decided == 0 else phi
            known = rest / np.linalg.norm(rest)
            for v in reversed(states):
                known = np.kron(v, known)
            if abs(np.vdot(self.targets[decided], known)) > 1 - self.tol:
                self.decoder[path] = decided
                return []
            if depth == len(self.members):
                self.decoder[path] = decided
                return self._correction(decided, measured)
            u, perp = np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)
        else:
            if depth == len(self.members):
                raise ProgramError("Orthogonal remainders exhausted without a decision")
            u, perp = orthogonalizing_basis(psi, phi, self.tol)

        q = self.members[depth]
        key = measurement_key(self.set_index, q)
        R = np.vstack([u.conj(), perp.conj()])
        rotate = not np.allclose(R, np.eye(2))
        steps: List[Step] = [unitary_gate(q, R)] if rotate else []
        steps.append(MeasureZ(q, key))
        if rotate:
            steps.append(unitary_gate(q, R.conj().T))

        branches: Dict[int, List[Step]] = {}
        for outcome, v in ((0, u), (1, perp)):
            psi_v = v.conj() @ psi.reshape(2, -1)
            phi_v = v.conj() @ phi.reshape(2, -1)
            branches[outcome] = self.node(
                psi_v.reshape(-1),
                phi_v.reshape(-1),
                depth + 1,
                measured + [(q, R, outcome)],
                states + [v],
                path + str(outcome),
            )
        steps.append(Conditional(key, branches))
        return steps


def compile_logical_measurement(
    layout: PhysicalLayout,
    grouping: Grouping,
    i: int,
    basis: Basis,
    cx_tree: Optional[Sequence[SlotEdge]] = None,
    settings=None,
) -> PulseProgram:
    """
    Measurement tree distinguishing basis[0] (outcome 0) from basis[1].

    basis holds two orthogonal logical vectors (c0, c1) meaning
    c0|0^L> + c1|1^L>. metadata["decoder"] maps the outcome string of the
    measured keys (metadata["keys"] order) to the logical outcome; use
    logical_outcome to read it. After the tree the set holds the measured
    logical state.
    """
    if settings is None:
        from settings import settings
    grouping.validate_against(layout)
    vectors = [np.asarray(v, dtype=complex).reshape(-1) for v in basis]
    if len(vectors) != 2 or any(v.shape != (2,) for v in vectors):
        raise ConfigError("A logical measurement basis is two 2-component vectors")
    if any(np.linalg.norm(v) == 0 for v in vectors):
        raise ConfigError("Logical basis vector is zero")
    vectors = [v / np.linalg.norm(v) for v in vectors]
    overlap = abs(np.vdot(vectors[0], vectors[1]))
    if overlap > settings.EXACT_TOLERANCE:
        raise NonOrthogonalBasisError(overlap)

    members = grouping.members(i)
    targets = (logical_basis_state(vectors[0], len(members)), logical_basis_state(vectors[1], len(members)))
    builder = _TreeBuilder(layout, grouping, i, targets, cx_tree, settings.EXACT_TOLERANCE)
    steps = builder.node(targets[0], targets[1], 0, [], [], "")
    program = PulseProgram(
        layout.num_qubits,
        steps,
        {
            "decoder": dict(builder.decoder),
            "keys": [measurement_key(i, q) for q in members],
            "corrections": builder.corrections,
            "measured_set": i + 1,
        },
    )
    logger.info(
        f"compile_logical_measurement | set={i + 1} | leaves={len(builder.decoder)} | "
        f"corrections={builder.corrections} | worst_time={program.total_time:.6g}"
    )
    return program


def logical_outcome(program: PulseProgram, outcomes: Mapping[str, int]) -> int:
    """Logical outcome (0 or 1) of one run of a measurement program."""
    decoder = program.metadata.get("decoder")
    if decoder is None:
        raise ProgramError("Program carries no measurement decoder")
    path = ""
    if path in decoder:
        return decoder[path]
    for key in program.metadata["keys"]:
        if key not in outcomes:
            break
        path += str(int(outcomes[key]))
        if path in decoder:
            return decoder[path]
    raise ProgramError(f"Outcome string '{path}' is not a leaf of the measurement tree")

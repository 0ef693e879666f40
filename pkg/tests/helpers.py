"""Shared builders for tests."""

import numpy as np

from lattice import Grouping, square_layout


def eight_qubit_block():
    """Eight-qubit 2x4 set at the bottom of a 4x4 n.n. lattice, plus two spectator sets."""
    layout = square_layout(4, 4, cutoff=1.0)
    bottom = [q for q, (x, y) in enumerate(layout.positions) if y <= 1]
    rest = [q for q in range(16) if q not in bottom]
    return layout, Grouping.from_members(layout, [bottom, rest[:4], rest[4:]])


def random_unitary(rng, dim=2):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, num_qubits):
    psi = rng.normal(size=2 ** num_qubits) + 1j * rng.normal(size=2 ** num_qubits)
    return psi / np.linalg.norm(psi)


def program_unitary(program, layout):
    """Dense unitary of a measurement-free pulse program, column by column."""
    from dynamics import Statevector, apply_program

    dim = 2 ** layout.num_qubits
    columns = []
    for b in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[b] = 1.0
        columns.append(apply_program(Statevector(basis), program, layout).state.data)
    return np.array(columns).T


def cx_reference(num_qubits, control, target):
    from dynamics import Statevector

    dim = 2 ** num_qubits
    columns = []
    for b in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[b] = 1.0
        columns.append(Statevector(basis).apply_cx(control, target).data)
    return np.array(columns).T


def encoded(logical, grouping, num_qubits):
    from dynamics import Statevector, encode_logical

    return encode_logical(Statevector(logical), grouping, num_qubits)

import numpy as np
import pytest

from grover_forge import TargetSet
from grover_forge.ir import Controlled, PatternPhase, Single


@pytest.fixture
def example_targets():
    """The four-target, three-qubit worked example."""
    return TargetSet.from_labels(3, ["000", "001", "010", "100"])


def random_target_set(rng, n, max_size=None):
    top = max_size or (1 << n)
    size = int(rng.integers(1, top + 1))
    labels = rng.choice(1 << n, size=size, replace=False)
    return TargetSet(n, tuple(sorted(int(x) for x in labels)))


def random_unitary_2x2(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def phase_align(a, b):
    """Scale `a` by a unit phase so its largest-|b| entry matches b."""
    i = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    return a * (b[i] / a[i])


def dense_gate_matrix(gate, n):
    """Independent dense matrix of one gate, from projectors and krons."""
    dim = 1 << n
    if isinstance(gate, Single):
        mat = np.array([[1]], dtype=complex)
        for q in range(n):
            mat = np.kron(mat, gate.u if q == gate.target else np.eye(2))
        return mat
    if isinstance(gate, PatternPhase):
        diag = np.ones(dim, dtype=complex)
        diag[int(gate.pattern, 2)] = gate.phase
        return np.diag(diag)
    if isinstance(gate, Controlled):
        mat = np.eye(dim, dtype=complex)
        for x in range(dim):
            if all(((x >> (n - 1 - q)) & 1) == b for q, b in gate.controls):
                tbit = 1 << (n - 1 - gate.target)
                if x & tbit == 0:
                    x0, x1 = x, x | tbit
                    mat[x0, x0] = gate.u[0, 0]
                    mat[x0, x1] = gate.u[0, 1]
                    mat[x1, x0] = gate.u[1, 0]
                    mat[x1, x1] = gate.u[1, 1]
        return mat
    raise TypeError(gate)


def state_of_targets(targets):
    """|S> built directly from amplitudes, bypassing synthesis."""
    amps = np.zeros(1 << targets.n, dtype=complex)
    amps[list(targets.labels)] = targets.size ** -0.5
    return amps

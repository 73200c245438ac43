"""Gate intermediate representation and exact state-vector semantics.

Three gate kinds cover everything the synthesis passes emit:

* ``Single``       -- an arbitrary 2x2 unitary on one qubit.
* ``Controlled``   -- a 2x2 unitary applied where every control qubit
                      matches its required bit (polarities may mix 0s and 1s).
* ``PatternPhase`` -- multiplies the amplitude of one basis state by a
                      unit-modulus phase.

Qubit 0 is the most significant bit of the basis-state index.  Gate lists
apply left to right.  Dense matrices exist only in ``unitary_of``, which is
a testing oracle; simulation works in place on the amplitude array.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError

ATOL_UNITARY = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def _as_unitary(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValidationError(f"gate block must be 2x2, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, I2, atol=ATOL_UNITARY):
        raise ValidationError("gate block is not unitary")
    u = u.copy()
    u.flags.writeable = False
    return u


@dataclass(frozen=True)
class Single:
    u: np.ndarray
    target: int

    def __post_init__(self):
        object.__setattr__(self, "u", _as_unitary(self.u))

    def dagger(self) -> "Single":
        return Single(self.u.conj().T, self.target)


@dataclass(frozen=True)
class Controlled:
    controls: tuple[tuple[int, int], ...]
    u: np.ndarray
    target: int

    def __post_init__(self):
        object.__setattr__(self, "u", _as_unitary(self.u))
        controls = tuple((int(q), int(b)) for q, b in self.controls)
        if not controls:
            raise ValidationError("controlled gate needs at least one control")
        qubits = [q for q, _ in controls]
        if len(set(qubits)) != len(qubits) or self.target in qubits:
            raise ValidationError("control qubits must be distinct from each "
                                  "other and from the target")
        if any(b not in (0, 1) for _, b in controls):
            raise ValidationError("control polarity must be 0 or 1")
        object.__setattr__(self, "controls", controls)

    def dagger(self) -> "Controlled":
        return Controlled(self.controls, self.u.conj().T, self.target)


@dataclass(frozen=True)
class PatternPhase:
    pattern: str
    phase: complex

    def __post_init__(self):
        if set(self.pattern) - {"0", "1"} or not self.pattern:
            raise ValidationError(f"bad pattern {self.pattern!r}")
        phase = complex(self.phase)
        if abs(abs(phase) - 1.0) > ATOL_UNITARY:
            raise ValidationError("pattern phase must have modulus 1")
        object.__setattr__(self, "phase", phase)

    def dagger(self) -> "PatternPhase":
        return PatternPhase(self.pattern, self.phase.conjugate())


Gate = Single | Controlled | PatternPhase


def _gate_qubits(gate: Gate) -> list[int]:
    if isinstance(gate, Single):
        return [gate.target]
    if isinstance(gate, Controlled):
        return [gate.target, *(q for q, _ in gate.controls)]
    return list(range(len(gate.pattern)))


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for gate in self.gates:
            if isinstance(gate, PatternPhase) and len(gate.pattern) != self.n:
                raise ValidationError("pattern length must equal qubit count")
            for q in _gate_qubits(gate):
                if not 0 <= q < self.n:
                    raise ValidationError(f"qubit index {q} out of range")

    def dagger(self) -> "Circuit":
        return Circuit(self.n, tuple(g.dagger() for g in reversed(self.gates)))

    def __len__(self):
        return len(self.gates)


@dataclass(frozen=True)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValidationError(
                f"state on {self.n} qubits needs {1 << self.n} amplitudes")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, x: int) -> "StateVector":
        amps = np.zeros(1 << n, dtype=complex)
        amps[x] = 1.0
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())


def _apply_inplace(amps: np.ndarray, n: int, gate: Gate) -> None:
    if isinstance(gate, Single):
        view = np.moveaxis(amps.reshape([2] * n), gate.target, -1)
        view[...] = view @ gate.u.T
    elif isinstance(gate, Controlled):
        idx = np.arange(amps.size)
        mask = np.ones(amps.size, dtype=bool)
        for q, b in gate.controls:
            mask &= ((idx >> (n - 1 - q)) & 1) == b
        tbit = 1 << (n - 1 - gate.target)
        i0 = idx[mask & ((idx & tbit) == 0)]
        i1 = i0 | tbit
        a0 = amps[i0]
        a1 = amps[i1]
        u = gate.u
        amps[i0] = u[0, 0] * a0 + u[0, 1] * a1
        amps[i1] = u[1, 0] * a0 + u[1, 1] * a1
    else:
        amps[int(gate.pattern, 2)] *= gate.phase


def apply(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate, returning a fresh state."""
    for q in _gate_qubits(gate):
        if not 0 <= q < state.n:
            raise ValidationError(f"qubit index {q} out of range")
    if isinstance(gate, PatternPhase) and len(gate.pattern) != state.n:
        raise ValidationError("pattern length must equal qubit count")
    amps = state.amplitudes.copy()
    _apply_inplace(amps, state.n, gate)
    return StateVector(state.n, amps)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    if circuit.n != state.n:
        raise ValidationError("circuit and state qubit counts differ")
    amps = state.amplitudes.copy()
    for gate in circuit.gates:
        _apply_inplace(amps, state.n, gate)
    return StateVector(state.n, amps)


MAX_DENSE_QUBITS = 12


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Dense matrix of a circuit.  Testing oracle only.

    All columns are propagated together: axis 0 indexes the output basis
    state, axis 1 the input column, and each gate acts on the row index.
    """
    n = circuit.n
    if n > MAX_DENSE_QUBITS:
        raise ValidationError(
            f"refusing dense matrix for n={n} > {MAX_DENSE_QUBITS}")
    dim = 1 << n
    mat = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        if isinstance(gate, Single):
            view = np.moveaxis(mat.reshape([2] * n + [dim]), gate.target, -1)
            view[...] = view @ gate.u.T
        elif isinstance(gate, Controlled):
            idx = np.arange(dim)
            mask = np.ones(dim, dtype=bool)
            for q, b in gate.controls:
                mask &= ((idx >> (n - 1 - q)) & 1) == b
            tbit = 1 << (n - 1 - gate.target)
            i0 = idx[mask & ((idx & tbit) == 0)]
            i1 = i0 | tbit
            a0 = mat[i0]
            a1 = mat[i1]
            u = gate.u
            mat[i0] = u[0, 0] * a0 + u[0, 1] * a1
            mat[i1] = u[1, 0] * a0 + u[1, 1] * a1
        else:
            mat[int(gate.pattern, 2)] *= gate.phase
    return mat


def ry_from_probs(p0, p1) -> np.ndarray:
    """Real rotation sending |0> to sqrt(p0)|0> + sqrt(p1)|1>."""
    p0f, p1f = float(p0), float(p1)
    if p0f < 0 or p1f < 0:
        raise ValidationError("branch probabilities must be nonnegative")
    if not isinstance(p0, Fraction) or not isinstance(p1, Fraction):
        if abs(p0f + p1f - 1.0) > ATOL_UNITARY:
            raise ValidationError("branch probabilities must sum to 1")
    elif p0 + p1 != 1:
        raise ValidationError("branch probabilities must sum to 1")
    r0, r1 = math.sqrt(p0f), math.sqrt(p1f)
    return np.array([[r0, -r1], [r1, r0]], dtype=complex)


# -- JSON circuit format ----------------------------------------------------

def _block_to_json(u: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in u.reshape(-1)]


def _block_from_json(entries) -> np.ndarray:
    flat = [complex(re, im) for re, im in entries]
    return np.array(flat, dtype=complex).reshape(2, 2)


def circuit_to_json(circuit: Circuit) -> dict:
    gates = []
    for gate in circuit.gates:
        if isinstance(gate, Single):
            gates.append({"kind": "single", "target": gate.target,
                          "u": _block_to_json(gate.u)})
        elif isinstance(gate, Controlled):
            gates.append({"kind": "controlled",
                          "controls": [[q, b] for q, b in gate.controls],
                          "target": gate.target,
                          "u": _block_to_json(gate.u)})
        else:
            gates.append({"kind": "pattern_phase", "pattern": gate.pattern,
                          "phase": [gate.phase.real, gate.phase.imag]})
    return {"n": circuit.n, "gates": gates}


def circuit_from_json(data: dict) -> Circuit:
    gates = []
    for entry in data["gates"]:
        kind = entry["kind"]
        if kind == "single":
            gates.append(Single(_block_from_json(entry["u"]), entry["target"]))
        elif kind == "controlled":
            controls = tuple((q, b) for q, b in entry["controls"])
            gates.append(Controlled(controls, _block_from_json(entry["u"]),
                                    entry["target"]))
        elif kind == "pattern_phase":
            re, im = entry["phase"]
            gates.append(PatternPhase(entry["pattern"], complex(re, im)))
        else:
            raise ValidationError(f"unknown gate kind {kind!r}")
    return Circuit(int(data["n"]), tuple(gates))


def save_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(circuit_to_json(circuit), fh, indent=1)
        fh.write("\n")


def load_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return circuit_from_json(json.load(fh))

"""Lowering of the gate IR to single-qubit gates plus CNOTs.

Runs of controlled real rotations that share one target and one control
set (the shape every synthesis stage has) are lowered jointly as a
multiplexed rotation: 2^m CNOTs and 2^m rotations for m controls, using
the gray-code ordering of control patterns.  Everything else goes through
recursive control reduction: a controlled-U splits into two-gate-deep
square roots until only singly controlled gates remain, and those become
two CNOTs plus single-qubit rotations.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ValidationError
from .ir import Circuit, Controlled, Gate, PatternPhase, Single, X, ATOL_UNITARY


def _cnot(control: int, target: int) -> Controlled:
    return Controlled(((control, 1),), X, target)


def is_cnot(gate: Gate) -> bool:
    return (isinstance(gate, Controlled) and len(gate.controls) == 1
            and gate.controls[0][1] == 1
            and np.allclose(gate.u, X, atol=1e-9))


def _is_real_rotation(u: np.ndarray) -> bool:
    if np.abs(u.imag).max() > ATOL_UNITARY:
        return False
    return (abs(u[0, 0] - u[1, 1]) <= ATOL_UNITARY
            and abs(u[0, 1] + u[1, 0]) <= ATOL_UNITARY)


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.array([[cmath.exp(-1j * theta / 2), 0],
                     [0, cmath.exp(1j * theta / 2)]], dtype=complex)


def zyz_angles(u: np.ndarray) -> tuple[float, float, float, float]:
    """Angles (alpha, beta, gamma, delta) with u = e^{ia} Rz(b) Ry(g) Rz(d)."""
    det = np.linalg.det(u)
    alpha = cmath.phase(det) / 2
    v = u * cmath.exp(-1j * alpha)
    c, s = abs(v[0, 0]), abs(v[1, 0])
    gamma = 2 * math.atan2(s, c)
    if s <= ATOL_UNITARY:
        beta = -2 * cmath.phase(v[0, 0])
        delta = 0.0
    elif c <= ATOL_UNITARY:
        beta = 2 * cmath.phase(v[1, 0])
        delta = 0.0
    else:
        half_sum = -cmath.phase(v[0, 0])
        half_diff = cmath.phase(v[1, 0])
        beta = half_sum + half_diff
        delta = half_sum - half_diff
    return alpha, beta, gamma, delta


def sqrt_unitary(u: np.ndarray) -> np.ndarray:
    """Principal square root of a 2x2 unitary, in closed form."""
    det = np.linalg.det(u)
    alpha = cmath.phase(det) / 2
    v = u * cmath.exp(-1j * alpha)
    c = min(1.0, max(-1.0, (v[0, 0] + v[1, 1]).real / 2))
    theta = math.acos(c)
    if abs(math.sin(theta)) <= 1e-14:
        if c > 0:
            root = np.eye(2, dtype=complex)
        else:
            # v = -1: pick the z axis for the half turn.
            root = np.diag([1j, -1j]).astype(complex)
    else:
        axis_term = (v - c * np.eye(2)) / (1j * math.sin(theta))
        root = (math.cos(theta / 2) * np.eye(2)
                + 1j * math.sin(theta / 2) * axis_term)
    return root * cmath.exp(1j * alpha / 2)


def _is_identity(u: np.ndarray) -> bool:
    return np.allclose(u, np.eye(2), atol=1e-14)


def _lower_single_control(control: int, u: np.ndarray, target: int) -> list[Gate]:
    """Exact controlled-U on a positive control: two CNOTs, rotations, and a
    phase gate on the control."""
    if np.allclose(u, X, atol=ATOL_UNITARY):
        return [_cnot(control, target)]
    alpha, beta, gamma, delta = zyz_angles(u)
    a = _rz(beta) @ _ry(gamma / 2)
    b = _ry(-gamma / 2) @ _rz(-(delta + beta) / 2)
    c = _rz((delta - beta) / 2)
    out: list[Gate] = []
    if not _is_identity(c):
        out.append(Single(c, target))
    out.append(_cnot(control, target))
    if not _is_identity(b):
        out.append(Single(b, target))
    out.append(_cnot(control, target))
    if not _is_identity(a):
        out.append(Single(a, target))
    if abs(alpha) > 1e-14:
        out.append(Single(np.diag([1, cmath.exp(1j * alpha)]), control))
    return out


def _lower_positive_controls(controls: list[int], u: np.ndarray,
                             target: int) -> list[Gate]:
    """Recursive control reduction for an all-positive multi-control."""
    if not controls:
        return [Single(u, target)]
    if len(controls) == 1:
        return _lower_single_control(controls[0], u, target)
    v = sqrt_unitary(u)
    rest, last = controls[:-1], controls[-1]
    out = _lower_positive_controls(rest, v, target)
    out += _lower_positive_controls(rest, X, last)
    out += _lower_single_control(last, v.conj().T, target)
    out += _lower_positive_controls(rest, X, last)
    out += _lower_single_control(last, v, target)
    return out


def _lower_multi_controlled(gate: Controlled) -> list[Gate]:
    flips = [Single(X, q) for q, b in gate.controls if b == 0]
    qubits = [q for q, _ in gate.controls]
    inner = _lower_positive_controls(qubits, np.asarray(gate.u), gate.target)
    return flips + inner + list(flips)


def _lower_pattern_phase(gate: PatternPhase, n: int) -> list[Gate]:
    """X-conjugated controlled phase, the standard shape for a basis-state
    phase flip."""
    flips = [Single(X, q) for q, ch in enumerate(gate.pattern) if ch == "0"]
    phase_block = np.diag([1, gate.phase]).astype(complex)
    if n == 1:
        core = [Single(phase_block, 0)]
    else:
        core = _lower_positive_controls(list(range(n - 1)), phase_block, n - 1)
    return flips + core + list(flips)


def _rotation_angle(u: np.ndarray) -> float:
    return 2 * math.atan2(u[1, 0].real, u[0, 0].real)


def _gray(k: int) -> int:
    return k ^ (k >> 1)


def _lower_rotation_run(run: list[Controlled]) -> list[Gate]:
    """Joint lowering of controlled rotations sharing target and controls."""
    target = run[0].target
    qubits = sorted(q for q, _ in run[0].controls)
    m = len(qubits)
    theta = np.zeros(1 << m)
    for gate in run:
        bits = dict(gate.controls)
        pattern = 0
        for i, q in enumerate(qubits):
            pattern |= bits[q] << (m - 1 - i)
        theta[pattern] += _rotation_angle(gate.u)
    # Angle transform: theta[a] = sum_k (-1)^{popcount(a & gray(k))} phi[k].
    size = 1 << m
    phi = np.zeros(size)
    for k in range(size):
        g = _gray(k)
        acc = 0.0
        for a in range(size):
            sign = -1.0 if bin(a & g).count("1") % 2 else 1.0
            acc += sign * theta[a]
        phi[k] = acc / size
    out: list[Gate] = []
    for k in range(size):
        if abs(phi[k]) > 1e-14:
            out.append(Single(_ry(phi[k]), target))
        diff = _gray(k) ^ _gray((k + 1) % size)
        bit_pos = diff.bit_length() - 1
        out.append(_cnot(qubits[m - 1 - bit_pos], target))
    return out


def lower(circuit: Circuit) -> Circuit:
    """Rewrite a circuit into single-qubit gates and CNOTs.

    Semantics are preserved exactly up to a global phase.
    """
    out: list[Gate] = []
    gates = list(circuit.gates)
    i = 0
    while i < len(gates):
        gate = gates[i]
        if isinstance(gate, Single):
            out.append(gate)
            i += 1
        elif isinstance(gate, PatternPhase):
            out += _lower_pattern_phase(gate, circuit.n)
            i += 1
        elif _is_real_rotation(gate.u):
            run = [gate]
            key = (gate.target, frozenset(q for q, _ in gate.controls))
            j = i + 1
            while j < len(gates):
                nxt = gates[j]
                if (isinstance(nxt, Controlled) and _is_real_rotation(nxt.u)
                        and (nxt.target,
                             frozenset(q for q, _ in nxt.controls)) == key):
                    run.append(nxt)
                    j += 1
                else:
                    break
            out += _lower_rotation_run(run)
            i = j
        else:
            out += _lower_multi_controlled(gate)
            i += 1
    lowered = Circuit(circuit.n, tuple(out))
    for gate in lowered.gates:
        if isinstance(gate, PatternPhase):
            raise ValidationError("lowering left a pattern phase behind")
        if isinstance(gate, Controlled) and not is_cnot(gate):
            raise ValidationError("lowering left a multi-controlled gate")
    return lowered

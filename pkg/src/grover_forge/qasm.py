"""OpenQASM 2.0 export of lowered circuits.

Only the lowered gate alphabet is accepted: single-qubit unitaries and
CNOTs.  Single-qubit blocks are emitted as h/x/ry/rz where they match one
exactly and as an rz-ry-rz triple otherwise; global phase is dropped.
"""
from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .ir import Circuit, Controlled, H, Single, X
from .lowering import is_cnot, zyz_angles

_ATOL = 1e-10


def _fmt(angle: float) -> str:
    return repr(round(angle, 12))


def _single_lines(u: np.ndarray, q: int) -> list[str]:
    if np.allclose(u, np.eye(2), atol=_ATOL):
        return []
    if np.allclose(u, X, atol=_ATOL):
        return [f"x q[{q}];"]
    if np.allclose(u, H, atol=_ATOL):
        return [f"h q[{q}];"]
    _, beta, gamma, delta = zyz_angles(u)  # global phase dropped
    lines = []
    if abs(delta) > _ATOL:
        lines.append(f"rz({_fmt(delta)}) q[{q}];")
    if abs(gamma) > _ATOL:
        lines.append(f"ry({_fmt(gamma)}) q[{q}];")
    if abs(beta) > _ATOL:
        lines.append(f"rz({_fmt(beta)}) q[{q}];")
    return lines


def to_qasm(circuit: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";',
             f"qreg q[{circuit.n}];"]
    for gate in circuit.gates:
        if isinstance(gate, Single):
            lines += _single_lines(np.asarray(gate.u), gate.target)
        elif isinstance(gate, Controlled) and is_cnot(gate):
            lines.append(f"cx q[{gate.controls[0][0]}],q[{gate.target}];")
        else:
            raise ValidationError(
                "QASM export accepts lowered circuits only "
                "(single-qubit gates and CNOTs)")
    return "\n".join(lines) + "\n"

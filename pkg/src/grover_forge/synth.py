"""Staged synthesis of the target-superposition preparation circuit.

Stage 1 rotates the first qubit by the marginal split of the targets;
stage m rotates qubit m conditioned on each populated (m-1)-bit prefix.
Applying all n stages to |0...0> leaves the equal-weight superposition of
the targets, which turns the single-basis-state phase flip into the
reflection about that superposition.
"""
from __future__ import annotations

from .dichotomy import PrefixTable, build_prefix_table, conditional_prob, marginal_prob
from .errors import ValidationError
from .ir import Circuit, Controlled, Gate, PatternPhase, Single, ry_from_probs
from .targets import TargetSet


def build_stage(table: PrefixTable, m: int) -> Circuit:
    """The stage-m circuit: rotations on qubit m-1 (0-based).

    Branches with probability pair (1, 0) are identity and dropped.  When
    every prefix at depth m-1 is populated and all branch splits agree, the
    stage collapses to one uncontrolled rotation.
    """
    n = table.n
    if not 1 <= m <= n:
        raise ValidationError(f"stage {m} out of range 1..{n}")
    if m == 1:
        p0, p1 = marginal_prob(table, 1, 0), marginal_prob(table, 1, 1)
        if p1 == 0:
            return Circuit(n, ())
        return Circuit(n, (Single(ry_from_probs(p0, p1), 0),))

    depth = m - 1
    support = sorted(table.support(depth))
    splits = [(alpha,
               conditional_prob(table, depth, 0, alpha),
               conditional_prob(table, depth, 1, alpha))
              for alpha in support]
    if (len(support) == 1 << depth
            and all(s[1:] == splits[0][1:] for s in splits)):
        p0, p1 = splits[0][1:]
        if p1 == 0:
            return Circuit(n, ())
        return Circuit(n, (Single(ry_from_probs(p0, p1), m - 1),))

    gates: list[Gate] = []
    for alpha, p0, p1 in splits:
        if p1 == 0:
            continue
        controls = tuple((q, (alpha >> (depth - 1 - q)) & 1)
                         for q in range(depth))
        gates.append(Controlled(controls, ry_from_probs(p0, p1), m - 1))
    return Circuit(n, tuple(gates))


def build_U(targets: TargetSet) -> Circuit:
    """Preparation circuit mapping |0...0> to the target superposition."""
    table = build_prefix_table(targets)
    gates: list[Gate] = []
    for m in range(1, targets.n + 1):
        gates.extend(build_stage(table, m).gates)
    return Circuit(targets.n, tuple(gates))


def build_oracle(targets: TargetSet) -> Circuit:
    """Reflection about the target superposition: U . P . U^dagger."""
    prep = build_U(targets)
    flip = PatternPhase("0" * targets.n, -1)
    return Circuit(targets.n, prep.dagger().gates + (flip,) + prep.gates)

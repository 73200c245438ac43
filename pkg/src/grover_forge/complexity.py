"""Gate counting and the closed-form cost comparison of the two pipelines.

The cost model charges one elementary gate for an uncontrolled or singly
controlled gate and m^2 for m >= 2 controls.  Bounds are the exact sums
behind the asymptotic headlines, so the inequalities are testable; the
crossover ratio is evaluated in log space to stay finite for thousands of
qubits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ValidationError
from .ir import Circuit, Controlled, PatternPhase
from .reduced import build_pi_sigma, build_U_tilde, canonical_targets
from .synth import build_oracle, build_U
from .targets import TargetSet


def _default_cost(m: int) -> int:
    return 1 if m <= 1 else m * m


@dataclass(frozen=True)
class CostModel:
    """Elementary-gate charge as a function of control count."""

    cost: Callable[[int], int] = _default_cost

    def __call__(self, m: int) -> int:
        value = self.cost(m)
        if value < 0:
            raise ValidationError("gate cost must be nonnegative")
        return value


DEFAULT_MODEL = CostModel()


def count(circuit: Circuit, model: CostModel = DEFAULT_MODEL) -> int:
    """Total elementary-gate charge of a circuit.

    A basis-state phase flip on n qubits is charged as an (n-1)-controlled
    gate plus the X conjugation on its zero positions.
    """
    total = 0
    for gate in circuit.gates:
        if isinstance(gate, Controlled):
            total += model(len(gate.controls))
        elif isinstance(gate, PatternPhase):
            n = len(gate.pattern)
            total += model(n - 1) + 2 * gate.pattern.count("0")
        else:
            total += model(0)
    return total


def bound_U(n: int, s: int) -> int:
    """Exact sum behind the n^3 |S| / 6 headline for the full preparation."""
    return sum(m * m * s for m in range(1, n)) + 1


def bound_U_tilde(l: int) -> int:
    """Exact sum behind the l^2 2^l headline for the compressed preparation."""
    return 1 + sum(m * m * (1 << m) for m in range(1, l))


def bound_pi(n: int, s: int) -> int:
    """At most s pairs, n gray steps each, n-1 controls per step."""
    return s * n * (n - 1) ** 2


def _l_of(s: int) -> int:
    return 0 if s == 1 else math.ceil(math.log2(s))


def total_reduced_cost(n: int, s: int, k: int) -> int:
    """Headline cost of the permuted pipeline after k iterations."""
    l = _l_of(s)
    return 2 * n ** 3 * s + 2 * k * n ** 2 + 2 * k * l * l * (1 << l)


def gamma_approx(n: int, gamma: float) -> float:
    """Large-n approximation of the cost ratio at target density l/n."""
    ln2 = math.log(2)
    terms = [math.log(n) - n * (1 - gamma) / 2 * ln2, -n * gamma * ln2]
    value = gamma * gamma
    for t in terms:
        try:
            value += math.exp(t)
        except OverflowError:
            raise ValidationError("cost ratio overflows at these parameters")
    return 2 * value


def gamma_ratio(n: int, s: int) -> tuple[float, float]:
    """(exact, approximate) ratio of permuted-pipeline cost to conventional
    oracle cost at the square-root iteration budget."""
    if not 1 <= s <= (1 << n):
        raise ValidationError(f"target count {s} out of range for n={n}")
    l = _l_of(s)
    # First term 2 n^3 s / (n^2 (s+1) sqrt(2^n / s)) in log space: it
    # underflows harmlessly for large n instead of overflowing.
    ln = math.log
    log_term = (ln(2) + 3 * ln(n) + ln(s) - 2 * ln(n) - ln(s + 1)
                - 0.5 * (n * ln(2) - ln(s)))
    try:
        synth_term = math.exp(log_term)
    except OverflowError:
        raise ValidationError("cost ratio overflows at these parameters")
    flat_term = float(Fraction(2 * (n * n + l * l * (1 << l)),
                               n * n * (s + 1)))
    exact = synth_term + flat_term
    return exact, gamma_approx(n, l / n)


def sweep_gamma(n_list, gamma_grid) -> list[tuple[int, float, float, bool]]:
    """Rows (n, gamma, ratio, dominates) over a grid of target densities."""
    rows = []
    for n in n_list:
        for gamma in gamma_grid:
            ratio = gamma_approx(n, gamma)
            rows.append((int(n), float(gamma), ratio, ratio <= 1.0))
    return rows


@dataclass(frozen=True)
class ComplexityReport:
    """Counted costs, paper bounds, and the crossover ratio for one set."""

    n: int
    s: int
    l: int
    k: int
    pi_mode: str
    counts: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    gamma: float = 0.0
    gamma_exact: float = 0.0
    gamma_approximate: float = 0.0

    @property
    def verdict(self) -> str:
        return "reduced" if self.gamma_exact < 1.0 else "conventional"

    def to_json(self) -> dict:
        return {
            "n": self.n, "s": self.s, "l": self.l, "k": self.k,
            "pi_mode": self.pi_mode,
            "counts": dict(self.counts), "bounds": dict(self.bounds),
            "gamma": self.gamma,
            "Gamma_exact": self.gamma_exact,
            "Gamma_approx": self.gamma_approximate,
            "verdict": self.verdict,
        }


def build_report(targets: TargetSet, k: int | None = None,
                 pi_mode: str = "paper",
                 model: CostModel = DEFAULT_MODEL) -> ComplexityReport:
    """Count every construction for one target set.

    Counting does not require the gray-code chains to be semantically
    valid, so paper mode is never rejected here.
    """
    from .engine import analytic_schedule, build_D, build_O_conv, build_P

    n, s = targets.n, targets.size
    _, l = canonical_targets(targets)
    if k is None:
        k = analytic_schedule(n, s).k_star
    prep = build_U(targets)
    prep_tilde = build_U_tilde(s, n)
    pi_circ, _ = build_pi_sigma(targets, pi_mode, validate=False)
    oracle = build_oracle(targets)
    oracle_conv = build_O_conv(targets)
    d_circ, p_circ = build_D(n), build_P(n)
    counts = {
        "U": count(prep, model),
        "U_tilde": count(prep_tilde, model),
        "pi_sigma": count(pi_circ, model),
        "oracle": count(oracle, model),
        "oracle_conv": count(oracle_conv, model),
        "D": count(d_circ, model),
        "P": count(p_circ, model),
    }
    counts["reduced_run"] = (2 * counts["pi_sigma"]
                             + k * (counts["U_tilde"] * 2 + counts["P"]
                                    + counts["D"]))
    counts["conventional_run"] = k * (counts["oracle_conv"] + counts["D"])
    bounds = {
        "U": bound_U(n, s),
        "U_tilde": bound_U_tilde(l),
        "pi_sigma": bound_pi(n, s),
        "oracle_conv": s * (2 * n + model(n - 1)),
        "reduced_run": total_reduced_cost(n, s, k),
    }
    exact, approx = gamma_ratio(n, s)
    return ComplexityReport(n=n, s=s, l=l, k=k, pi_mode=pi_mode,
                            counts=counts, bounds=bounds, gamma=l / n,
                            gamma_exact=exact, gamma_approximate=approx)

"""Target sets for the multi-target database search.

Labels are integers in [0, 2^n).  Bitstrings are MSB-first: qubit 0 holds
the most significant bit, so the string "100" is the label 4.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ValidationError


def bitstring(x: int, n: int) -> str:
    """MSB-first binary representation of a label."""
    return format(x, f"0{n}b")


def bit_at(x: int, q: int, n: int) -> int:
    """Value of qubit q (0 = most significant) in label x."""
    return (x >> (n - 1 - q)) & 1


def prefix_of(x: int, m: int, n: int) -> int:
    """The first m bits of x, read MSB-first, as an integer in [0, 2^m)."""
    return x >> (n - m)


@dataclass(frozen=True)
class TargetSet:
    """A nonempty set of search targets on n qubits."""

    n: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"qubit count must be positive, got {self.n}")
        labels = tuple(self.labels)
        if not labels:
            raise ValidationError("empty target set")
        if len(set(labels)) != len(labels):
            raise ValidationError("duplicate target labels")
        if sorted(labels) != list(labels):
            raise ValidationError("target labels must be strictly increasing")
        for x in labels:
            if not 0 <= x < (1 << self.n):
                raise ValidationError(
                    f"label {x} out of range for {self.n} qubits")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, n: int, labels) -> "TargetSet":
        """Build from integers or MSB-first bitstrings, in any order."""
        ints = []
        for x in labels:
            if isinstance(x, str):
                if len(x) != n or set(x) - {"0", "1"}:
                    raise ValidationError(f"bad bitstring {x!r} for n={n}")
                ints.append(int(x, 2))
            else:
                ints.append(int(x))
        if len(set(ints)) != len(ints):
            raise ValidationError("duplicate target labels")
        return cls(n, tuple(sorted(ints)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    def bitstrings(self) -> list[str]:
        return [bitstring(x, self.n) for x in self.labels]

    def complement(self) -> tuple[int, ...]:
        members = self.label_set
        return tuple(x for x in range(1 << self.n) if x not in members)


def parse_target_file(path) -> TargetSet:
    """Read a target set from disk.

    Two formats are accepted: JSON `{"n": int, "targets": [int...]}`, or
    plain text with a first line `n=<int>` followed by one bitstring of
    length n per line.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON target file: {exc}") from exc
        if "n" not in data or "targets" not in data:
            raise ValidationError('JSON target file needs "n" and "targets"')
        return TargetSet.from_labels(int(data["n"]), data["targets"])

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValidationError("target file must start with n=<int>")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise ValidationError(f"bad qubit count line {lines[0]!r}") from exc
    return TargetSet.from_labels(n, lines[1:])

"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed input: bad target sets, probabilities, gate data, ranges."""


class SimulatorLimitError(RuntimeError):
    """Requested state-vector size exceeds the configured qubit limit."""


class PermutationValidationError(RuntimeError):
    """Gray-code permutation circuit does not map the canonical targets
    onto the requested ones; carries the colliding basis states."""

    def __init__(self, message, colliding=()):
        super().__init__(message)
        self.colliding = tuple(colliding)

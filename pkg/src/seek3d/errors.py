"""Exception types shared across the package."""


class Seek3dError(Exception):
    """Base class for all package errors."""


class ConfigError(Seek3dError):
    """Invalid or unparseable scenario configuration."""


class FieldDomainError(Seek3dError):
    """Field evaluated at a point where it is undefined."""


class SimulationDiverged(Seek3dError):
    """Non-finite state encountered during integration."""

    def __init__(self, step_index: int, t: float):
        self.step_index = step_index
        self.t = t
        super().__init__(f"non-finite state after step {step_index} (t = {t:.6g})")


class SingularStateError(Seek3dError):
    """Averaged dynamics evaluated at a singular state (r = 0 or cos(alpha*) = 0)."""


class DegenerateParameterError(Seek3dError):
    """A closed-form analysis constant has a vanishing divisor."""

    def __init__(self, factor: str):
        self.factor = factor
        super().__init__(f"degenerate parameter set: {factor} vanishes")

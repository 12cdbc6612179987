"""
Exception hierarchy. Data errors subclass `ValueError` so plain `except ValueError` keeps working.
"""


class AerialCineError(Exception):
    """Root of all library errors"""


class BvhParseError(AerialCineError, ValueError):
    """Malformed or unsupported BVH input. `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class JointMappingError(AerialCineError, ValueError):
    """A required joint has no source, or a source joint is absent from the skeleton"""

    def __init__(self, missing: str, message: str | None = None):
        self.missing = missing
        super().__init__(message or f"no source joint mapped for required joint '{missing}'")


class ClipFormatError(AerialCineError, ValueError):
    """Motion clip content violates the clip invariants. `line` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class TimeRangeError(AerialCineError, ValueError):
    def __init__(self, t: float, t_min: float, t_max: float):
        self.t, self.t_min, self.t_max = t, t_min, t_max
        super().__init__(f"time {t:.6f}s outside clip range [{t_min:.6f}, {t_max:.6f}]s")


class DescriptorError(AerialCineError, ValueError):
    """Descriptor evaluated outside its domain (e.g. velocity descriptor with zero velocity)"""


class SimulationError(AerialCineError, ValueError):
    pass


class ConfigError(AerialCineError, ValueError):
    """All configuration problems found, reported together"""

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {e}" for e in self.errors))

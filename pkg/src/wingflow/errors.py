"""Exception types shared across the package."""


class WingflowError(Exception):
    """Base class for package errors."""


class DomainError(WingflowError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class GeometryError(WingflowError, ValueError):
    """Invalid or degenerate geometry (self-intersection, non-positive chord, ...)."""


class ConfigError(WingflowError, ValueError):
    """Inconsistent model or training configuration."""


class FormatError(WingflowError, ValueError):
    """Malformed on-disk artifact (sample file, checkpoint, manifest)."""


class TrainingDiverged(WingflowError, RuntimeError):
    """Loss became non-finite; training aborted with the last good parameters."""

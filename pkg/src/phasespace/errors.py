"""Exception types shared across the package.

The split mirrors how failures are reported at the command line:
configuration problems are distinct from numerical guards (support,
aliasing) that fire on structurally valid but unusable input.
"""


class ConfigError(ValueError):
    """Invalid user-facing configuration (grid sizes, weights, paths)."""


class ConventionError(ValueError):
    """Phase-space fields from incompatible conventions were mixed."""


class DegreeOverflowError(ValueError):
    """Polynomial symbol exceeds the supported total degree."""


class NumericalGuardError(RuntimeError):
    """A numerical validity guard fired; results would be corrupted."""


class SupportError(NumericalGuardError):
    """Data does not decay inside the grid, so implicit zero-padding
    or periodic extension would silently corrupt the result."""


class AliasingError(NumericalGuardError):
    """Spectral content too close to the Nyquist limit of the grid."""

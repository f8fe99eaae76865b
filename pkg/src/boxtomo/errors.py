"""Exception hierarchy shared across the package.

The CLI maps these onto its stable exit codes; library users catch them
directly.  Anything not covered here is a plain bug and propagates as the
underlying Python exception.
"""


class BoxtomoError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(BoxtomoError):
    """Malformed configuration, file header, or state argument (exit 2)."""


class DataModelMismatchError(BoxtomoError):
    """Dataset cannot be explained by the model space at all (exit 3).

    Raised, for example, when every record probability sits at the
    probability floor on the first iteration.
    """


class ArtifactMismatchError(BoxtomoError):
    """Two artifacts with incompatible mode counts or cutoffs (exit 4)."""


class PhysicalityError(BoxtomoError):
    """A tensor violates Hermiticity, positivity, or trace preservation (exit 5)."""


class InternalConsistencyError(BoxtomoError):
    """An internal algebraic invariant failed; indicates a numerical breakdown."""


class UndefinedPhaseError(BoxtomoError):
    """Phase estimation requested for a probe with zero amplitude."""

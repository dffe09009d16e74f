"""Exception types shared across the package."""


class NonPrimeError(ValueError):
    """A parameter that must be prime is composite."""


class TooLargeError(ValueError):
    """A construction would exceed the supported size bound."""


class InvalidPresentationError(ValueError):
    """Presentation parameters violate the consistency congruences."""


class InvalidParamsError(ValueError):
    """Family parameters outside the constructor's domain."""


class AbelianGroupError(ValueError):
    """The commuting graph is undefined: every element is central."""


class MalformedInputError(ValueError):
    """An ingested document does not match the expected schema."""


class LoopEdgeError(MalformedInputError):
    """An ingested edge list contains a loop."""


class NoConvergenceError(RuntimeError):
    """The eigensolver hit its sweep cap above the residual threshold."""


class AmbiguousClusterError(RuntimeError):
    """Numeric eigenvalue clustering and exact certification disagree."""


class OutOfDomainError(ValueError):
    """Closed-form evaluator called outside its stated parameter domain."""


class InvalidSizesError(ValueError):
    """Centralizer sizes incompatible with the given center size."""


class FormulaDiscrepancyError(RuntimeError):
    """A printed closed form disagrees with the spectrum-derived value."""

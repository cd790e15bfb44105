"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can report
it without parsing messages.
"""


class CoreCalcError(ValueError):
    code = "error"


class DimensionMismatch(CoreCalcError):
    code = "dimension_mismatch"


class PreconditionError(CoreCalcError):
    code = "precondition"


class EmptyInputError(PreconditionError):
    code = "empty_input"


class NotCoreSolidError(PreconditionError):
    code = "not_core_solid"


class NotAbsorbingError(PreconditionError):
    code = "not_absorbing"


class NotInSetError(PreconditionError):
    code = "point_not_in_set"


class NotMinimizerError(PreconditionError):
    code = "not_minimizer"


class ImproperFunctionError(CoreCalcError):
    code = "improper_function"


class UnboundedBelowError(CoreCalcError):
    """The marginal function takes the value minus infinity."""

    code = "unbounded_below"


class InputError(CoreCalcError):
    """Malformed problem file or descriptor."""

    code = "input"

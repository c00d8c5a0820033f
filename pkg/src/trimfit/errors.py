"""Exception hierarchy.

Numerical failures derive from :class:`TrimfitError`; the CLI maps them to
exit code 1. Input/parse problems derive from :class:`InputError` (exit 2).
"""


class TrimfitError(ValueError):
    pass


class EmptySampleError(TrimfitError):
    def __init__(self, msg="empty sample"):
        super().__init__(msg)


class ZeroScaleError(TrimfitError):
    def __init__(self, msg="zero scale"):
        super().__init__(msg)


class SingularDesignError(TrimfitError):
    def __init__(self, msg="singular design"):
        super().__init__(msg)


class SubsetTooSmallError(TrimfitError):
    def __init__(self, msg="subset too small"):
        super().__init__(msg)


class DegeneratePredictorsError(TrimfitError):
    def __init__(self, msg="degenerate predictors"):
        super().__init__(msg)


class NoAdmissibleCandidateError(TrimfitError):
    def __init__(self, msg="no admissible candidate"):
        super().__init__(msg)


class TooManySubsetsError(TrimfitError):
    def __init__(self, msg="too many subsets"):
        super().__init__(msg)


class InputError(ValueError):
    """Malformed user input: CSV files, manifests, flags."""

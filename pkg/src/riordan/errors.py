"""Exception hierarchy shared by every module.

The CLI reports these by class name, so names are part of the public surface.
"""


class RiordanError(Exception):
    """Base class for domain errors."""


class ZeroConstantTerm(RiordanError):
    pass


class CompositionOrderError(RiordanError):
    pass


class NotInvertibleForComposition(RiordanError):
    pass


class DegreeAboveTruncation(RiordanError):
    pass


class TruncationTooShort(RiordanError):
    pass


class NotRiordanPair(RiordanError):
    """Raised when (d, h) violates ord(d) = 0 or ord(h) = 1."""


class NotRiordanShape(RiordanError):
    """A finite matrix whose columns are not a geometric progression."""


class NotInGk(RiordanError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"pair is not a member of G_{k}")


class NotInG2(NotInGk):
    def __init__(self, message=None):
        super().__init__(2, message)


class NotInDerivedR(RiordanError):
    pass


class NoSolution(RiordanError):
    """The weighted Schroeder equation has no solution.

    ``index`` is the first i with d_i != 0 that blocks solvability.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"no solution: d_{index} != 0")


class RootOfUnityMultiplier(RiordanError):
    pass


class UnsupportedNegativeUnit(RootOfUnityMultiplier):
    pass


class UnitMultiplierError(RiordanError):
    pass


class ZeroLambda(RiordanError):
    pass


class SingularStep(RiordanError):
    """An affine probe found a zero slope, so the step has no unique solution."""


class WitnessVerificationError(RiordanError):
    pass

"""Exception hierarchy for nnrep."""


class NNRepError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(NNRepError, ValueError):
    pass


class Singular(NNRepError, ArithmeticError):
    pass


class RankDeficient(Singular):
    pass


class RegularityViolated(NNRepError):
    """The first-layer weights are not equal-norm and mutually orthogonal."""


class XStarNotFound(RegularityViolated):
    """No binary X* solves W X* = b."""


class DepthExceedsArity(NNRepError, ValueError):
    pass


class InputSpaceTooLarge(NNRepError, ValueError):
    pass


class EmptyAnchorSet(NNRepError, ValueError):
    pass


class SchemaError(NNRepError, ValueError):
    pass

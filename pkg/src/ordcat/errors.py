"""Exception hierarchy."""


class OrdcatError(ValueError):
    """Base class for every error raised by ordcat."""


class ShapeMismatch(OrdcatError):
    """Domains/codomains or matrix shapes do not line up."""


class NotMonotone(OrdcatError):
    pass


class NotAPreorder(OrdcatError):
    pass


class NotAnIdeal(OrdcatError):
    """A relation fails weakening-closure.

    ``witness`` is a triple: ``("left", x2, x, y)`` means ``x2 <= x``,
    ``x R y`` but not ``x2 R y``; ``("right", x, y, y2)`` means ``x R y``,
    ``y <= y2`` but not ``x R y2``.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class PreconditionError(OrdcatError):
    pass


class AxiomError(OrdcatError):
    """A quantale / V-category / V-functor / group axiom fails."""

"""Exception hierarchy shared by all modules.

The CLI maps these onto stable exit codes: validation failures are 1,
object mismatches are 2, unsupported constructions are 3.
"""


class PfnCoalgError(Exception):
    """Base class for all library errors."""


class ValidationError(PfnCoalgError):
    """An input value violates an invariant or precondition."""


class ParseError(ValidationError):
    """A document could not be parsed into a value."""


class TypeMismatch(ValidationError):
    """A term is not well-typed for the given functor and carrier."""


class InvariantViolation(ValidationError):
    """A derived value failed a representation invariant."""


class NotAPullback(ValidationError):
    """The given square is not a pullback of finite sets."""


class UnknownElement(ValidationError):
    """An element is not in the expected carrier."""


class UnknownBinding(ValidationError):
    """A workspace name does not resolve to a value."""


class UnknownSuite(ValidationError):
    """An unrecognized law-suite name."""


class NotMorphism(ValidationError):
    """A map fails the coalgebra morphism square."""


class NotTotal(ValidationError):
    """A map is not total on the required carrier."""


class NotFixing(ValidationError):
    """An endomorphism does not fix the given subcoalgebra pointwise."""


class NotPartialMono(ValidationError):
    """A partial morphism is not injective on its domain."""


class NotDivisible(ValidationError):
    """Division requested for a non-dividing pair; carries a witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainNotContained(ValidationError):
    """dom(divisor) is not contained in dom(dividend)."""


class ObjectMismatch(PfnCoalgError):
    """Two values live over incompatible objects."""


class FunctorMismatch(ObjectMismatch):
    """Values built over different endofunctors."""


class CodomainMismatch(ObjectMismatch):
    """Morphisms do not share the required codomain."""


class Unsupported(PfnCoalgError):
    """The requested construction is not available in this configuration."""


class NonDeterministicProduct(Unsupported):
    """Products are only formed for powerset-free functors."""


class EnumerationLimitExceeded(Unsupported):
    """An enumeration would exceed the configured limit.

    ``bound`` is a lower bound on the size that was about to be enumerated.
    """

    def __init__(self, message, bound):
        super().__init__(message)
        self.bound = bound

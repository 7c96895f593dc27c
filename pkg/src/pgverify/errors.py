"""Exception hierarchy shared by all modules."""


class PGVerifyError(Exception):
    """Base class for every error raised by pgverify."""


class InvalidTable(PGVerifyError):
    pass


class OrderCap(PGVerifyError):
    pass


class MixedOrder(PGVerifyError):
    """Raised when a prime-power order is required but not present."""


class NotRankOne(PGVerifyError):
    pass


class NotHomomorphism(PGVerifyError):
    pass


class GroupMismatch(PGVerifyError):
    pass


class LiftFailure(PGVerifyError):
    """The modular character table could not be lifted; indicates a bug."""


class NotCharacter(PGVerifyError):
    def __init__(self, index: int, value, message: str = ""):
        self.index = index
        self.value = value
        super().__init__(message or f"inner product with irreducible #{index} is {value}")


class NotClosed(PGVerifyError):
    pass


class NotOneDimensional(PGVerifyError):
    pass


class DegreeMismatch(PGVerifyError):
    pass


class NoSuchQ(PGVerifyError):
    """No normal subgroup isomorphic to C_p x C_p exists (G is cyclic)."""


class EvenPrime(PGVerifyError):
    pass


class HypothesisViolation(PGVerifyError):
    def __init__(self, hypothesis: str, message: str = ""):
        self.hypothesis = hypothesis
        super().__init__(message or f"hypothesis violated: {hypothesis}")


class Inapplicable(PGVerifyError):
    pass


class BadShape(PGVerifyError):
    pass


class DescriptorError(PGVerifyError):
    """Malformed group descriptor or group file."""

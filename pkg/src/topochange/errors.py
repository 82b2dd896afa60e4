"""Exception hierarchy shared by every module of the toolkit."""


class TopologyChangeError(Exception):
    """Base class for all errors raised by :mod:`topochange`."""


class NotAComplex(TopologyChangeError):
    """A sequence of boundary matrices fails ``d o d == 0`` or has bad shapes."""


class UnknownName(TopologyChangeError):
    pass


class NegativeParameter(TopologyChangeError):
    pass


class DimensionMismatch(TopologyChangeError):
    pass


class NonOrientableOperand(TopologyChangeError):
    pass


class EvenDimension(TopologyChangeError):
    """Semi-characteristics only exist for odd-dimensional manifolds."""


class NotSpin(TopologyChangeError):
    pass


class UnsupportedDimension(TopologyChangeError):
    pass


class EvenBoundaryDimension(TopologyChangeError):
    pass


class NoSolution(TopologyChangeError):
    """No nonnegative summand counts reach the target Euler characteristic.

    ``residue`` is the offending value of ``target - base`` modulo the gcd of
    the available deltas (0 when the failure is a sign obstruction instead).
    """

    def __init__(self, message: str, *, modulus: int = 0, residue: int = 0):
        super().__init__(message)
        self.modulus = modulus
        self.residue = residue


class NotStablyParallelizableBoundary(TopologyChangeError):
    pass


class OddDifference(TopologyChangeError):
    pass


class NotPositiveDefinite(TopologyChangeError):
    pass


class ZeroVector(TopologyChangeError):
    pass


class DegenerateBasis(TopologyChangeError):
    pass


class WrongSignature(TopologyChangeError):
    pass


class ManifoldSyntaxError(TopologyChangeError):
    """Malformed manifold expression; ``position`` is a 0-based column."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.position}^"


class UnknownAtom(TopologyChangeError):
    pass

"""Exception types shared across the package.

Every error raised on a violated precondition or an unreachable internal
state derives from CyclotomeError, so callers (and the CLI) can catch one
base class.
"""


class CyclotomeError(Exception):
    """Base class for all cyclotome errors."""


# field tower construction
class NotPrime(CyclotomeError):
    """The claimed characteristic is not a prime number."""


class ModulusNotIrreducible(CyclotomeError):
    """A supplied modulus polynomial factors over GF(p)."""


class GammaNotPrimitive(CyclotomeError):
    """The modulus is irreducible but x is not a primitive element."""


class TowerTooLarge(CyclotomeError):
    """The field order exceeds the configured table cap."""


# cyclotomy
class NotADivisor(CyclotomeError):
    """The requested class order L does not divide r - 1."""


class HypothesisNotMet(CyclotomeError):
    """A closed-form period variant was requested outside its hypotheses."""


class NoDiophantineSolution(CyclotomeError):
    """No (a, b) solves the quadratic form constraints; internal inconsistency."""


class BadL(CyclotomeError):
    """Class number requested for an L outside {prime, L = 3 mod 4, L != 3}."""


# code construction
class EDoesNotDivide(CyclotomeError):
    """The column count e does not divide r - 1."""


class AssumptionViolated(CyclotomeError):
    """A construction requires the validity conditions, and one fails."""


class DivisionNotExact(CyclotomeError):
    """Exact polynomial division left a remainder; internal inconsistency."""


class NonIntegralWeight(CyclotomeError):
    """A weight formula produced a non-integer; internal inconsistency."""


# weight distribution methods
class CapExceeded(CyclotomeError):
    """An enumeration would exceed the configured input cap."""


class UnsupportedCase(CyclotomeError):
    """No closed-form table covers this parameter case."""


class IndependenceFails(CyclotomeError):
    """The closed form for t < e needs independent rows, and a minor is singular."""

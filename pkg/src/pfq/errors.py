"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`PfqError`.
Errors that are a mathematical refusal (bad reduction, argument outside the
disc of convergence, ...) derive from :class:`MathematicalRefusal`; the CLI
maps those to exit code 1.
"""


class PfqError(Exception):
    pass


class InvalidArgument(PfqError, ValueError):
    pass


class MathematicalRefusal(PfqError):
    pass


class NotPIntegral(MathematicalRefusal, ValueError):
    pass


class ZeroHasNoClass(MathematicalRefusal, ValueError):
    pass


class UnsupportedParameters(InvalidArgument):
    pass


class InvalidDrift(MathematicalRefusal, ValueError):
    pass


class OutsideConvergenceDisc(MathematicalRefusal, ValueError):
    pass


class NeedsDomainShrink(MathematicalRefusal):
    pass


class NotGoodReduction(MathematicalRefusal):
    pass


class NoKernel(MathematicalRefusal):
    pass


class ResourceCap(MathematicalRefusal):
    """A configured size or iteration cap was exceeded."""


class OrbitCapExceeded(ResourceCap):
    pass


class IterationCapExceeded(ResourceCap):
    pass


class AssumptionViolated(PfqError, AssertionError):
    """An invariant that the theory guarantees did not hold at runtime."""

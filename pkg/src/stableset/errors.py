"""Exception types shared across the library."""


class ContractViolation(Exception):
    """A stated precondition or invariant was broken by a caller or an oracle."""


class NoSolutionError(ContractViolation):
    """An exhaustive scan found no solution that theory guarantees to exist.

    Seeing this means the input broke a contract: the declared palette was
    larger than the coloring actually respects, the oracle answered
    non-deterministically, or an instance invariant was violated.
    """


class InsufficientSlackError(ContractViolation):
    """The derandomization gate (potential of the all-star vector >= k) failed."""


class UntrustedSubsolverError(ContractViolation):
    """A sub-solver returned an edge that fails verification."""


class VertexCapExceeded(ValueError):
    """Desk-scale guardrail: the requested object exceeds the vertex cap."""

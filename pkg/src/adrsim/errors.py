"""Exception types shared across the simulator.

All of these derive from ValueError (or RuntimeError for contract
violations) so callers that do not care about the distinction can catch
the built-in base classes.
"""


class DomainError(ValueError):
    """An input is outside the physical domain of an operation."""


class DegenerateGeometryError(ValueError):
    """A geometric configuration makes the requested quantity undefined.

    Raised, for example, when two orbits have identical mean motion and
    the synodic period (and therefore any phasing wait) is unbounded.
    """


class ContractViolationError(RuntimeError):
    """An API contract was broken by the caller.

    Unlike a reward of -1, this is a programming error: for instance,
    stepping an episode that has already terminated.
    """

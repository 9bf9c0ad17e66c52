"""Exception types shared across the package."""


class HullProbError(Exception):
    """Base class for every error raised by hullprob."""


class DegenerateInstance(HullProbError):
    """An exact operation needs general position and the input violates it
    (tied y coordinates, collinear triples, shared vertical lines, ...)."""


class DegenerateSupport(DegenerateInstance):
    """The restricted support of a conditioned computation is degenerate."""


class CollinearCandidates(DegenerateInstance):
    """Two candidates of a radial sweep are collinear with the pivot."""


class EmptyOthers(HullProbError):
    """An extremal-triangle query received no third-point candidates."""


class NonIntegerAreas(HullProbError):
    """The exact area engine requires every triangle area to be a natural
    number; ``witness`` is one offending index triple."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetOverflow(HullProbError):
    """A threshold exceeded the configured budget bound of the exact engine."""


class TooLarge(HullProbError):
    """The enumeration oracle refuses instances beyond its size cap."""


class PropertyViolation(HullProbError):
    """A gadget constructor failed one of its construction-time checks;
    ``tag`` names the violated property."""

    def __init__(self, tag: str, message: str):
        super().__init__(f"{tag}: {message}")
        self.tag = tag


class NonIntegralCount(HullProbError):
    """A count-recovery quotient was not a natural number, which signals a
    defective probability engine (or a tampered gadget sidecar)."""


class RoundedDegeneracy(HullProbError):
    """Grid rounding produced an image that violates the exact engine's
    preconditions; ``witnesses`` carries the offending indices."""

    def __init__(self, message: str, witnesses=None):
        super().__init__(message)
        self.witnesses = witnesses


class InvalidEpsilon(HullProbError):
    """An approximation parameter is outside its admissible range."""


class InvalidParams(HullProbError):
    """A sampling-plan parameter is outside its admissible range."""


class AmbiguousComparison(HullProbError):
    """The certified square-root comparator hit its precision cap without
    separating the operands.  Practically unreachable for inputs in general
    position; raised rather than silently guessing a sign."""

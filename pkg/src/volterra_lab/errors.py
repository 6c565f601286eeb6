"""Exception types shared across the library."""


class VolterraLabError(Exception):
    """Base class for all library-specific errors."""


class NotOnSimplex(VolterraLabError):
    """Coordinates do not form a probability vector."""


class DimensionMismatch(VolterraLabError):
    """Operands live on simplices of different dimension."""


class MissingPair(VolterraLabError):
    """A tournament is missing the orientation of some pair."""


class DuplicatePair(VolterraLabError):
    """A pair orientation was given more than once (or both ways)."""


class SelfLoop(VolterraLabError):
    """An edge from a candidate to itself."""


class IndexOutOfRange(VolterraLabError):
    """Candidate index outside 1..n."""


class EmptyPart(VolterraLabError):
    """A partition part is empty."""


class IncompleteIntra(VolterraLabError):
    """Orientations within a part do not cover all its pairs."""


class BadPartition(VolterraLabError):
    """Parts are not disjoint or do not cover the ground set."""


class TooLarge(VolterraLabError):
    """Instance exceeds the configured exhaustive-enumeration cap."""


class UniverseMismatch(VolterraLabError):
    """Tree and tournament disagree on the candidate universe."""


class BudgetExceeded(VolterraLabError):
    """Requested computation exceeds the configured work budget."""


class ExactBlowup(VolterraLabError):
    """Exact iteration would exceed the step cap (denominators double in size per step)."""


class CapExceeded(VolterraLabError):
    """A bounded search ran out of steps."""


class UndecidedAtCap(VolterraLabError):
    """An interval predicate stayed undecided at the precision cap."""


class NotInM(VolterraLabError):
    """Point is closer to the barycenter than the check requires."""


class BadConfig(VolterraLabError):
    """Malformed or inconsistent run configuration."""

"""Exception types raised by the library."""


class CCILabError(Exception):
    """Base class for all library errors."""


# -- construction ------------------------------------------------------------

class CapacityExceeded(CCILabError):
    """Ground set larger than the configured bitmask capacity."""


class EmptyFamily(CCILabError):
    """A basis family must contain at least one basis."""


class ExchangeAxiomViolation(CCILabError):
    """The given family is not the basis family of a matroid."""


class NotPrimeField(CCILabError):
    """Matrix constructor supports GF(p) for p in {2, 3, 5, 7} only."""


# -- queries and minors ------------------------------------------------------

class RankZero(CCILabError):
    """Hyperplanes are undefined for rank-0 matroids."""


class EverythingDeleted(CCILabError):
    """A minor operation would empty the ground set."""


# -- envelopes ---------------------------------------------------------------

class NotACircuit(CCILabError):
    pass


class NotACocircuit(CCILabError):
    pass


class IntersectionTooSmall(CCILabError):
    """Envelope construction needs a circuit-cocircuit intersection of size >= 4."""


class SearchExhausted(CCILabError):
    """Envelope search failed; existence is guaranteed, so this is a bug."""


# -- partitions --------------------------------------------------------------

class BadJSize(CCILabError):
    """Partition parameter set must have exactly k-3 elements."""


class NotWithinY(CCILabError):
    """Partition parameter set must lie inside the envelope complement Y."""


class MismatchedEnvelope(CCILabError):
    """Operation combined partitions of different envelopes."""


class PreconditionViolated(CCILabError):
    """A structural-fact helper was called outside its preconditions."""


class InvariantBroken(CCILabError):
    """A theorem-guaranteed condition failed; signals an implementation bug."""


# -- reduction / catalog -----------------------------------------------------

class NoCertificate(CCILabError):
    """No reduction certificate found where one must exist."""


class SpecTooLarge(CCILabError):
    """Catalog spec would enumerate more matroids than the desk-scale bound."""

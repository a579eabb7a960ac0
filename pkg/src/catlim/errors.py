"""Exception hierarchy.

Structural problems (dangling ids, unparseable documents) are kept apart
from law failures so that a broken file never reads as a mathematical
counterexample.
"""


class CatlimError(Exception):
    """Base class for every error raised by the package."""


class StructuralError(CatlimError):
    """A table refers to an id that does not exist, or is otherwise malformed."""


class LawError(CatlimError):
    """A functor/naturality/category law does not hold where it was required."""


class CapacityError(CatlimError):
    """A configured size cap was exceeded."""


class BudgetExhausted(CapacityError):
    """A backtracking search ran out of its node budget before deciding."""


class UnsupportedTargetError(CatlimError):
    """The target category cannot supply the (co)limits an operation needs."""


class ResolutionError(CatlimError):
    """A name (concept, probe, functor, object) could not be resolved."""


class DocumentError(CatlimError):
    """A file is missing, is not valid JSON, or lacks a required field."""

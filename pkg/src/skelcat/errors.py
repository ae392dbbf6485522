"""Exception hierarchy shared by all modules."""
from __future__ import annotations

import os

DEFAULT_BUDGET = 2_000_000


class SkelcatError(Exception):
    """Base class for errors raised by this package."""


class CategoryError(SkelcatError):
    """Raised when category or functor data violates the category laws.

    ``problems`` lists every violation found, not just the first one.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(f"{len(self.problems)} problem(s):\n{lines}")


class NotComposableError(SkelcatError):
    pass


class BudgetExceeded(SkelcatError):
    pass


class PreconditionError(SkelcatError):
    pass


class InconsistencyError(SkelcatError):
    """A result that the theory rules out; indicates a bug, not bad input."""


def budget(default: int = DEFAULT_BUDGET) -> int:
    """Enumeration budget, overridable with ``SKELCAT_BUDGET``."""
    raw = os.environ.get("SKELCAT_BUDGET")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise SkelcatError(f"SKELCAT_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise SkelcatError("SKELCAT_BUDGET must be positive")
    return value


class FormatError(SkelcatError):
    """Input data has the wrong shape (not a category law violation)."""

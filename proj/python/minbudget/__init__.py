"""Exact minimum-budget scheduling of precedence-constrained jobs."""

from ._minbudget import *  # noqa: F401,F403
from ._minbudget import MinBudgetError, Instance  # noqa: F401

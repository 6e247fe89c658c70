"""Exact dynamics, reductions and oracles for reaction systems."""

from .core import (
    EntityError,
    EntitySet,
    EntityTable,
    Reaction,
    ReactionSystem,
    ReactionSystemError,
    WidthMismatchError,
    is_enabled,
    res,
    res_reaction,
)
from .dynamics import Bound, BudgetExceededError, Decision, SearchBudget

__version__ = "0.1.0"

__all__ = [
    "Bound",
    "BudgetExceededError",
    "Decision",
    "EntityError",
    "EntitySet",
    "EntityTable",
    "Reaction",
    "ReactionSystem",
    "ReactionSystemError",
    "SearchBudget",
    "WidthMismatchError",
    "is_enabled",
    "res",
    "res_reaction",
]

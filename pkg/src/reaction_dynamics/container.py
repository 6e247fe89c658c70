from __future__ import annotations

from typing import Optional

from .config import get_settings
from .dynamics import SearchBudget
from .logging import configure_logging, get_logger
from .workflows.analysis import AnalysisWorkflow

logger = get_logger(__name__)


class ServiceContainer:
    """Settings, logging and the workflow for one CLI invocation.

    Budget overrides apply to this container only; the cached settings are untouched.
    """

    def __init__(
        self,
        budget_states: Optional[int] = None,
        budget_steps: Optional[int] = None,
    ) -> None:
        settings = get_settings()
        configure_logging(settings.log_level, app_name=settings.app_name)
        self.budget = SearchBudget(
            max_states_enumerated=budget_states or settings.budget_states,
            max_steps=budget_steps or settings.budget_steps,
        )
        self.workflow = AnalysisWorkflow(budget=self.budget)
        logger.debug(
            "container.ready",
            budget_states=self.budget.max_states_enumerated,
            budget_steps=self.budget.max_steps,
        )

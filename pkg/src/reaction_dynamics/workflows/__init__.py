from .analysis import PROBLEMS, TARGETS, AnalysisWorkflow

__all__ = ["PROBLEMS", "TARGETS", "AnalysisWorkflow"]

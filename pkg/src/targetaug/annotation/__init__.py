"""Annotation session planning and the blind-annotation HTTP service."""

from .plan import AnnotationItem, PlanningError, SessionPlan, build_session_plan
from .server import JudgmentStore, create_app

__all__ = [
    "AnnotationItem",
    "JudgmentStore",
    "PlanningError",
    "SessionPlan",
    "build_session_plan",
    "create_app",
]

"""Teams of developers, the Instant Scrum loop, early stopping and final scoring."""

from . import loop, scoring, sprint_log, stopping, teams

__all__ = ["loop", "scoring", "sprint_log", "stopping", "teams"]

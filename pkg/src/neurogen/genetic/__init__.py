"""Genetic developer: operators, quality-weighted parent selection and the operator bandit."""

from . import bandit, developer, operators

__all__ = ["bandit", "developer", "operators"]

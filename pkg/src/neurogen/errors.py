from __future__ import annotations

__all__ = (
    "NeurogenError",
    "StepAfterTerminal",
    "EnvironmentMismatch",
    "CodebaseError",
    "ProgramUnknown",
    "EmptyCodebase",
    "MalformedRecord",
    "CodebaseIOError",
    "OperatorError",
    "EmptyParent",
    "ParentTooShort",
    "DeadlockedTeam",
    "TeamSpecError",
    "ConfigError",
)


class NeurogenError(Exception):
    """Base exception for all errors raised by neurogen."""


class StepAfterTerminal(NeurogenError):
    """An environment was stepped after it reached a terminal state."""


class EnvironmentMismatch(NeurogenError):
    """The language config does not fit the environment's observation layout."""


class CodebaseError(NeurogenError):
    pass


class ProgramUnknown(CodebaseError, KeyError):
    """The program has no reward samples in the codebase."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class EmptyCodebase(CodebaseError):
    """An operation needed at least one program in the codebase."""


class MalformedRecord(CodebaseError):
    """A codebase file line could not be parsed."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class CodebaseIOError(CodebaseError):
    """A codebase file could not be read or written."""


class OperatorError(NeurogenError):
    """A genetic operator's parents do not satisfy its precondition."""


class EmptyParent(OperatorError):
    pass


class ParentTooShort(OperatorError):
    pass


class DeadlockedTeam(NeurogenError):
    """A full round passed without any developer being able to propose a program."""


class TeamSpecError(NeurogenError, ValueError):
    """A developer spec string or team preset name could not be parsed."""


class ConfigError(NeurogenError):
    """Raised when an experiment config cannot be parsed."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path

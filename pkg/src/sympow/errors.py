"""Exception types and the resource guardrails shared by every module."""

from __future__ import annotations

import contextlib
import contextvars
import os
import time
from dataclasses import dataclass, replace


class SympowError(Exception):
    """Base class for all library errors."""


class RingMismatch(SympowError):
    pass


class ResourceLimit(SympowError):
    """A degree, term-count, variable-count or time guardrail was exceeded."""


class ParseError(SympowError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(where + message)


class OrderError(SympowError):
    """The monomial order does not support the requested operation."""


class NotSquarefree(SympowError):
    pass


class NotIntegral(SympowError):
    pass


class StabilizationFailure(SympowError):
    pass


class AxiomViolation(SympowError):
    """A graded sequence failed a_s * a_t <= a_(s+t)."""


class InexactSymbolicPower(SympowError):
    pass


@dataclass(frozen=True)
class Limits:
    max_vars: int = 10
    max_degree: int = 80
    max_terms: int = 200_000
    deadline: float | None = None  # time.monotonic() value

    def check_time(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimit("time limit exceeded")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


_limits: contextvars.ContextVar[Limits] = contextvars.ContextVar(
    "sympow_limits",
    default=Limits(
        max_degree=_env_int("SYMPOW_MAX_DEGREE", 80),
        max_terms=_env_int("SYMPOW_MAX_TERMS", 200_000),
    ),
)


def current_limits() -> Limits:
    return _limits.get()


@contextlib.contextmanager
def limits(timeout: float | None = None, **changes):
    """Temporarily tighten or relax guardrails for the current context.

    ``timeout`` is in seconds from now.
    """
    base = _limits.get()
    if timeout is not None:
        changes["deadline"] = time.monotonic() + timeout
    token = _limits.set(replace(base, **changes))
    try:
        yield _limits.get()
    finally:
        _limits.reset(token)

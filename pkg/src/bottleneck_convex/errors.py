"""Exceptions and enumeration budgets shared by the solvers."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass


class BudgetExceeded(RuntimeError):
    """An exhaustive routine was asked to enumerate more than its budget allows."""


class InfeasibleK(ValueError):
    """More sets were requested than there are points.

    The best possible answer (value 0) is still attached as ``solution``.
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class DuplicatePoint(ValueError):
    pass


class InvalidMatching(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    """Size limits for the exponential routines.

    ``BCS_BUDGET`` overrides fields, e.g. ``BCS_BUDGET="brute_n=14,fpt_r=10"``.
    """

    brute_n: int = 12
    brute_k: int = 4
    fpt_r: int = 12
    dnmts_n: int = 8
    angle_n: int = 6
    # solve_auto switches to the flow solver below this many interior points
    fpt_threshold: int = 8

    @classmethod
    def from_env(cls, environ=None) -> "Budget":
        environ = os.environ if environ is None else environ
        raw = environ.get("BCS_BUDGET", "").strip()
        if not raw:
            return cls()
        names = {f.name for f in dataclasses.fields(cls)}
        values = {}
        for item in raw.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise ValueError(f"bad BCS_BUDGET entry {item!r}")
            values[key] = int(val)
        return cls(**values)


def default_budget(budget: Budget | None) -> Budget:
    return Budget.from_env() if budget is None else budget

"""Simulation budgets with environment overrides.

Phase tables cost 2^n bits; full Pauli spectra cost 4^n words.  The
defaults keep casual calls from accidentally requesting terabytes; both
can be raised per call or via environment variables.
"""

from __future__ import annotations

import os

DEFAULT_SIM_BUDGET = 26  # phase tables, 2^n-bit
DEFAULT_SPECTRUM_BUDGET = 12  # full 4^n component tables
DEFAULT_THEORY_BUDGET = 64  # composition-sum evaluations, O(n^6) work

ENV_SIM = "HYPERMAGIC_SIM_BUDGET"
ENV_SPECTRUM = "HYPERMAGIC_SPECTRUM_BUDGET"
ENV_THEORY = "HYPERMAGIC_THEORY_BUDGET"


class BudgetError(RuntimeError):
    """Raised when a request exceeds the configured simulation budget."""


def _resolve(override: int | None, env: str, default: int) -> int:
    if override is not None:
        return override
    raw = os.environ.get(env)
    if raw is not None:
        return int(raw)
    return default


def sim_budget(override: int | None = None) -> int:
    return _resolve(override, ENV_SIM, DEFAULT_SIM_BUDGET)


def spectrum_budget(override: int | None = None) -> int:
    return _resolve(override, ENV_SPECTRUM, DEFAULT_SPECTRUM_BUDGET)


def theory_budget(override: int | None = None) -> int:
    return _resolve(override, ENV_THEORY, DEFAULT_THEORY_BUDGET)


def check(n: int, budget: int, what: str) -> None:
    if n > budget:
        raise BudgetError(
            f"{what} at n={n} exceeds the budget of {budget} qubits; "
            f"raise it via the budget argument or the environment override"
        )

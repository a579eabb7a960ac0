"""Size caps and search budgets shared by every module."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

BUDGET_ENV = "CATLIM_MAX_BUDGET"


@dataclass(frozen=True)
class Caps:
    max_objects: int = 32
    max_morphisms: int = 256
    max_functions: int = 10**6
    search_budget: int = 10**5

    def __post_init__(self):
        for name in ("max_objects", "max_morphisms", "max_functions", "search_budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_(self, **kw) -> "Caps":
        return replace(self, **kw)


def _from_env() -> Caps:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return Caps(search_budget=int(raw))
    return Caps()


DEFAULT_CAPS = _from_env()

# Categories of elements and other derived categories grow with the presheaf,
# not with the user's input, so they get a wider (still hard) bound.
DERIVED_CAPS = Caps(max_objects=1024, max_morphisms=16384,
                    search_budget=DEFAULT_CAPS.search_budget)


def search_budget(caps: Caps | None = None) -> int:
    """Budget honouring the environment override at call time."""
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return int(raw)
    return (caps or DEFAULT_CAPS).search_budget

"""A yes/no answer that carries its evidence."""

from __future__ import annotations

from typing import Any, NamedTuple


class Verdict(NamedTuple):
    """``holds`` plus a witness (counterexample when false, certificate when true)."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return bool(self.holds)

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    """Outcome of one predicate. ``holds`` is None when the check does not apply."""

    holds: bool | None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return bool(self.holds)


def _plain(obj: Any) -> Any:
    if isinstance(obj, (tuple, list)):
        return [_plain(o) for o in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


@dataclass
class Report:
    """Named checks, with ``verdict`` naming the headline check (if any)."""

    checks: dict[str, Check] = field(default_factory=dict)
    verdict: str | None = None

    def __getitem__(self, name: str) -> Check:
        return self.checks[name]

    def __contains__(self, name: str) -> bool:
        return name in self.checks

    def __bool__(self) -> bool:
        if self.verdict is None:
            raise TypeError("report has no headline verdict")
        return bool(self.checks[self.verdict])

    @property
    def holds(self) -> bool | None:
        return self.checks[self.verdict].holds if self.verdict else None

    @property
    def witness(self) -> tuple | None:
        return self.checks[self.verdict].witness if self.verdict else None

    def to_json(self) -> dict:
        """Flat object: ``name -> bool|null`` plus ``name_witness -> list`` on failures."""
        out: dict[str, Any] = {}
        for name in sorted(self.checks):
            chk = self.checks[name]
            out[name] = chk.holds
            if chk.witness is not None:
                out[f"{name}_witness"] = _plain(chk.witness)
        return out

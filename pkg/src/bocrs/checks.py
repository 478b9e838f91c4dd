from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    """Outcome of one executable identity check."""

    name: str
    ok: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok}
        if self.witness:
            out["witness"] = self.witness
        return out

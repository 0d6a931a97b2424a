"""Machine-readable verdicts shared by the verifiers."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

MAX_WITNESSES = 20


@dataclass
class Report:
    check: str
    passed: bool
    code: str = ""
    params: dict[str, Any] = field(default_factory=dict)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    histogram: dict[int, int] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def add_witness(self, **witness: Any) -> None:
        self.passed = False
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append(witness)

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["pass"] = out.pop("passed")
        out["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        return _plain(out)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _plain(obj: Any) -> Any:
    """Convert tuples, sets and numpy scalars into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return obj

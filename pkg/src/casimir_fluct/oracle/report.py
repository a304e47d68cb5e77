"""Oracle result record."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field


@dataclass
class OracleReport:
    quantity: str
    value: float
    closed_form: float
    unit: str
    natural_unit: float
    uncertainty: float = 0.0
    convergence_trace: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    relative_error: float = field(init=False)

    def __post_init__(self):
        if self.closed_form != 0:
            self.relative_error = abs(self.value - self.closed_form) / abs(self.closed_form)
        else:
            self.relative_error = abs(self.value) / self.natural_unit

    @property
    def value_natural(self):
        return self.value / self.natural_unit

    @property
    def closed_form_natural(self):
        return self.closed_form / self.natural_unit

    def passed(self, tolerance):
        return math.isfinite(self.relative_error) and self.relative_error <= tolerance

    def to_dict(self):
        out = asdict(self)
        out["value_natural"] = self.value_natural
        out["closed_form_natural"] = self.closed_form_natural
        return out

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, allow_nan=False, **kwargs)

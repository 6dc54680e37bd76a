"""Verdict objects shared by every check: a boolean with a failing-component witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class Witness:
    """The first component that broke a condition.

    ``component`` names the index tuple by variable names, ``direction`` the
    normal variable of a derivative condition (if any) and ``value`` the
    offending Scalar in printed form.
    """

    condition: str
    component: Tuple[str, ...] = ()
    direction: Optional[str] = None
    value: str = ""

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "component": list(self.component),
            "direction": self.direction,
            "value": self.value,
        }

    def __str__(self) -> str:
        comp = f"[{','.join(self.component)}]" if self.component else "scalar"
        where = f" d/d{self.direction}" if self.direction else ""
        return f"{self.condition}: {comp}{where} = {self.value}"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[Witness] = None
    details: dict = field(default_factory=dict, compare=False)
    all_witnesses: tuple = field(default=(), compare=False)

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        out = {"ok": self.ok, "witness": self.witness.to_dict() if self.witness else None}
        if self.all_witnesses:
            out["all_witnesses"] = [w.to_dict() for w in self.all_witnesses]
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, Verdict):
        return v.to_dict()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return str(v)


def passed(**details) -> Verdict:
    return Verdict(True, None, details)


def combine(*named: Tuple[str, Verdict], **details) -> Verdict:
    """All sub-verdicts must pass; the first failing witness is reported."""
    witnesses = []
    for name, v in named:
        details[name] = v.ok
        witnesses.extend(v.all_witnesses or ((v.witness,) if v.witness else ()))
    ok = all(v.ok for _, v in named)
    first = next((v.witness for _, v in named if not v.ok), None)
    return Verdict(ok, first, details, tuple(witnesses))


def zero_verdict(tensor, condition: str, direction: str = None) -> Verdict:
    """Pass iff ``tensor`` (AltTensor, SymmetricTwoTensor or Scalar) is zero."""
    from .scalar import Scalar

    if isinstance(tensor, Scalar):
        if tensor.is_zero():
            return passed()
        w = Witness(condition, (), direction, str(tensor))
        return Verdict(False, w, {}, (w,))
    items = tensor.items()
    if not items:
        return passed()
    names = tensor.chart.variables
    ws = tuple(
        Witness(condition, tuple(names[i] for i in idx), direction, str(v)) for idx, v in items
    )
    return Verdict(False, ws[0], {}, ws)

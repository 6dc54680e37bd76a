"""Coordinate charts: ordered variable lists with per-variable Laurent flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import ChartMismatch, UnknownVariable, VariableClash

VarSpec = Union[str, tuple]


def _is_identifier(name: str) -> bool:
    return name.isidentifier() and name != "exp"


@dataclass(frozen=True)
class Chart:
    """An ordered list of coordinate names.

    The position of a variable in ``variables`` is its index in every tensor
    component tuple on this chart.  ``laurent[i]`` allows negative powers of
    variable ``i`` in polynomial coefficients.
    """

    name: str
    variables: tuple
    laurent: tuple
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.variables) != len(self.laurent):
            raise ValueError("variables and laurent flags differ in length")
        index = {}
        for i, v in enumerate(self.variables):
            if not _is_identifier(v):
                raise ValueError(f"invalid variable name {v!r}")
            if v in index:
                raise VariableClash(f"duplicate variable {v!r} in chart {self.name!r}")
            index[v] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def make(cls, name: str, variables: Iterable[VarSpec]) -> "Chart":
        """Build a chart from names or ``(name, laurent)`` pairs."""
        names, flags = [], []
        for v in variables:
            if isinstance(v, tuple):
                names.append(v[0])
                flags.append(bool(v[1]))
            else:
                names.append(v)
                flags.append(False)
        return cls(name, tuple(names), tuple(flags))

    @classmethod
    def point(cls) -> "Chart":
        """The zero-dimensional chart; exact evaluations live here."""
        return _POINT

    @property
    def dim(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r} in chart {self.name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def is_laurent(self, var: Union[int, str]) -> bool:
        i = self.index(var) if isinstance(var, str) else var
        return self.laurent[i]

    def var(self, name: str):
        from .scalar import Scalar

        return Scalar.variable(self, name)

    def vars(self) -> list:
        from .scalar import Scalar

        return [Scalar.variable(self, v) for v in self.variables]

    def extend(self, *names: VarSpec, name: str = None) -> "Chart":
        """Append new variables; clashes raise :class:`VariableClash`."""
        extra = Chart.make("_", names)
        for v in extra.variables:
            if v in self:
                raise VariableClash(f"variable {v!r} already in chart {self.name!r}")
        return Chart(
            name or f"{self.name}x{''.join(extra.variables)}",
            self.variables + extra.variables,
            self.laurent + extra.laurent,
        )

    def drop(self, names: Sequence[str], name: str = None) -> "Chart":
        """Sub-chart without ``names`` (the chart of a coordinate locus)."""
        for v in names:
            self.index(v)
        drop = set(names)
        kept = [(v, f) for v, f in zip(self.variables, self.laurent) if v not in drop]
        return Chart(
            name or f"{self.name}|{','.join(names)}",
            tuple(v for v, _ in kept),
            tuple(f for _, f in kept),
        )

    def check_same(self, other: "Chart") -> None:
        if self is not other and self != other:
            raise ChartMismatch(f"chart {self.name!r} differs from chart {other.name!r}")

    def spec(self) -> str:
        return ", ".join(
            f"{v}(laurent)" if f else v for v, f in zip(self.variables, self.laurent)
        )

    def __str__(self) -> str:
        return f"chart {self.name}: {self.spec()}"


_POINT = Chart("pt", (), ())

"""Sparse tensor containers: multivectors, differential forms, symmetric 2-tensors."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Tuple

from .chart import Chart
from .errors import ChartMismatch, DegreeMismatch
from .scalar import Scalar, as_scalar

Index = Tuple[int, ...]


def sort_sign(seq: Iterable[int]):
    """Return ``(sign, sorted_tuple)``; sign is 0 when an index repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(seq))


def merge_sign(left: Index, right: Index):
    """Sign and sorted union of the concatenation ``left + right`` of sorted tuples."""
    if not left:
        return 1, right
    if not right:
        return 1, left
    inv = 0
    j = 0
    for a in left:
        # count entries of right smaller than a
        while j < len(right) and right[j] < a:
            j += 1
        if j < len(right) and right[j] == a:
            return 0, None
        inv += j
    return (-1 if inv & 1 else 1), tuple(sorted(left + right))


def accumulate(acc: dict, key, value: Scalar) -> None:
    cur = acc.get(key)
    acc[key] = value if cur is None else cur + value


def prune(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v}


class AltTensor:
    """Antisymmetric tensor of fixed degree stored on sorted index tuples."""

    __slots__ = ("chart", "degree", "_c", "_hash")
    kind = "alt"

    def __init__(self, chart: Chart, degree: int, components: Mapping = None):
        if degree < 0:
            raise DegreeMismatch("negative degree")
        self.chart = chart
        self.degree = degree
        self._hash = None
        comps: dict = {}
        seen = set()
        for idx, value in (components or {}).items():
            if isinstance(idx, (str, int)):
                idx = (idx,)
            ints = tuple(chart.index(i) if isinstance(i, str) else i for i in idx)
            if len(ints) != degree:
                raise DegreeMismatch(
                    f"component {idx} has {len(ints)} indices, expected {degree}"
                )
            sign, key = sort_sign(ints)
            if sign == 0:
                raise ValueError(f"repeated index in component {idx}")
            if key in seen:
                raise ValueError(f"component {idx} given twice (up to order)")
            seen.add(key)
            s = as_scalar(value, chart)
            if s:
                comps[key] = s if sign > 0 else -s
        self._c = comps

    @classmethod
    def _raw(cls, chart: Chart, degree: int, comps: dict):
        t = object.__new__(cls)
        t.chart = chart
        t.degree = degree
        t._c = comps
        t._hash = None
        return t

    @classmethod
    def zero(cls, chart: Chart, degree: int):
        return cls._raw(chart, degree, {})

    @classmethod
    def from_scalar(cls, s: Scalar):
        return cls._raw(s.chart, 0, {(): s} if s else {})

    @classmethod
    def basis(cls, chart: Chart, *names: str, coeff=1):
        """Elementary tensor ``coeff * e_{n1} ^ ... ^ e_{nk}`` (names may be unsorted)."""
        return cls(chart, len(names), {tuple(names): coeff})

    # access

    def __getitem__(self, idx) -> Scalar:
        if isinstance(idx, (str, int)):
            idx = (idx,)
        ints = tuple(self.chart.index(i) if isinstance(i, str) else i for i in idx)
        if len(ints) != self.degree:
            raise DegreeMismatch(f"expected {self.degree} indices, got {len(ints)}")
        sign, key = sort_sign(ints)
        if sign == 0:
            return Scalar.zero(self.chart)
        v = self._c.get(key)
        if v is None:
            return Scalar.zero(self.chart)
        return v if sign > 0 else -v

    def items(self):
        return sorted(self._c.items())

    def components(self) -> dict:
        return dict(self._c)

    def support(self):
        return sorted(self._c)

    def scalar(self) -> Scalar:
        """The single component of a degree-0 tensor."""
        if self.degree != 0:
            raise DegreeMismatch(f"degree {self.degree} tensor is not a scalar")
        return self._c.get((), Scalar.zero(self.chart))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def map(self, fn, chart: Chart = None):
        """Apply ``fn`` to every component (optionally moving to another chart)."""
        chart = chart or self.chart
        out = {}
        for k, v in self._c.items():
            w = fn(v)
            if w:
                out[k] = w
        return type(self)._raw(chart, self.degree, out)

    def reindex(self, chart: Chart, positions) -> "AltTensor":
        """Move to ``chart`` sending index ``i`` to ``positions[i]``; scalars are transferred."""
        out = {}
        for k, v in self._c.items():
            sign, key = sort_sign(positions[i] for i in k)
            w = v.transfer(chart)
            out[key] = w if sign > 0 else -w
        return type(self)._raw(chart, self.degree, out)

    def transfer(self, chart: Chart) -> "AltTensor":
        """Re-express on another chart containing every index variable (by name)."""
        if chart == self.chart:
            return self
        positions = {i: chart.index(v) for i, v in enumerate(self.chart.variables)
                     if v in chart}
        return self.reindex(chart, positions)

    # arithmetic

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        self.chart.check_same(other.chart)
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self._c)
        for k, v in other._c.items():
            accumulate(out, k, v)
        return type(self)._raw(self.chart, self.degree, prune(out))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)._raw(self.chart, self.degree, {k: -v for k, v in self._c.items()})

    def __mul__(self, factor):
        if isinstance(factor, AltTensor):
            return NotImplemented
        f = as_scalar(factor, self.chart)
        return type(self)._raw(self.chart, self.degree, prune({k: f * v for k, v in self._c.items()}))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AltTensor):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.chart == other.chart
            and self.degree == other.degree
            and self._c == other._c
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.chart, self.degree, frozenset(self._c.items())))
        return self._hash

    # printing

    def lines(self) -> list:
        names = self.chart.variables
        return [f"[{','.join(names[i] for i in k)}] = {v}" for k, v in self.items()]

    def __str__(self) -> str:
        body = self.lines()
        return "\n".join(body) if body else "0"

    def __repr__(self) -> str:
        comps = "; ".join(self.lines())
        return f"{type(self).__name__}(degree={self.degree}, chart={self.chart.name!r}, {{{comps}}})"


class Multivector(AltTensor):
    """k-vector field; ``Multivector.basis(M, 'x', 'y')`` is d/dx ^ d/dy."""

    __slots__ = ()
    kind = "vector"


class DifferentialForm(AltTensor):
    """Differential k-form; ``DifferentialForm.basis(M, 'x')`` is dx."""

    __slots__ = ()
    kind = "form"


class SymmetricTwoTensor:
    """Symmetric covariant 2-tensor with matrix entries ``g_ij`` stored for i <= j."""

    __slots__ = ("chart", "_c")
    degree = 2

    def __init__(self, chart: Chart, components: Mapping = None):
        self.chart = chart
        comps = {}
        for idx, value in (components or {}).items():
            if len(idx) != 2:
                raise DegreeMismatch("symmetric 2-tensor components need two indices")
            i, j = (chart.index(x) if isinstance(x, str) else x for x in idx)
            key = (min(i, j), max(i, j))
            if key in comps:
                raise ValueError(f"component {idx} given twice (up to order)")
            s = as_scalar(value, chart)
            if s:
                comps[key] = s
        self._c = comps

    @classmethod
    def _raw(cls, chart, comps):
        t = object.__new__(cls)
        t.chart = chart
        t._c = comps
        return t

    def __getitem__(self, idx) -> Scalar:
        i, j = (self.chart.index(x) if isinstance(x, str) else x for x in idx)
        return self._c.get((min(i, j), max(i, j)), Scalar.zero(self.chart))

    def items(self):
        return sorted(self._c.items())

    def components(self) -> dict:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def map(self, fn, chart: Chart = None):
        chart = chart or self.chart
        return SymmetricTwoTensor._raw(chart, prune({k: fn(v) for k, v in self._c.items()}))

    def __add__(self, other):
        self.chart.check_same(other.chart)
        out = dict(self._c)
        for k, v in other._c.items():
            accumulate(out, k, v)
        return SymmetricTwoTensor._raw(self.chart, prune(out))

    def __neg__(self):
        return SymmetricTwoTensor._raw(self.chart, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        f = as_scalar(factor, self.chart)
        return SymmetricTwoTensor._raw(self.chart, prune({k: f * v for k, v in self._c.items()}))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymmetricTwoTensor):
            return NotImplemented
        return self.chart == other.chart and self._c == other._c

    def __hash__(self):
        return hash(("sym", self.chart, frozenset(self._c.items())))

    def lines(self) -> list:
        names = self.chart.variables
        return [f"[{names[i]},{names[j]}] = {v}" for (i, j), v in self.items()]

    def __str__(self) -> str:
        body = self.lines()
        return "\n".join(body) if body else "0"

    def __repr__(self) -> str:
        return f"SymmetricTwoTensor(chart={self.chart.name!r}, {{{'; '.join(self.lines())}}})"


def as_alt(value, kind=Multivector, chart: Chart = None) -> AltTensor:
    """Promote a Scalar (or number with ``chart``) to a degree-0 tensor of ``kind``."""
    if isinstance(value, AltTensor):
        return value
    if isinstance(value, Scalar):
        return kind.from_scalar(value)
    if chart is None:
        raise TypeError(f"cannot interpret {value!r} as a tensor")
    return kind.from_scalar(Scalar.const(chart, Fraction(value)))


def check_same_chart(*tensors) -> Chart:
    chart = tensors[0].chart
    for t in tensors[1:]:
        if t.chart != chart:
            raise ChartMismatch(f"chart {chart.name!r} differs from chart {t.chart.name!r}")
    return chart

"""Exact exponential-Laurent polynomials over the rationals.

A :class:`Scalar` is a finite sum ``sum_i f_i * exp(q_i)`` where every ``f_i`` is
a Laurent polynomial (negative exponents only on Laurent-flagged variables) and
every ``q_i`` is an ordinary polynomial, all with rational coefficients.  Terms
with distinct canonical exponents ``q_i`` are independent, so equality and the
zero test are decidable by comparing term maps.

Internal layout: ``_terms`` maps an exponent key to a coefficient polynomial.
A polynomial is a dict ``{monomial: coeff}`` with monomials stored as dense
exponent tuples; an exponent key is the sorted item tuple of such a dict
(``()`` is ``exp(0)``).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Mapping, Tuple, Union

from .chart import Chart
from .errors import (
    ChartMismatch,
    LaurentZeroSubstitution,
    NegativePower,
    NonPolynomialExponent,
    UnknownVariable,
)

Mono = Tuple[int, ...]
Poly = Dict[Mono, Rational]
QKey = Tuple[Tuple[Mono, Rational], ...]
Number = Union[int, Fraction]


def _num(c) -> Number:
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _clean(p: Poly) -> Poly:
    return {m: c for m, c in p.items() if c}


def _padd_into(acc: Poly, p: Poly, scale=1) -> None:
    for m, c in p.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _pmul(a: Poly, b: Poly) -> Poly:
    if len(a) == 1 and len(b) == 1:
        (ma, ca), = a.items()
        (mb, cb), = b.items()
        return {tuple(x + y for x, y in zip(ma, mb)): ca * cb}
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return _clean(out)


def _pderiv(p: Poly, i: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        e = m[i]
        if e:
            mm = m[:i] + (e - 1,) + m[i + 1:]
            out[mm] = out.get(mm, 0) + c * e
    return _clean(out)


def _key(p: Poly) -> QKey:
    return tuple(sorted((m, c) for m, c in p.items() if c))


def _qadd(k1: QKey, k2: QKey) -> QKey:
    if not k1:
        return k2
    if not k2:
        return k1
    acc = dict(k1)
    _padd_into(acc, dict(k2))
    return _key(acc)


def _mono_sort_key(m: Mono):
    return (-sum(m), tuple(-e for e in m))


class Scalar:
    """Immutable element of the exact coefficient ring on a chart."""

    __slots__ = ("chart", "_terms", "_hash")

    def __init__(self, chart: Chart, terms: Mapping[QKey, Poly] = None):
        self.chart = chart
        clean = {}
        for q, f in (terms or {}).items():
            f = _clean(f)
            if f:
                clean[q] = f
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart: Chart, terms: dict) -> "Scalar":
        s = object.__new__(cls)
        s.chart = chart
        s._terms = terms
        s._hash = None
        return s

    # constructors

    @classmethod
    def zero(cls, chart: Chart) -> "Scalar":
        return cls._raw(chart, {})

    @classmethod
    def const(cls, chart: Chart, c) -> "Scalar":
        c = _num(c)
        if not c:
            return cls.zero(chart)
        return cls._raw(chart, {(): {(0,) * chart.dim: c}})

    @classmethod
    def one(cls, chart: Chart) -> "Scalar":
        return cls.const(chart, 1)

    @classmethod
    def variable(cls, chart: Chart, name: str) -> "Scalar":
        i = chart.index(name)
        m = [0] * chart.dim
        m[i] = 1
        return cls._raw(chart, {(): {tuple(m): 1}})

    @classmethod
    def monomial(cls, chart: Chart, exponents: Mapping[str, int], coeff=1) -> "Scalar":
        m = [0] * chart.dim
        for name, e in exponents.items():
            i = chart.index(name)
            if e < 0 and not chart.laurent[i]:
                raise NegativePower(f"negative power of non-Laurent variable {name!r}")
            m[i] = e
        return cls(chart, {(): {tuple(m): _num(coeff)}})

    @classmethod
    def exp(cls, q: "Scalar") -> "Scalar":
        """``exp(q)`` for a polynomial ``q``."""
        poly = q.polynomial()
        if poly is None:
            raise NonPolynomialExponent(f"exp argument {q} is not a polynomial")
        return cls._raw(q.chart, {_key(poly): {(0,) * q.chart.dim: 1}})

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.chart is not self.chart and other.chart != self.chart:
                raise ChartMismatch(
                    f"chart {self.chart.name!r} differs from chart {other.chart.name!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.const(self.chart, other)
        return NotImplemented

    # inspection

    def terms(self):
        """Iterate ``(exponent_poly, coefficient_poly)`` pairs as dicts."""
        for q, f in self._terms.items():
            yield dict(q), dict(f)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def polynomial(self) -> Poly:
        """The coefficient dict if this is an ordinary polynomial, else ``None``."""
        if not self._terms:
            return {}
        if len(self._terms) != 1 or () not in self._terms:
            return None
        f = self._terms[()]
        if any(e < 0 for m in f for e in m):
            return None
        return dict(f)

    def constant_value(self):
        """The rational value if this Scalar is a constant, else ``None``."""
        if not self._terms:
            return 0
        if len(self._terms) != 1 or () not in self._terms:
            return None
        f = self._terms[()]
        zero = (0,) * self.chart.dim
        if len(f) == 1 and zero in f:
            return f[zero]
        return None

    def is_unit(self) -> bool:
        if len(self._terms) != 1:
            return False
        (f,) = self._terms.values()
        if len(f) != 1:
            return False
        (m,) = f.keys()
        return all(e == 0 or self.chart.laurent[i] for i, e in enumerate(m))

    def variables_used(self) -> set:
        """Indices of variables this Scalar depends on."""
        used = set()
        for q, f in self._terms.items():
            for m in f:
                used.update(i for i, e in enumerate(m) if e)
            for m, _ in q:
                used.update(i for i, e in enumerate(m) if e)
        return used

    def depends_on(self, name: str) -> bool:
        return self.chart.index(name) in self.variables_used()

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = {q: dict(f) for q, f in self._terms.items()}
        for q, f in other._terms.items():
            acc = terms.get(q)
            if acc is None:
                terms[q] = dict(f)
            else:
                _padd_into(acc, f)
                if not acc:
                    del terms[q]
        return Scalar._raw(self.chart, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(
            self.chart, {q: {m: -c for m, c in f.items()} for q, f in self._terms.items()}
        )

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _num(other)
            if not c:
                return Scalar.zero(self.chart)
            if c == 1:
                return self
            return Scalar._raw(
                self.chart,
                {q: {m: v * c for m, v in f.items()} for q, f in self._terms.items()},
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Scalar.zero(self.chart)
        terms: dict = {}
        for q1, f1 in self._terms.items():
            for q2, f2 in other._terms.items():
                q = _qadd(q1, q2)
                prod = _pmul(f1, f2)
                acc = terms.get(q)
                if acc is None:
                    terms[q] = prod
                else:
                    _padd_into(acc, prod)
        return Scalar._raw(self.chart, {q: f for q, f in terms.items() if f})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a Scalar by zero")
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> "Scalar":
        """Multiplicative inverse; only units (c * Laurent monomial * exp(q)) qualify."""
        if not self.is_unit():
            raise NegativePower(f"{self} is not a unit of the scalar ring")
        ((q, f),) = self._terms.items()
        ((m, c),) = f.items()
        inv_q = tuple((mm, -cc) for mm, cc in q)
        return Scalar._raw(self.chart, {_key(dict(inv_q)): {tuple(-e for e in m): _num(Fraction(1) / c)}})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("Scalar exponents must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.one(self.chart)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # equality

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.constant_value() == other
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.chart == other.chart and self._terms == other._terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.chart, frozenset((q, frozenset(f.items())) for q, f in self._terms.items()))
            )
        return self._hash

    # calculus

    def diff(self, var: Union[str, int]) -> "Scalar":
        """Partial derivative; ``d(f exp q) = (df + f dq) exp q``."""
        i = self.chart.index(var) if isinstance(var, str) else var
        terms: dict = {}
        for q, f in self._terms.items():
            acc = _pderiv(f, i)
            if q:
                dq = _pderiv(dict(q), i)
                if dq:
                    _padd_into(acc, _pmul(f, dq))
            if acc:
                terms[q] = acc
        return Scalar._raw(self.chart, terms)

    def substitute(self, bindings: Mapping[str, object], target: Chart = None) -> "Scalar":
        """Compose with ``var -> Scalar`` bindings, landing on ``target``.

        Unbound variables map to the variable of the same name on ``target``.
        Negative powers need a unit image; exponents must stay polynomial.
        """
        target = target or self.chart
        for name in bindings:
            self.chart.index(name)
        images = []
        for name in self.chart.variables:
            if name in bindings:
                img = bindings[name]
                if isinstance(img, Scalar):
                    if img.chart != target:
                        raise ChartMismatch(
                            f"binding for {name!r} lives on chart {img.chart.name!r}, "
                            f"expected {target.name!r}"
                        )
                else:
                    img = Scalar.const(target, img)
            else:
                img = Scalar.variable(target, name)
            images.append(img)
        cache: dict = {}

        def power(i: int, e: int) -> Scalar:
            key = (i, e)
            hit = cache.get(key)
            if hit is None:
                if e < 0:
                    if not images[i].is_unit():
                        raise LaurentZeroSubstitution(
                            f"{self.chart.variables[i]} -> {images[i]} is not invertible "
                            f"but a negative power occurs"
                        )
                    hit = images[i].inverse() ** (-e)
                else:
                    hit = images[i] ** e
                cache[key] = hit
            return hit

        def image(poly) -> Scalar:
            acc = Scalar.zero(target)
            for m, c in poly:
                t = Scalar.const(target, c)
                for i, e in enumerate(m):
                    if e:
                        t = t * power(i, e)
                acc = acc + t
            return acc

        result = Scalar.zero(target)
        for q, f in self._terms.items():
            part = image(f.items())
            if q:
                qi = image(q)
                if qi.polynomial() is None:
                    raise NonPolynomialExponent(f"exponent {qi} is not a polynomial")
                part = part * Scalar.exp(qi)
            result = result + part
        return result

    def partial_evaluate(self, values: Mapping[int, Number], target: Chart) -> "Scalar":
        """Fix variables (by index) to rational values, keeping the others.

        ``target`` must list the remaining variables in their original order.
        """
        keep = [i for i in range(self.chart.dim) if i not in values]
        fixed = list(values.items())

        def reduce(m, c):
            for i, v in fixed:
                e = m[i]
                if e:
                    if e < 0 and v == 0:
                        raise LaurentZeroSubstitution(
                            f"{self.chart.variables[i]} = 0 but a negative power occurs"
                        )
                    c = c * Fraction(v) ** e if e < 0 else c * v ** e
            return tuple(m[i] for i in keep), c

        terms: dict = {}
        for q, f in self._terms.items():
            qp: Poly = {}
            for m, c in q:
                mm, cc = reduce(m, c)
                qp[mm] = qp.get(mm, 0) + cc
            nq = _key(qp)
            acc = terms.setdefault(nq, {})
            for m, c in f.items():
                mm, cc = reduce(m, c)
                v = acc.get(mm, 0) + cc
                if v:
                    acc[mm] = _num(v)
                else:
                    acc.pop(mm, None)
        return Scalar._raw(target, {q: f for q, f in terms.items() if f})

    def restrict(self, normals, target: Chart = None) -> "Scalar":
        """Set the listed variables to rational values; result lives on the remaining chart."""
        items = normals.items() if isinstance(normals, Mapping) else normals
        values = {}
        for name, v in items:
            i = self.chart.index(name)
            v = _num(v)
            values[i] = v
        if target is None:
            target = self.chart.drop([self.chart.variables[i] for i in values])
        return self.partial_evaluate(values, target)

    def evaluate(self, point: Mapping[str, Number]) -> "Scalar":
        """Exact value at a full point, as a Scalar on the point chart.

        ``exp`` parts stay symbolic as ``exp(rational)`` terms.
        """
        values = {}
        for name in self.chart.variables:
            if name not in point:
                raise UnknownVariable(f"point does not bind variable {name!r}")
            values[self.chart.index(name)] = _num(point[name])
        for name in point:
            self.chart.index(name)
        return self.partial_evaluate(values, Chart.point())

    def transfer(self, chart: Chart) -> "Scalar":
        """Re-express on a chart containing all variables this Scalar uses (by name)."""
        if chart is self.chart or chart == self.chart:
            return self
        used = self.variables_used()
        pos = {}
        for i in used:
            name = self.chart.variables[i]
            if name not in chart:
                raise UnknownVariable(f"variable {name!r} missing from chart {chart.name!r}")
            pos[i] = chart.index(name)

        def move(m):
            out = [0] * chart.dim
            for i, e in enumerate(m):
                if e:
                    j = pos[i]
                    if e < 0 and not chart.laurent[j]:
                        raise NegativePower(
                            f"variable {chart.variables[j]!r} is not Laurent on chart {chart.name!r}"
                        )
                    out[j] = e
            return tuple(out)

        terms = {}
        for q, f in self._terms.items():
            nq = _key({move(m): c for m, c in q})
            terms[nq] = {move(m): c for m, c in f.items()}
        return Scalar._raw(chart, terms)

    # printing

    def _poly_parts(self, items) -> list:
        return [
            _signed_term(c, self._mono_str(m))
            for m, c in sorted(items, key=lambda mc: _mono_sort_key(mc[0]))
        ]

    def _poly_str(self, items) -> str:
        return _join(self._poly_parts(items))

    def _mono_str(self, m: Mono) -> str:
        out = []
        for name, e in zip(self.chart.variables, m):
            if e == 1:
                out.append(name)
            elif e:
                out.append(f"{name}^{e}")
        return "*".join(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for q in sorted(self._terms, key=lambda k: (len(k) > 0, k)):
            f = self._terms[q]
            if not q:
                parts.extend(self._poly_parts(f.items()))
                continue
            e = f"exp({self._poly_str(q)})"
            if len(f) == 1:
                ((m, c),) = f.items()
                ms = self._mono_str(m)
                parts.append(_signed_term(c, f"{ms}*{e}" if ms else e))
            else:
                parts.append((1, f"({self._poly_str(f.items())})*{e}"))
        return _join(parts)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r}, chart={self.chart.name!r})"


def _coeff_str(c) -> str:
    c = _num(c)
    return str(c)


def _signed_term(c, body: str):
    c = _num(c)
    sign = -1 if c < 0 else 1
    a = -c if c < 0 else c
    if not body:
        return (sign, _coeff_str(a))
    if a == 1:
        return (sign, body)
    return (sign, f"{_coeff_str(a)}*{body}")


def _join(parts) -> str:
    out = ""
    for k, (sign, body) in enumerate(parts):
        if k == 0:
            out = body if sign > 0 else f"-{body}"
        else:
            out += f" + {body}" if sign > 0 else f" - {body}"
    return out or "0"


def as_scalar(value, chart: Chart) -> Scalar:
    if isinstance(value, Scalar):
        if value.chart != chart:
            raise ChartMismatch(f"chart {value.chart.name!r} differs from chart {chart.name!r}")
        return value
    return Scalar.const(chart, value)

"""Graded exterior calculus on a chart.

All operations are exact and follow the conventions in :mod:`soldered.conventions`.
Degree-0 tensors and :class:`~soldered.scalar.Scalar` are interchangeable as
inputs; degree-0 results are returned as tensors unless noted.
"""

from __future__ import annotations

from typing import Mapping, Union

from .chart import Chart
from .conventions import interior_sign
from .errors import ChartMismatch, DegreeMismatch, NotInvertible, NotInvolution
from .scalar import Scalar
from .tensors import (
    AltTensor,
    DifferentialForm,
    Multivector,
    SymmetricTwoTensor,
    accumulate,
    as_alt,
    merge_sign,
    prune,
)

Tensor = Union[AltTensor, SymmetricTwoTensor, Scalar]


def _same(a, b) -> Chart:
    if a.chart != b.chart:
        raise ChartMismatch(f"chart {a.chart.name!r} differs from chart {b.chart.name!r}")
    return a.chart


def _derivs(t: AltTensor) -> dict:
    """``{(l, I): d_l t^I}`` for all nonzero partial derivatives."""
    out = {}
    for idx, v in t._c.items():
        for l in v.variables_used():
            dv = v.diff(l)
            if dv:
                out[(l, idx)] = dv
    return out


def wedge(a, b):
    """Exterior product of two multivectors or two forms."""
    if isinstance(a, Scalar) and isinstance(b, Scalar):
        return a * b
    if isinstance(a, Scalar):
        a = type(b).from_scalar(a)
    if isinstance(b, Scalar):
        b = type(a).from_scalar(b)
    if type(a) is not type(b):
        raise TypeError(f"cannot wedge {type(a).__name__} with {type(b).__name__}")
    chart = _same(a, b)
    out: dict = {}
    for i, x in a._c.items():
        for j, y in b._c.items():
            sign, k = merge_sign(i, j)
            if sign:
                accumulate(out, k, x * y if sign > 0 else -(x * y))
    return type(a)._raw(chart, a.degree + b.degree, prune(out))


def wedge_all(*tensors):
    acc = tensors[0]
    for t in tensors[1:]:
        acc = wedge(acc, t)
    return acc


def exterior_derivative(form) -> DifferentialForm:
    """``d`` of a form (a Scalar is treated as a 0-form)."""
    form = as_alt(form, DifferentialForm)
    if not isinstance(form, DifferentialForm):
        raise TypeError("exterior derivative needs a differential form")
    out: dict = {}
    for (l, idx), dv in _derivs(form).items():
        sign, k = merge_sign((l,), idx)
        if sign:
            accumulate(out, k, dv if sign > 0 else -dv)
    return DifferentialForm._raw(form.chart, form.degree + 1, prune(out))


d = exterior_derivative


def differential(f: Scalar) -> DifferentialForm:
    return exterior_derivative(DifferentialForm.from_scalar(f))


def _contract(left: AltTensor, target: AltTensor, result_type):
    if left.degree > target.degree:
        raise DegreeMismatch(
            f"cannot contract a degree {left.degree} tensor into degree {target.degree}"
        )
    chart = _same(left, target)
    p = left.degree
    s0 = interior_sign(p)
    out: dict = {}
    for i, x in left._c.items():
        iset = set(i)
        for k, y in target._c.items():
            if not iset.issubset(k):
                continue
            rest = tuple(e for e in k if e not in iset)
            sign, _ = merge_sign(i, rest)
            prod = x * y
            accumulate(out, rest, prod if sign * s0 > 0 else -prod)
    return result_type._raw(chart, target.degree - p, prune(out))


def interior_product(left, target):
    """``i(P) k`` (multivector into form) or ``i(a) Q`` (form into multivector)."""
    if isinstance(left, Scalar):
        left = as_alt(left, Multivector if isinstance(target, DifferentialForm) else DifferentialForm)
    if isinstance(target, Scalar):
        target = as_alt(target, DifferentialForm if isinstance(left, Multivector) else Multivector)
    if isinstance(left, Multivector) and isinstance(target, DifferentialForm):
        return _contract(left, target, DifferentialForm)
    if isinstance(left, DifferentialForm) and isinstance(target, Multivector):
        return _contract(left, target, Multivector)
    raise TypeError(
        f"interior product needs a multivector/form pair, got "
        f"{type(left).__name__} and {type(target).__name__}"
    )


def pairing(a, b) -> Scalar:
    """Full contraction of a form with a multivector of equal degree."""
    if a.degree != b.degree:
        raise DegreeMismatch("pairing needs equal degrees")
    return interior_product(a, b).scalar()


def _right_derivs(t: AltTensor):
    """Yield ``(l, I', sign, value)`` for the right derivative by the odd symbol of index l."""
    p = t.degree
    for idx, v in t._c.items():
        for m, l in enumerate(idx):
            sign = -1 if (p - 1 - m) & 1 else 1
            yield l, idx[:m] + idx[m + 1:], sign, v


def _half_bracket(P: AltTensor, Q: AltTensor, dQ: dict, out: dict, outer: int) -> None:
    by_var: dict = {}
    for (l, k), dv in dQ.items():
        by_var.setdefault(l, []).append((k, dv))
    for l, rest, sign, v in _right_derivs(P):
        for k, dv in by_var.get(l, ()):
            s2, key = merge_sign(rest, k)
            if s2:
                prod = v * dv
                accumulate(out, key, prod if sign * s2 * outer > 0 else -prod)


def schouten_bracket(P, Q) -> Multivector:
    """Schouten-Nijenhuis bracket ``[P, Q]`` of degree ``p + q - 1``.

    For vector fields this is the Lie bracket; ``[X, f] = X f``.
    """
    P = as_alt(P, Multivector)
    Q = as_alt(Q, Multivector)
    if not (isinstance(P, Multivector) and isinstance(Q, Multivector)):
        raise TypeError("Schouten bracket needs multivectors")
    chart = _same(P, Q)
    p, q = P.degree, Q.degree
    deg = p + q - 1
    if deg < 0:
        return Multivector._raw(chart, 0, {})
    out: dict = {}
    _half_bracket(P, Q, _derivs(Q), out, 1)
    twist = -1 if ((p - 1) * (q - 1)) & 1 else 1
    _half_bracket(Q, P, _derivs(P), out, -twist)
    return Multivector._raw(chart, deg, prune(out))


def vector_apply(X: Multivector, f: Scalar) -> Scalar:
    """``X(f) = X^i d_i f``."""
    if X.degree != 1:
        raise DegreeMismatch("only vector fields act on functions")
    _same(X, f)
    acc = Scalar.zero(f.chart)
    used = f.variables_used()
    for (i,), xi in X._c.items():
        if i in used:
            acc = acc + xi * f.diff(i)
    return acc


def _lie_symmetric(X: Multivector, g: SymmetricTwoTensor) -> SymmetricTwoTensor:
    chart = _same(X, g)
    n = chart.dim
    dX = {}
    for (k,), xk in X._c.items():
        for i in xk.variables_used():
            dX[(i, k)] = xk.diff(i)
    out: dict = {}
    for (i, j) in {(a, b) for a in range(n) for b in range(a, n)}:
        acc = vector_apply(X, g[(i, j)])
        for k in range(n):
            dik = dX.get((i, k))
            if dik is not None:
                acc = acc + g[(k, j)] * dik
            djk = dX.get((j, k))
            if djk is not None:
                acc = acc + g[(i, k)] * djk
        if acc:
            out[(i, j)] = acc
    return SymmetricTwoTensor._raw(chart, out)


def lie_derivative(X, T):
    """Lie derivative along a vector field of a scalar, multivector, form or symmetric tensor."""
    X = as_alt(X, Multivector)
    if not isinstance(X, Multivector) or X.degree != 1:
        raise DegreeMismatch("Lie derivative needs a degree-1 multivector")
    if isinstance(T, Scalar):
        return vector_apply(X, T)
    if isinstance(T, Multivector):
        return schouten_bracket(X, T)
    if isinstance(T, DifferentialForm):
        return interior_product(X, exterior_derivative(T)) + exterior_derivative(
            interior_product(X, T)
        ) if T.degree > 0 else DifferentialForm.from_scalar(vector_apply(X, T.scalar()))
    if isinstance(T, SymmetricTwoTensor):
        return _lie_symmetric(X, T)
    raise TypeError(f"unsupported tensor {type(T).__name__}")


def sharp(P: Multivector, alpha: DifferentialForm) -> Multivector:
    """``#_P(a) = i(a) P`` for a bivector ``P`` and a 1-form ``a``."""
    if P.degree != 2 or alpha.degree != 1:
        raise DegreeMismatch("sharp needs a bivector and a 1-form")
    return interior_product(alpha, P)


def flat(W: DifferentialForm, X: Multivector) -> DifferentialForm:
    """``flat_W(X) = i(X) W`` for a 2-form ``W`` and a vector field ``X``."""
    if W.degree != 2 or X.degree != 1:
        raise DegreeMismatch("flat needs a 2-form and a vector field")
    return interior_product(X, W)


def sharp_form(P: Multivector, form: DifferentialForm) -> Multivector:
    """Extension of ``#_P`` to k-forms, multiplicative on wedge products.

    ``#(a1 ^ ... ^ ak) = #a1 ^ ... ^ #ak``; on functions it is the identity.
    """
    if P.degree != 2:
        raise DegreeMismatch("sharp needs a bivector")
    form = as_alt(form, DifferentialForm)
    chart = _same(P, form)
    n = chart.dim
    images = {}
    for i in range(n):
        images[i] = sharp(P, DifferentialForm._raw(chart, 1, {(i,): Scalar.one(chart)}))
    out = Multivector._raw(chart, form.degree, {})
    for idx, v in form._c.items():
        acc = Multivector.from_scalar(v)
        for i in idx:
            acc = wedge(acc, images[i])
        out = out + acc
    return out


def sharp_cochain(P: Multivector, form) -> Multivector:
    """Cochain map from forms to multivectors: ``(-1)^(k+1)`` times :func:`sharp_form`.

    Agrees with :func:`sharp` on 1-forms; for Poisson ``P`` it intertwines
    ``d`` with ``-[P, .]`` up to a global minus:
    ``-[P, sharp_cochain(P, k)] = -sharp_cochain(P, d k)``.
    """
    form = as_alt(form, DifferentialForm)
    out = sharp_form(P, form)
    return out if form.degree % 2 else -out


def contract_symmetric(g: SymmetricTwoTensor, X: Multivector, Y: Multivector) -> Scalar:
    acc = Scalar.zero(g.chart)
    for (i,), xi in X._c.items():
        for (j,), yj in Y._c.items():
            gij = g[(i, j)]
            if gij:
                acc = acc + gij * xi * yj
    return acc


def evaluate_at_point(T, point: Mapping[str, object]):
    """Exact componentwise value at a point, as a tensor on the point chart."""
    pt = Chart.point()
    if isinstance(T, Scalar):
        return T.evaluate(point)
    if isinstance(T, AltTensor):
        return T.map(lambda s: s.evaluate(point), pt)
    if isinstance(T, SymmetricTwoTensor):
        return T.map(lambda s: s.evaluate(point), pt)
    raise TypeError(f"cannot evaluate {type(T).__name__}")


def restrict_components(T, values: Mapping[str, object]):
    """Partially evaluate every component; indices stay on the original chart."""
    chart = T.chart
    return T.map(lambda s: s.restrict(values).transfer(chart))


class PolyMap:
    """Polynomial (Laurent-monomial) map ``source -> target`` with a checked inverse.

    ``components[w]`` is the Scalar on ``source`` giving target coordinate ``w``.
    Construction verifies ``self o inverse`` and ``inverse o self`` are the
    identity exactly, and raises :class:`NotInvertible` otherwise.
    """

    __slots__ = ("source", "target", "components", "inverse_components")

    def __init__(self, source: Chart, target: Chart, components: Mapping[str, object],
                 inverse: Mapping[str, object]):
        self.source = source
        self.target = target
        self.components = _map_images(components, target, source)
        self.inverse_components = _map_images(inverse, source, target)
        for w in target.variables:
            back = self.components[w].substitute(self.inverse_components, target)
            if back != Scalar.variable(target, w):
                raise NotInvertible(f"map o inverse sends {w} to {back}, not {w}")
        for z in source.variables:
            back = self.inverse_components[z].substitute(self.components, source)
            if back != Scalar.variable(source, z):
                raise NotInvertible(f"inverse o map sends {z} to {back}, not {z}")

    @classmethod
    def identity(cls, chart: Chart) -> "PolyMap":
        ident = {v: Scalar.variable(chart, v) for v in chart.variables}
        return cls(chart, chart, ident, ident)

    @classmethod
    def involution(cls, chart: Chart, components: Mapping[str, object]) -> "PolyMap":
        """A self-inverse map of ``chart``; unlisted variables are fixed."""
        try:
            return cls(chart, chart, components, components)
        except NotInvertible as exc:
            raise NotInvolution(f"map is not an involution: {exc}") from None

    def inverse(self) -> "PolyMap":
        return PolyMap(self.target, self.source, self.inverse_components, self.components)

    def compose(self, first: "PolyMap") -> "PolyMap":
        """``self o first``."""
        self.source.check_same(first.target)
        fwd = {w: s.substitute(first.components, first.source) for w, s in self.components.items()}
        inv = {z: s.substitute(self.inverse_components, self.target)
               for z, s in first.inverse_components.items()}
        return PolyMap(first.source, self.target, fwd, inv)

    def is_involution(self) -> bool:
        return self.source == self.target and self.components == self.inverse_components

    def __call__(self, s: Scalar) -> Scalar:
        """Composition ``s o self`` for ``s`` on the target chart."""
        self.target.check_same(s.chart)
        return s.substitute(self.components, self.source)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.components.items())))

    def jacobian(self) -> dict:
        """``{(j, i): d phi^j / d z^i}`` on the source chart, nonzero entries only."""
        out = {}
        for j, w in enumerate(self.target.variables):
            comp = self.components[w]
            for i in comp.variables_used():
                dv = comp.diff(i)
                if dv:
                    out[(j, i)] = dv
        return out

    def lines(self) -> list:
        return [f"{w} -> {self.components[w]}" for w in self.target.variables]

    def __repr__(self) -> str:
        return f"PolyMap({self.source.name} -> {self.target.name}: {'; '.join(self.lines())})"


def _map_images(images: Mapping[str, object], keys: Chart, chart: Chart) -> dict:
    out = {}
    for name in images:
        keys.index(name)
    for name in keys.variables:
        if name in images:
            img = images[name]
            out[name] = img if isinstance(img, Scalar) else Scalar.const(chart, img)
            chart.check_same(out[name].chart)
        elif name in chart:
            out[name] = Scalar.variable(chart, name)
        else:
            raise NotInvertible(f"no image given for variable {name!r}")
    return out


def _image_vectors(phi: PolyMap) -> dict:
    """Images of coordinate vectors under the differential, composed with the inverse."""
    tgt = phi.target
    cols: dict = {}
    for (j, i), v in phi.jacobian().items():
        cols.setdefault(i, {})[(j,)] = v.substitute(phi.inverse_components, tgt)
    return {i: Multivector._raw(tgt, 1, prune(c)) for i, c in cols.items()}


def pushforward(Q, phi: PolyMap) -> Multivector:
    """``(phi_* Q)(w) = d phi (Q(phi^{-1}(w)))``."""
    Q = as_alt(Q, Multivector)
    phi.source.check_same(Q.chart)
    tgt = phi.target
    images = _image_vectors(phi)
    out = Multivector._raw(tgt, Q.degree, {})
    for idx, v in Q._c.items():
        acc = Multivector.from_scalar(v.substitute(phi.inverse_components, tgt))
        for i in idx:
            col = images.get(i)
            if col is None:
                acc = None
                break
            acc = wedge(acc, col)
        if acc is not None:
            out = out + acc
    return out


def pullback(form, phi: PolyMap):
    """``phi^* k`` for a form (or symmetric 2-tensor) on the target chart."""
    src = phi.source
    diffs = {j: differential(phi.components[w]) for j, w in enumerate(phi.target.variables)}
    if isinstance(form, SymmetricTwoTensor):
        phi.target.check_same(form.chart)
        out: dict = {}
        for (a, b), v in form._c.items():
            vv = phi(v)
            orders = [(a, b)] if a == b else [(a, b), (b, a)]
            for p, q in orders:
                for (i,), x in diffs[p]._c.items():
                    for (k,), y in diffs[q]._c.items():
                        if i <= k:
                            accumulate(out, (i, k), vv * x * y)
        return SymmetricTwoTensor._raw(src, prune(out))
    form = as_alt(form, DifferentialForm)
    phi.target.check_same(form.chart)
    out_f = DifferentialForm._raw(src, form.degree, {})
    for idx, v in form._c.items():
        acc = DifferentialForm.from_scalar(phi(v))
        for j in idx:
            acc = wedge(acc, diffs[j])
        out_f = out_f + acc
    return out_f

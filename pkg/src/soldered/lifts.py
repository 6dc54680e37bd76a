"""Tangent bundle charts, complete and vertical lifts, and the lift-based soldering tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .chart import Chart
from .conventions import DEFAULT_TAU, DOT_SUFFIX
from .errors import DegreeMismatch, NotJacobi, NotPoisson
from .report import Verdict, Witness, combine
from .scalar import Scalar
from .structures import HomogeneousPoisson, JacobiPair, is_homogeneous, is_jacobi, is_poisson, poissonize
from .submanifold import NormalizedSubmanifold
from .tensors import AltTensor, DifferentialForm, Multivector, accumulate, prune, sort_sign
from .calculus import wedge


@dataclass(frozen=True)
class TangentChart:
    """``TM`` over ``base``: variables ``z^1..z^m`` then ``z^1_dot..z^m_dot`` (never Laurent)."""

    base: Chart
    chart: Chart = field(init=False, compare=False)

    def __post_init__(self):
        dots = [(self.dot(v), False) for v in self.base.variables]
        object.__setattr__(self, "chart", self.base.extend(*dots, name=f"T{self.base.name}"))

    @staticmethod
    def dot(name: str) -> str:
        return name + DOT_SUFFIX

    @property
    def dim(self) -> int:
        return self.chart.dim

    def dot_index(self, i: int) -> int:
        return self.base.dim + i

    def velocity(self, i: int) -> Scalar:
        return Scalar.variable(self.chart, self.chart.variables[self.dot_index(i)])

    def lift_scalar(self, s: Scalar) -> Scalar:
        """Pull back along the projection ``TM -> M``."""
        return s.transfer(self.chart)

    def complete_scalar(self, s: Scalar) -> Scalar:
        """``z_dot^l d_l s``."""
        acc = Scalar.zero(self.chart)
        for l in s.variables_used():
            acc = acc + self.velocity(l) * self.lift_scalar(s.diff(l))
        return acc


_CACHE: dict = {}


def tangent_chart(base: Union[Chart, TangentChart]) -> TangentChart:
    if isinstance(base, TangentChart):
        return base
    tc = _CACHE.get(base)
    if tc is None:
        tc = _CACHE[base] = TangentChart(base)
    return tc


def _complete(T: AltTensor, tc: TangentChart, first_dotted: bool) -> AltTensor:
    """Shared shape of both complete lift formulas.

    For each sorted index tuple and each slot ``j``, the first term puts index
    ``j`` in front (base slot for multivectors, dotted slot for forms) and the
    rest on the other kind; the second term is ``z_dot^l d_l T^I`` on the
    dotted (multivectors) or base (forms) indices.
    """
    m = tc.base.dim
    out: dict = {}
    for idx, v in T._c.items():
        lifted = tc.lift_scalar(v)
        for pos, j in enumerate(idx):
            rest = idx[:pos] + idx[pos + 1:]
            if first_dotted:
                slots = (j + m,) + rest
            else:
                slots = (j,) + tuple(i + m for i in rest)
            sign, key = sort_sign(slots)
            coeff = lifted if pos % 2 == 0 else -lifted
            accumulate(out, key, coeff if sign > 0 else -coeff)
        d = tc.complete_scalar(v)
        if d:
            key = idx if first_dotted else tuple(i + m for i in idx)
            accumulate(out, key, d)
    return type(T)._raw(tc.chart, T.degree, prune(out))


def complete_lift_form(kappa: DifferentialForm, tc: TangentChart = None) -> DifferentialForm:
    tc = tangent_chart(tc or kappa.chart)
    tc.base.check_same(kappa.chart)
    return _complete(kappa, tc, first_dotted=True)


def complete_lift_multivector(Q: Multivector, tc: TangentChart = None) -> Multivector:
    tc = tangent_chart(tc or Q.chart)
    tc.base.check_same(Q.chart)
    return _complete(Q, tc, first_dotted=False)


def complete_lift(T: AltTensor, tc: TangentChart = None) -> AltTensor:
    if isinstance(T, DifferentialForm):
        return complete_lift_form(T, tc)
    return complete_lift_multivector(T, tc)


def vertical_lift(Q: Multivector, tc: TangentChart = None) -> Multivector:
    """Same coefficients on the dotted directions; defined for vector and bivector fields."""
    if Q.degree not in (1, 2):
        raise DegreeMismatch(f"vertical lift needs degree 1 or 2, got {Q.degree}")
    tc = tangent_chart(tc or Q.chart)
    tc.base.check_same(Q.chart)
    m = tc.base.dim
    out = {tuple(i + m for i in idx): tc.lift_scalar(v) for idx, v in Q._c.items()}
    return Multivector._raw(tc.chart, Q.degree, out)


def euler_field(tc: Union[Chart, TangentChart]) -> Multivector:
    """``z_dot^i d/dz_dot^i``."""
    tc = tangent_chart(tc)
    m = tc.base.dim
    return Multivector._raw(tc.chart, 1, {(m + i,): tc.velocity(i) for i in range(m)})


def tangent_poisson(Pi: Multivector) -> Multivector:
    v = is_poisson(Pi)
    if not v:
        raise NotPoisson(f"not a Poisson bivector: {v.witness}")
    PiC = complete_lift_multivector(Pi)
    check = is_poisson(PiC)
    if not check:
        raise AssertionError(f"complete lift is not Poisson: {check.witness}")
    return PiC


def tangent_jacobi(pair: JacobiPair, tau: str = DEFAULT_TAU):
    """The tangent Jacobi pair on ``TM`` and its Poisson bivector on ``TM x R``.

    ``Lambda_T = Lambda^C - Lambda^V - Euler ^ (E^C - E^V)``, ``E_T = E^C``.
    """
    v = is_jacobi(pair)
    if not v:
        raise NotJacobi(f"not a Jacobi pair: {v.witness}")
    tc = tangent_chart(pair.chart)
    EC = complete_lift_multivector(pair.E, tc)
    if pair.Lambda:
        LC = complete_lift_multivector(pair.Lambda, tc)
        LV = vertical_lift(pair.Lambda, tc)
    else:
        LC = LV = Multivector.zero(tc.chart, 2)
    EV = vertical_lift(pair.E, tc) if pair.E else Multivector.zero(tc.chart, 1)
    tpair = JacobiPair(LC - LV - wedge(euler_field(tc), EC - EV), EC)
    check = is_jacobi(tpair)
    if not check:
        raise AssertionError(f"tangent pair is not Jacobi: {check.witness}")
    hp = poissonize(tpair, tau)
    pv, hv = is_poisson(hp.Pi), is_homogeneous(hp.Pi, hp.Z)
    if not (pv and hv):
        raise AssertionError(f"tangent Poissonization fails: {pv.witness or hv.witness}")
    return tpair, hp


def _locus_values(chart: Chart, variables) -> list:
    if isinstance(variables, Mapping):
        items = list(variables.items())
    else:
        items = [(v, 0) for v in variables]
    for name, _ in items:
        chart.index(name)
    return items


def is_coisotropic(Pi: Multivector, variables) -> Verdict:
    """``sharp(dw)`` tangent to ``C`` for every defining variable ``w``.

    ``variables`` lists the defining coordinates (zero locus) or maps them to
    their values on ``C``.
    """
    items = _locus_values(Pi.chart, variables)
    names = [n for n, _ in items]
    ws = []
    for i, w in enumerate(names):
        for v in names[i + 1:]:
            r = Pi[(w, v)].restrict(items)
            if r:
                ws.append(Witness("sharp(dw) tangent to C", (w, v), None, str(r)))
    return Verdict(not ws, ws[0] if ws else None, {}, tuple(ws))


def normal_bundle_locus(sub: NormalizedSubmanifold) -> dict:
    """``nu N`` inside ``TM``: the normal variables at their values and the tangent velocities at 0."""
    out = {v: c for v, c in sub.normal}
    for u in sub.tangent_names:
        out[TangentChart.dot(u)] = 0
    return out


def _lift_verdict(T: AltTensor, sub: NormalizedSubmanifold, label: str) -> Verdict:
    """Components of the lift whose indices all lie in the directions paired with ``ann T(nu N)``.

    For multivectors these are ``x^a`` and ``y_dot^u``; for forms the
    complementary ``y^u`` and ``x_dot^a``.  They must vanish on ``nu N``.
    """
    tc = tangent_chart(sub.chart)
    lifted = complete_lift(T, tc)
    locus = normal_bundle_locus(sub)
    outside = {tc.chart.index(v) for v in locus}
    form = isinstance(T, DifferentialForm)
    ws = []
    for idx, v in lifted.items():
        inside = all((i in outside) != form for i in idx)
        if not inside:
            continue
        r = v.restrict(locus)
        if r:
            ws.append(Witness(f"{label} lift condition on nu N",
                              tuple(tc.chart.variables[i] for i in idx), None, str(r)))
    return Verdict(not ws, ws[0] if ws else None, {}, tuple(ws))


def soldering_via_lift(T, sub: NormalizedSubmanifold) -> Verdict:
    """Soldering read off the complete lift along ``nu N``; a Jacobi pair needs both tensors."""
    if isinstance(T, JacobiPair):
        return combine(("Lambda", _lift_verdict(T.Lambda, sub, "Lambda")),
                       ("E", _lift_verdict(T.E, sub, "E")))
    if isinstance(T, Scalar):
        T = DifferentialForm.from_scalar(T)
    if not isinstance(T, AltTensor):
        raise TypeError(f"unsupported tensor {type(T).__name__}")
    return _lift_verdict(T, sub, "form" if isinstance(T, DifferentialForm) else "multivector")


def coisotropic_normal_bundle(Pi: Multivector, sub: NormalizedSubmanifold) -> Verdict:
    """Is ``nu N`` coisotropic for the tangent Poisson structure?"""
    return is_coisotropic(tangent_poisson(Pi), normal_bundle_locus(sub))


__all__ = [
    "TangentChart", "tangent_chart", "complete_lift", "complete_lift_form",
    "complete_lift_multivector", "vertical_lift", "euler_field", "tangent_poisson",
    "tangent_jacobi", "is_coisotropic", "normal_bundle_locus", "soldering_via_lift",
    "coisotropic_normal_bundle", "HomogeneousPoisson",
]

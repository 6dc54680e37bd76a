"""Coordinate submanifolds with a normal bundle: soldering checks and classification.

A :class:`NormalizedSubmanifold` is the locus ``N = {x^a = c^a}`` of some chart
variables (the *normal* ones) with ``nu N = span d/dx^a`` along it.  Every
condition below is a statement about restrictions to ``N`` of components and
of their first normal derivatives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .calculus import (
    PolyMap,
    differential,
    exterior_derivative,
    interior_product,
    pullback,
    pushforward,
    schouten_bracket,
    sharp,
    sharp_cochain,
    vector_apply,
    wedge,
)
from .chart import Chart
from .errors import (
    LocusNotCoordinate,
    NotInvolution,
    NotJacobi,
    NotPoisson,
    NotPreserved,
    NotTangentFunction,
    PreconditionFailed,
)
from .linalg import determinant, solve_unit
from .report import Verdict, Witness, combine, passed, zero_verdict
from .scalar import Scalar
from .structures import (
    JacobiPair,
    Structure,
    conformal_change,
    is_jacobi,
    is_poisson,
    poisson_bracket,
)
from .tensors import AltTensor, DifferentialForm, Multivector, SymmetricTwoTensor


@dataclass(frozen=True)
class NormalizedSubmanifold:
    """``N = {x^a = c^a}`` inside ``chart``; the remaining variables are tangent.

    ``normal`` lists ``(name, c)`` pairs in chart order.  Nonzero base values are
    only allowed on Laurent variables.
    """

    chart: Chart
    normal: Tuple[Tuple[str, Fraction], ...]
    name: str = "N"
    tangent_chart: Chart = field(init=False, compare=False, repr=False)
    _normal_idx: tuple = field(init=False, compare=False, repr=False)
    _positions: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        seen = {}
        for var, c in self.normal:
            self.chart.index(var)
            if var in seen:
                raise PreconditionFailed(f"normal variable {var!r} listed twice")
            if c != 0 and not self.chart.is_laurent(var):
                raise PreconditionFailed(
                    f"base value {var} = {c} needs a Laurent variable (non-Laurent normals sit at 0)"
                )
            seen[var] = Fraction(c)
        ordered = tuple((v, seen[v]) for v in self.chart.variables if v in seen)
        object.__setattr__(self, "normal", ordered)
        tangent = self.chart.drop([v for v, _ in ordered], name=self.name)
        object.__setattr__(self, "tangent_chart", tangent)
        object.__setattr__(self, "_normal_idx", tuple(self.chart.index(v) for v, _ in ordered))
        object.__setattr__(
            self,
            "_positions",
            {self.chart.index(v): j for j, v in enumerate(tangent.variables)},
        )

    @classmethod
    def make(cls, chart: Chart, normals, name: str = "N") -> "NormalizedSubmanifold":
        """``normals`` is a mapping ``name -> c`` or an iterable of names (``c = 0``)."""
        if isinstance(normals, Mapping):
            items = [(v, Fraction(c)) for v, c in normals.items()]
        else:
            items = [(v, Fraction(0)) for v in normals]
        return cls(chart, tuple(items), name)

    @property
    def normal_names(self) -> tuple:
        return tuple(v for v, _ in self.normal)

    @property
    def tangent_names(self) -> tuple:
        return self.tangent_chart.variables

    @property
    def values(self) -> dict:
        return dict(self.normal)

    @property
    def normal_indices(self) -> tuple:
        return self._normal_idx

    @property
    def tangent_indices(self) -> tuple:
        return tuple(sorted(self._positions))

    def is_normal(self, i: int) -> bool:
        return i not in self._positions

    def restrict(self, s: Scalar) -> Scalar:
        """``s|_N`` on the tangent chart."""
        return s.restrict(self.normal, self.tangent_chart)

    def lift(self, s: Scalar) -> Scalar:
        """Pull a function on ``N`` back along the projection ``(x, y) -> y``."""
        return s.transfer(self.chart)

    def coordinate_shift(self, var: str) -> Scalar:
        """``x^a - c^a``."""
        return Scalar.variable(self.chart, var) - self.values[var]

    def tangential(self, T):
        """Pure-tangent components restricted to ``N``, as a tensor on ``N``."""
        if isinstance(T, SymmetricTwoTensor):
            out = {}
            for (i, j), v in T._c.items():
                if i in self._positions and j in self._positions:
                    r = self.restrict(v)
                    if r:
                        out[(self._positions[i], self._positions[j])] = r
            return SymmetricTwoTensor._raw(self.tangent_chart, out)
        out = {}
        for idx, v in T._c.items():
            if all(i in self._positions for i in idx):
                r = self.restrict(v)
                if r:
                    out[tuple(self._positions[i] for i in idx)] = r
        return type(T)._raw(self.tangent_chart, T.degree, out)

    def spec(self) -> str:
        return ", ".join(f"{v} = {_fmt(c)}" for v, c in self.normal)

    def __str__(self) -> str:
        return f"submanifold {self.name} in {self.chart.name}: normal {self.spec()}"


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class FrameMatrix:
    """Entries ``theta^u_a`` of the alternate normal frame ``d/dx^a - theta^u_a d/dy^u``."""

    sub: NormalizedSubmanifold
    entries: Mapping[Tuple[str, str], Scalar]

    def __post_init__(self):
        clean = {}
        for (u, a), v in self.entries.items():
            if u not in self.sub.tangent_names:
                raise PreconditionFailed(f"{u!r} is not a tangent variable of {self.sub.name}")
            if a not in self.sub.normal_names:
                raise PreconditionFailed(f"{a!r} is not a normal variable of {self.sub.name}")
            s = v if isinstance(v, Scalar) else Scalar.const(self.sub.chart, v)
            if s:
                clean[(u, a)] = s
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, key) -> Scalar:
        return self.entries.get(key, Scalar.zero(self.sub.chart))

    def is_zero(self) -> bool:
        return not self.entries


# soldering checks


def _names(chart: Chart, idx) -> tuple:
    return tuple(chart.variables[i] for i in idx)


def _alt_conditions(T: AltTensor, sub: NormalizedSubmanifold, label: str):
    """Witness lists for the algebraic and the normal-derivative soldering conditions."""
    if T.chart != sub.chart:
        sub.chart.check_same(T.chart)
    alg, der = [], []
    for idx, v in T.items():
        normals = [i for i in idx if sub.is_normal(i)]
        if len(normals) == 1:
            r = sub.restrict(v)
            if r:
                alg.append(Witness(f"{label}: single-normal component vanishes on N",
                                   _names(T.chart, idx), None, str(r)))
        elif not normals:
            used = v.variables_used()
            for a in sub.normal_indices:
                if a in used:
                    r = sub.restrict(v.diff(a))
                    if r:
                        der.append(Witness(f"{label}: normal derivative vanishes on N",
                                           _names(T.chart, idx), T.chart.variables[a], str(r)))
    return alg, der


def _verdict(alg: list, der: list, *, use_alg=True, use_der=True) -> Verdict:
    ws = (alg if use_alg else []) + (der if use_der else [])
    details = {"algebraic": not alg, "derivative": not der}
    return Verdict(not ws, ws[0] if ws else None, details, tuple(ws))


def is_soldered_form(kappa, sub: NormalizedSubmanifold) -> Verdict:
    if isinstance(kappa, Scalar):
        kappa = DifferentialForm.from_scalar(kappa)
    return _verdict(*_alt_conditions(kappa, sub, "form"))


def is_soldered_multivector(Q, sub: NormalizedSubmanifold) -> Verdict:
    if isinstance(Q, Scalar):
        Q = Multivector.from_scalar(Q)
    return _verdict(*_alt_conditions(Q, sub, "multivector"))


def is_soldered(T, sub: NormalizedSubmanifold) -> Verdict:
    """Dispatch on the tensor kind."""
    if isinstance(T, SymmetricTwoTensor):
        return is_soldered_symmetric(T, sub)
    if isinstance(T, DifferentialForm):
        return is_soldered_form(T, sub)
    return is_soldered_multivector(T, sub)


@dataclass(frozen=True)
class SecondFundamentalData:
    """Per normal variable, the pure-tangent part of the normal Lie derivative on ``N``.

    ``parts[a]`` is a tuple of tensors on the tangent chart (one per structure
    tensor, e.g. ``(Lambda part, E part)`` for a Jacobi pair).
    """

    sub: NormalizedSubmanifold
    parts: Dict[str, tuple]

    def is_zero(self) -> bool:
        return all(not t for ts in self.parts.values() for t in ts)

    def lines(self) -> list:
        out = []
        for a, ts in self.parts.items():
            for k, t in enumerate(ts):
                for line in t.lines():
                    out.append(f"d/d{a} part {k}: {line}")
        return out


def _normal_lie(T, sub: NormalizedSubmanifold, a: int):
    """``L_{d/dx^a} T`` is the componentwise ``d/dx^a``."""
    return T.map(lambda s: s.diff(a))


def _second_fundamental_raw(tensors: Iterable, sub: NormalizedSubmanifold) -> SecondFundamentalData:
    parts = {}
    for a in sub.normal_indices:
        parts[sub.chart.variables[a]] = tuple(sub.tangential(_normal_lie(T, sub, a)) for T in tensors)
    return SecondFundamentalData(sub, parts)


def is_soldered_symmetric(g: SymmetricTwoTensor, sub: NormalizedSubmanifold) -> Verdict:
    """Algebraic ``g_au|_N = 0`` and ``d_a g_uv|_N = 0``; details carry the second fundamental data."""
    sub.chart.check_same(g.chart)
    ws = []
    alg_ok = True
    for (i, j), v in g.items():
        ni, nj = sub.is_normal(i), sub.is_normal(j)
        if ni != nj:
            r = sub.restrict(v)
            if r:
                alg_ok = False
                ws.append(Witness("symmetric: mixed component vanishes on N",
                                  _names(g.chart, (i, j)), None, str(r)))
    data = _second_fundamental_raw([g], sub)
    der_ok = True
    for a, (t,) in data.parts.items():
        for (i, j), v in t.items():
            der_ok = False
            ws.append(Witness("symmetric: normal derivative vanishes on N",
                              _names(t.chart, (i, j)), a, str(v)))
    return Verdict(not ws, ws[0] if ws else None,
                   {"algebraic": alg_ok, "derivative": der_ok, "second_fundamental": data}, tuple(ws))


# classification


@dataclass(frozen=True)
class ClassificationFlags:
    """Verdicts for one structure and one normalized submanifold.

    Flags that do not apply to the structure kind are ``None``.
    """

    kind: str
    soldered_algebraic: bool
    soldered: bool
    apc: Optional[bool] = None
    quasi_dirac: Optional[bool] = None
    dirac: Optional[bool] = None
    strong_dirac: Optional[bool] = None
    cosymplectic: Optional[bool] = None
    almost_dirac: Optional[bool] = None
    ajc: Optional[bool] = None
    e_normal: Optional[bool] = None
    witnesses: Dict[str, Witness] = field(default_factory=dict, compare=False)

    FLAG_NAMES = ("soldered_algebraic", "soldered", "apc", "quasi_dirac", "dirac",
                  "strong_dirac", "cosymplectic", "almost_dirac", "ajc", "e_normal")

    def flags(self) -> dict:
        return {n: getattr(self, n) for n in self.FLAG_NAMES if getattr(self, n) is not None}

    def implications_hold(self) -> bool:
        if self.kind == "poisson":
            ok = (not self.dirac) or (self.apc and self.quasi_dirac)
            return ok and ((not self.strong_dirac) or self.dirac)
        return (not self.dirac) or (self.ajc and self.quasi_dirac and self.almost_dirac)

    def to_dict(self) -> dict:
        out = {"kind": self.kind, **self.flags()}
        out["witnesses"] = {k: w.to_dict() for k, w in self.witnesses.items()}
        return out

    def lines(self) -> list:
        out = []
        for name, value in self.flags().items():
            w = self.witnesses.get(name)
            out.append(f"{name}: {'yes' if value else 'no'}" + (f"  ({w})" if w and not value else ""))
        return out


def _normal_block_det(T: Multivector, sub: NormalizedSubmanifold) -> Scalar:
    idx = sub.normal_indices
    rows = [[sub.restrict(T[(a, b)]) for b in idx] for a in idx]
    return determinant(rows, sub.tangent_chart)


def _vector_conditions(E: Multivector, sub: NormalizedSubmanifold, label: str):
    """For a vector field, the normal-component (algebraic) and derivative witnesses."""
    return _alt_conditions(E, sub, label)


def _tangent_values(E: Multivector, sub: NormalizedSubmanifold) -> list:
    ws = []
    for (i,), v in E.items():
        if not sub.is_normal(i):
            r = sub.restrict(v)
            if r:
                ws.append(Witness("E: tangent component vanishes on N", (E.chart.variables[i],), None, str(r)))
    return ws


def _strong_witnesses(T: Multivector, sub: NormalizedSubmanifold) -> list:
    ws = []
    for idx, v in T.items():
        if all(not sub.is_normal(i) for i in idx):
            used = v.variables_used()
            for a in sub.normal_indices:
                if a in used:
                    ws.append(Witness("normal derivative vanishes identically",
                                      _names(T.chart, idx), T.chart.variables[a], str(v.diff(a))))
    return ws


def _first(ws: list) -> Optional[Witness]:
    return ws[0] if ws else None


def classify_poisson(Pi: Multivector, sub: NormalizedSubmanifold) -> ClassificationFlags:
    v = is_poisson(Pi)
    if not v:
        raise NotPoisson(f"not a Poisson bivector: {v.witness}")
    alg, der = _alt_conditions(Pi, sub, "Pi")
    strong_ws = _strong_witnesses(Pi, sub)
    det = _normal_block_det(Pi, sub)
    apc, quasi = not alg, not der
    dirac = apc and quasi
    witnesses = {}
    for name, ws in (("apc", alg), ("soldered_algebraic", alg), ("quasi_dirac", der),
                     ("dirac", alg + der), ("soldered", alg + der),
                     ("strong_dirac", alg + der + strong_ws)):
        if ws:
            witnesses[name] = ws[0]
    cosym = det.is_unit()
    if not cosym:
        witnesses["cosymplectic"] = Witness("normal block determinant is a unit", (), None, str(det))
    return ClassificationFlags(
        kind="poisson", soldered_algebraic=apc, soldered=dirac, apc=apc, quasi_dirac=quasi,
        dirac=dirac, strong_dirac=dirac and not strong_ws, cosymplectic=cosym,
        witnesses=witnesses,
    )


def classify_jacobi(pair: JacobiPair, sub: NormalizedSubmanifold) -> ClassificationFlags:
    v = is_jacobi(pair)
    if not v:
        raise NotJacobi(f"not a Jacobi pair: {v.witness}")
    l_alg, l_der = _alt_conditions(pair.Lambda, sub, "Lambda")
    e_alg, e_der = _vector_conditions(pair.E, sub, "E")
    e_tan = _tangent_values(pair.E, sub)
    almost = not l_alg and not l_der
    ajc = not l_alg and not e_alg
    quasi = not l_der and not e_der
    dirac = almost and ajc and quasi
    det = _normal_block_det(pair.Lambda, sub)
    witnesses = {}
    for name, ws in (("soldered_algebraic", l_alg), ("soldered", l_alg + l_der),
                     ("almost_dirac", l_alg + l_der), ("ajc", l_alg + e_alg),
                     ("quasi_dirac", l_der + e_der), ("dirac", l_alg + l_der + e_alg + e_der),
                     ("e_normal", e_tan)):
        if ws:
            witnesses[name] = ws[0]
    cosym = det.is_unit()
    if not cosym:
        witnesses["cosymplectic"] = Witness("normal block determinant is a unit", (), None, str(det))
    return ClassificationFlags(
        kind="jacobi", soldered_algebraic=not l_alg, soldered=almost, quasi_dirac=quasi,
        dirac=dirac, cosymplectic=cosym, almost_dirac=almost, ajc=ajc, e_normal=not e_tan,
        witnesses=witnesses,
    )


def classify(structure: Structure, sub: NormalizedSubmanifold) -> ClassificationFlags:
    if isinstance(structure, JacobiPair):
        return classify_jacobi(structure, sub)
    return classify_poisson(structure, sub)


# induced structures


@dataclass(frozen=True)
class InducedStructure:
    """Tangential restriction ``(Lambda', E')`` on the tangent chart of ``N``."""

    kind: str
    Lambda: Multivector
    E: Multivector
    verdict: Verdict = field(compare=False)

    @property
    def pair(self) -> JacobiPair:
        return JacobiPair(self.Lambda, self.E)

    @property
    def chart(self) -> Chart:
        return self.Lambda.chart


def induced_structure(structure: Structure, sub: NormalizedSubmanifold) -> InducedStructure:
    """``(p_T Lambda|_N, p_T E|_N)``; the result is verified to be Jacobi (or Poisson)."""
    flags = classify(structure, sub)
    if flags.kind == "poisson":
        if not (flags.apc or flags.quasi_dirac):
            raise PreconditionFailed("induced Poisson structure needs apc or quasi_dirac")
        L, E = structure, Multivector.zero(structure.chart, 1)
    else:
        normal_case = flags.soldered_algebraic and flags.e_normal
        if not (flags.almost_dirac or flags.ajc or flags.quasi_dirac or normal_case):
            raise PreconditionFailed(
                "induced Jacobi structure needs almost_dirac, ajc, quasi_dirac, "
                "or Lambda algebraically compatible with E normal"
            )
        L, E = structure.Lambda, structure.E
    Lp, Ep = sub.tangential(L), sub.tangential(E)
    kind = "poisson" if not Ep else "jacobi"
    verdict = is_poisson(Lp) if kind == "poisson" else is_jacobi(JacobiPair(Lp, Ep))
    if not verdict:
        raise AssertionError(f"induced structure fails its identities: {verdict.witness}")
    return InducedStructure(kind, Lp, Ep, verdict)


def second_fundamental(structure, sub: NormalizedSubmanifold) -> SecondFundamentalData:
    """Tangential part of ``L_{d/dx^a}`` of the structure tensors on ``N``.

    Needs the algebraic compatibility flag (apc, ajc, or ``g_au|_N = 0``).
    """
    if isinstance(structure, SymmetricTwoTensor):
        v = is_soldered_symmetric(structure, sub)
        if not v.details["algebraic"]:
            raise PreconditionFailed("metric is not algebraically compatible with the normalization")
        return v.details["second_fundamental"]
    flags = classify(structure, sub)
    if flags.kind == "poisson":
        if not flags.apc:
            raise PreconditionFailed("second fundamental data needs apc")
        return _second_fundamental_raw([structure], sub)
    if not flags.ajc:
        raise PreconditionFailed("second fundamental data needs ajc")
    return _second_fundamental_raw([structure.Lambda, structure.E], sub)


# alternate normal bundles


def alternate_normal_check(Pi: Multivector, sub: NormalizedSubmanifold, theta: FrameMatrix) -> Verdict:
    """apc and Dirac for the normal bundle spanned by ``d/dx^a - theta^u_a d/dy^u``.

    ``details`` holds ``apc_tilde`` and ``dirac_tilde``.
    """
    flags = classify_poisson(Pi, sub)
    if not flags.dirac:
        raise PreconditionFailed("alternate normal check needs a Dirac submanifold")
    normals, tangents = sub.normal_names, sub.tangent_names
    R = sub.restrict
    th = {(u, a): R(theta[(u, a)]) for u in tangents for a in normals}
    comp = {}

    def P(i, j):
        key = (i, j)
        if key not in comp:
            comp[key] = Pi[key]
        return comp[key]

    def dP(i, j, c):
        return R(P(i, j).diff(c))

    cond1 = []
    for a in normals:
        for u in tangents:
            acc = Scalar.zero(sub.tangent_chart)
            for b in normals:
                if th[(u, b)]:
                    acc = acc + R(P(a, b)) * th[(u, b)]
            if acc:
                cond1.append(Witness("Pi^ab theta^u_b = 0 on N", (a, u), None, str(acc)))
    cond3 = []
    for c in normals:
        for i, u in enumerate(tangents):
            for v in tangents[i + 1:]:
                acc = Scalar.zero(sub.tangent_chart)
                for a in normals:
                    tua, tva = th[(u, a)], th[(v, a)]
                    if tua:
                        for b in normals:
                            if th[(v, b)]:
                                acc = acc + tua * th[(v, b)] * dP(a, b, c)
                        acc = acc + tua * dP(a, v, c)
                    if tva:
                        acc = acc + tva * dP(u, a, c)
                for w in tangents:
                    if th[(w, c)]:
                        acc = acc - th[(w, c)] * dP(u, v, w)
                if acc:
                    cond3.append(Witness("normal derivative in the new frame vanishes on N",
                                         (u, v), c, str(acc)))
    apc_t = not cond1
    dirac_t = apc_t and not cond3
    ws = cond1 + cond3
    return Verdict(dirac_t, ws[0] if ws else None,
                   {"apc_tilde": apc_t, "dirac_tilde": dirac_t}, tuple(ws))


def frame_change_map(sub: NormalizedSubmanifold, theta: Mapping[Tuple[str, str], object]) -> PolyMap:
    """Coordinates ``y~^u = y^u + theta^u_a (x^a - c^a)`` with constant ``theta``.

    In the new coordinates ``d/dx~^a = d/dx^a - theta^u_a d/dy^u``.
    """
    chart = sub.chart
    fwd, inv = {}, {}
    for u in sub.tangent_names:
        shift = Scalar.zero(chart)
        for a in sub.normal_names:
            c = Fraction(theta.get((u, a), 0))
            if c:
                shift = shift + c * sub.coordinate_shift(a)
        y = Scalar.variable(chart, u)
        fwd[u], inv[u] = y + shift, y - shift
    return PolyMap(chart, chart, fwd, inv)


# conformal flattening


def conformal_flatten(pair: JacobiPair, sub: NormalizedSubmanifold) -> Scalar:
    """``phi = sum_a (x^a - c^a) mu_a(y)`` with ``Lambda^ab mu_b = E^a`` on ``N``."""
    l_alg, _ = _alt_conditions(pair.Lambda, sub, "Lambda")
    if l_alg:
        raise PreconditionFailed(f"Lambda^au must vanish on N: {l_alg[0]}")
    normals = sub.normal_indices
    rhs = [sub.restrict(pair.E[(a,)]) for a in normals]
    if not any(rhs):
        return Scalar.zero(sub.chart)
    rows = [[sub.restrict(pair.Lambda[(a, b)]) for b in normals] for a in normals]
    mu = solve_unit(rows, rhs, sub.tangent_chart)
    phi = Scalar.zero(sub.chart)
    for a, m in zip(normals, mu):
        if m:
            phi = phi + sub.coordinate_shift(sub.chart.variables[a]) * sub.lift(m)
    return phi


# tubular neighbourhood characterization


def _on_full_chart(f: Scalar, sub: NormalizedSubmanifold, label: str) -> Scalar:
    if f.chart == sub.tangent_chart:
        return sub.lift(f)
    sub.chart.check_same(f.chart)
    for a in sub.normal_indices:
        if f.depends_on(sub.chart.variables[a]):
            raise NotTangentFunction(f"{label} depends on normal variable {sub.chart.variables[a]!r}")
    return f


def tubular_poisson_check(Pi: Multivector, sub: NormalizedSubmanifold, f: Scalar, g: Scalar) -> Verdict:
    """Bracket of projected functions versus the tangential bivector, along ``N``."""
    F, G = _on_full_chart(f, sub, "f"), _on_full_chart(g, sub, "g")
    Pp = sub.tangential(Pi)
    fN, gN = sub.restrict(F), sub.restrict(G)
    br = poisson_bracket(Pi, F, G)
    carac = zero_verdict(sub.restrict(br) - poisson_bracket(Pp, fN, gN), "{f,g}' = {f o s, g o s} on N")
    comp_ws = []
    for h, hN in ((F, fN), (G, gN)):
        full = sharp(Pi, differential(h))
        along = sharp(Pp, differential(hN))
        for (i,), v in full.items():
            r = sub.restrict(v)
            if sub.is_normal(i):
                if r:
                    comp_ws.append(Witness("sharp(dh o s) is tangent on N", (sub.chart.variables[i],), None, str(r)))
        restricted = Multivector._raw(
            sub.tangent_chart, 1,
            {(sub._positions[i],): sub.restrict(v) for (i,), v in full.items()
             if not sub.is_normal(i) and sub.restrict(v)},
        )
        d = restricted - along
        for (j,), v in d.items():
            comp_ws.append(Witness("sharp'(dh) = sharp(dh o s) on N", (sub.tangent_names[j],), None, str(v)))
    compd = Verdict(not comp_ws, _first(comp_ws), {}, tuple(comp_ws))
    pt_ws, strong = [], True
    for a in sub.normal_indices:
        dv = br.diff(a)
        if dv:
            strong = False
            r = sub.restrict(dv)
            if r:
                pt_ws.append(Witness("normal derivative of the bracket vanishes on N", (),
                                     sub.chart.variables[a], str(r)))
    ptd = Verdict(not pt_ws, _first(pt_ws), {}, tuple(pt_ws))
    return combine(("caracttub", carac), ("compD", compd), ("ptDirac", ptd), strong=strong)


# closure harness


def soldered_closure_suite(sub: NormalizedSubmanifold, samples: int = 10, seed: int = 0,
                           Pi: Optional[Multivector] = None) -> Verdict:
    """Random soldered tensors stay soldered under wedge, d, contraction and brackets.

    With a soldered Poisson ``Pi`` also checks that ``sharp`` preserves soldering
    and that ``-[Pi, sharp k] = -sharp(d k)`` for the cochain ``sharp``.
    """
    from .sampling import random_soldered

    rng = random.Random(seed)
    n = sub.chart.dim
    failures = []
    counts = {"wedge": 0, "d": 0, "interior": 0, "schouten": 0, "hr": 0, "sharp": 0, "chain": 0}

    def need(name, T):
        counts[name] += 1
        v = is_soldered(T, sub)
        if not v:
            failures.append(Witness(f"closure under {name}", v.witness.component,
                                    v.witness.direction, v.witness.value))

    if Pi is not None:
        if not is_poisson(Pi):
            raise NotPoisson("closure suite needs a Poisson bivector")
        if not is_soldered_multivector(Pi, sub):
            raise PreconditionFailed("closure suite needs Pi soldered to N")
    for _ in range(samples):
        p, q = rng.randint(0, min(2, n)), rng.randint(0, min(2, n))
        a = random_soldered(sub, DifferentialForm, p, rng)
        b = random_soldered(sub, DifferentialForm, q, rng)
        need("wedge", wedge(a, b))
        if p < n:
            need("d", exterior_derivative(a))
        P = random_soldered(sub, Multivector, p, rng)
        Q = random_soldered(sub, Multivector, q, rng)
        need("wedge", wedge(P, Q))
        if p + q >= 1:
            need("schouten", schouten_bracket(P, Q))
        Y = random_soldered(sub, Multivector, 1, rng)
        Z = random_soldered(sub, Multivector, 1, rng)
        f = random_soldered(sub, Multivector, 0, rng).scalar()
        if p >= 1:
            need("interior", interior_product(Y, a))
        need("hr", f * Y)
        need("hr", schouten_bracket(Y, Z))
        need("hr", Multivector.from_scalar(vector_apply(Y, f)))
        if Pi is not None:
            k = random_soldered(sub, DifferentialForm, min(p, 2), rng)
            need("sharp", sharp_cochain(Pi, k))
            counts["chain"] += 1
            if n > k.degree:
                lhs = -schouten_bracket(Pi, sharp_cochain(Pi, k))
                rhs = -sharp_cochain(Pi, exterior_derivative(k))
                if lhs != rhs:
                    failures.append(Witness("dPi o sharp = -sharp o d", (), None, str(lhs - rhs)))
    return Verdict(not failures, _first(failures), counts, tuple(failures))


# involutions


def _locus_from_involution(phi: PolyMap) -> NormalizedSubmanifold:
    chart = phi.source
    normals = {}
    for v in chart.variables:
        comp = phi.components[v]
        used = {chart.variables[i] for i in comp.variables_used()}
        if used - {v}:
            raise LocusNotCoordinate(f"image of {v} depends on {sorted(used - {v})}")
        x = Scalar.variable(chart, v)
        if comp == x:
            continue
        if comp == -x:
            normals[v] = Fraction(0)
            continue
        if chart.is_laurent(v):
            k = (comp * x).constant_value()
            if k is not None and k > 0:
                root = _rational_sqrt(Fraction(k))
                if root is not None:
                    normals[v] = root
                    continue
        raise LocusNotCoordinate(f"cannot read a coordinate fixed locus from {v} -> {comp}")
    return NormalizedSubmanifold.make(chart, normals, name="Fix")


def _rational_sqrt(k: Fraction) -> Optional[Fraction]:
    from math import isqrt

    n, d = k.numerator, k.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def involution_fixed_locus_check(T, phi: PolyMap) -> Verdict:
    """If ``phi`` preserves ``T``, then ``T`` is soldered to the fixed locus with the (-1)-eigenbundle.

    Raises :class:`NotPreserved` carrying the defect tensor otherwise.
    """
    if not phi.is_involution():
        raise NotInvolution("map is not its own inverse")
    sub = _locus_from_involution(phi)
    if isinstance(T, Multivector):
        image = pushforward(T, phi)
    elif isinstance(T, (DifferentialForm, SymmetricTwoTensor)):
        image = pullback(T, phi)
    else:
        raise TypeError(f"unsupported tensor {type(T).__name__}")
    defect = image - T
    if defect:
        raise NotPreserved(f"the involution does not preserve the tensor:\n{defect}", defect)
    v = is_soldered(T, sub)
    return Verdict(v.ok, v.witness, {"locus": sub, **v.details}, v.all_witnesses)


__all__ = [
    "NormalizedSubmanifold", "FrameMatrix", "ClassificationFlags", "InducedStructure",
    "SecondFundamentalData", "is_soldered_form", "is_soldered_multivector",
    "is_soldered_symmetric", "is_soldered", "classify_poisson", "classify_jacobi", "classify",
    "induced_structure", "second_fundamental", "alternate_normal_check", "frame_change_map",
    "conformal_flatten", "conformal_change", "tubular_poisson_check", "soldered_closure_suite",
    "involution_fixed_locus_check", "passed", "Union",
]

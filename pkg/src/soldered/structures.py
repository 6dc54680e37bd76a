"""Poisson, Jacobi, homogeneous, contact and l.c.s. structures on a chart."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .calculus import (
    differential,
    evaluate_at_point,
    exterior_derivative,
    flat,
    interior_product,
    lie_derivative,
    schouten_bracket,
    sharp,
    vector_apply,
    wedge,
)
from .chart import Chart
from .conventions import DEFAULT_TAU
from .errors import DegreeMismatch, NondegeneracyFailure, PreconditionFailed
from .report import Verdict, Witness, combine, zero_verdict
from .scalar import Scalar
from .tensors import DifferentialForm, Multivector, check_same_chart


def _need(t, degree: int, what: str) -> None:
    if not isinstance(t, Multivector) or t.degree != degree:
        raise DegreeMismatch(f"{what} must be a degree-{degree} multivector")


@dataclass(frozen=True)
class JacobiPair:
    """Bivector ``Lambda`` and vector field ``E`` on one chart (validity not assumed)."""

    Lambda: Multivector
    E: Multivector

    def __post_init__(self):
        _need(self.Lambda, 2, "Lambda")
        _need(self.E, 1, "E")
        check_same_chart(self.Lambda, self.E)

    @property
    def chart(self) -> Chart:
        return self.Lambda.chart

    @classmethod
    def poisson(cls, Pi: Multivector) -> "JacobiPair":
        return cls(Pi, Multivector.zero(Pi.chart, 1))


@dataclass(frozen=True)
class HomogeneousPoisson:
    Pi: Multivector
    Z: Multivector

    def __post_init__(self):
        _need(self.Pi, 2, "Pi")
        _need(self.Z, 1, "Z")
        check_same_chart(self.Pi, self.Z)

    @property
    def chart(self) -> Chart:
        return self.Pi.chart


@dataclass(frozen=True)
class ContactData:
    theta: DifferentialForm
    E: Multivector
    Lambda: Multivector

    @property
    def chart(self) -> Chart:
        return self.theta.chart

    @property
    def pair(self) -> JacobiPair:
        return JacobiPair(self.Lambda, self.E)


@dataclass(frozen=True)
class LcsData:
    Omega: DifferentialForm
    omega: DifferentialForm
    Lambda: Multivector
    E: Multivector

    @property
    def chart(self) -> Chart:
        return self.Omega.chart

    @property
    def pair(self) -> JacobiPair:
        return JacobiPair(self.Lambda, self.E)


Structure = Union[Multivector, JacobiPair]


def _as_pair(structure: Structure) -> JacobiPair:
    if isinstance(structure, JacobiPair):
        return structure
    _need(structure, 2, "Poisson structure")
    return JacobiPair.poisson(structure)


def is_poisson(Pi: Multivector) -> Verdict:
    """``[Pi, Pi] = 0``."""
    _need(Pi, 2, "Pi")
    return zero_verdict(schouten_bracket(Pi, Pi), "[Pi,Pi] = 0")


def is_jacobi(pair: JacobiPair) -> Verdict:
    """``[L, L] = -2 E ^ L`` and ``L_E L = 0``."""
    L, E = pair.Lambda, pair.E
    first = zero_verdict(schouten_bracket(L, L) + 2 * wedge(E, L), "[Lambda,Lambda] + 2 E^Lambda = 0")
    second = zero_verdict(lie_derivative(E, L), "L_E Lambda = 0")
    return combine(("bracket", first), ("invariance", second))


def poisson_bracket(Pi: Multivector, f: Scalar, g: Scalar) -> Scalar:
    return vector_apply(sharp(Pi, differential(f)), g)


def jacobi_bracket(structure: Structure, f: Scalar, g: Scalar) -> Scalar:
    """``{f, g} = L(df, dg) + f E g - g E f``."""
    pair = _as_pair(structure)
    out = poisson_bracket(pair.Lambda, f, g)
    if pair.E:
        out = out + f * vector_apply(pair.E, g) - g * vector_apply(pair.E, f)
    return out


def hamiltonian_field(structure: Structure, f: Scalar) -> Multivector:
    """``X_f = #df + f E`` (``E = 0`` for a bare bivector)."""
    pair = _as_pair(structure)
    X = sharp(pair.Lambda, differential(f))
    return X + f * pair.E if pair.E else X


def _homog2_defect(Pi: Multivector, Z: Multivector, phi: Scalar, psi: Scalar) -> Scalar:
    # {phi,psi} - Z{phi,psi} + [Z,X_phi]psi - [Z,X_psi]phi
    br = poisson_bracket(Pi, phi, psi)
    zx_phi = schouten_bracket(Z, hamiltonian_field(Pi, phi))
    zx_psi = schouten_bracket(Z, hamiltonian_field(Pi, psi))
    return br - vector_apply(Z, br) + vector_apply(zx_phi, psi) - vector_apply(zx_psi, phi)


def is_homogeneous(Pi: Multivector, Z: Multivector) -> Verdict:
    """``L_Z Pi = -Pi``, with the equivalent bracket form checked on coordinate pairs."""
    _need(Pi, 2, "Pi")
    _need(Z, 1, "Z")
    main = zero_verdict(lie_derivative(Z, Pi) + Pi, "L_Z Pi + Pi = 0")
    coords = Pi.chart.vars()
    names = Pi.chart.variables
    bracket_ok = True
    bad = None
    for i in range(len(coords)):
        for j in range(i + 1, len(coords)):
            defect = _homog2_defect(Pi, Z, coords[i], coords[j])
            if defect:
                bracket_ok = False
                bad = Witness("bracket form of homogeneity", (names[i], names[j]), None, str(defect))
                break
        if bad:
            break
    if main.ok != bracket_ok:
        raise AssertionError("homogeneity and its bracket form disagree")
    if bad and main.ok:
        return Verdict(False, bad, {"bracket_form": False}, (bad,))
    return Verdict(main.ok, main.witness, {"bracket_form": bracket_ok}, main.all_witnesses)


def poissonize(pair: JacobiPair, tau: str = DEFAULT_TAU) -> HomogeneousPoisson:
    """``Pi = exp(-tau) (Lambda + d/dtau ^ E)`` and ``Z = d/dtau`` on the chart extended by ``tau``."""
    chart = pair.chart.extend(tau, name=f"{pair.chart.name}xR")
    L = pair.Lambda.transfer(chart)
    E = pair.E.transfer(chart)
    dtau = Multivector.basis(chart, tau)
    factor = Scalar.exp(-Scalar.variable(chart, tau))
    return HomogeneousPoisson(factor * (L + wedge(dtau, E)), dtau)


def conformal_change(structure: Structure, phi: Scalar) -> JacobiPair:
    """``(exp(phi) L, exp(phi) (E + i(d phi) L))``."""
    pair = _as_pair(structure)
    check_same_chart(pair.Lambda, phi)
    ephi = Scalar.exp(phi)
    E = pair.E + interior_product(differential(phi), pair.Lambda)
    return JacobiPair(ephi * pair.Lambda, ephi * E)


def is_infinitesimal_automorphism(X: Multivector, Pi: Multivector) -> Verdict:
    _need(X, 1, "X")
    _need(Pi, 2, "Pi")
    return zero_verdict(lie_derivative(X, Pi), "L_X Pi = 0")


def default_point(chart: Chart) -> dict:
    """Origin of the chart, with Laurent variables at 1."""
    return {v: (1 if f else 0) for v, f in zip(chart.variables, chart.laurent)}


def _power(form: DifferentialForm, m: int) -> DifferentialForm:
    out = DifferentialForm.from_scalar(Scalar.one(form.chart))
    for _ in range(m):
        out = wedge(out, form)
    return out


def _nonzero_at(form: DifferentialForm, point: Mapping, what: str) -> None:
    if not evaluate_at_point(form, point):
        raise NondegeneracyFailure(f"{what} vanishes at the witness point {dict(point)}")


def contact_verify(data: ContactData, point: Optional[Mapping] = None) -> Verdict:
    """Reeb equations, contact hamiltonian fields and the Jacobi identities."""
    chart = data.chart
    if chart.dim % 2 == 0:
        raise NondegeneracyFailure("a contact chart has odd dimension")
    m = chart.dim // 2
    theta = data.theta
    dtheta = exterior_derivative(theta)
    _nonzero_at(wedge(theta, _power(dtheta, m)), point or default_point(chart), "theta ^ (dtheta)^m")
    one = Scalar.one(chart)
    reeb = combine(
        ("reeb_theta", zero_verdict(interior_product(data.E, theta).scalar() - one, "i(E)theta = 1")),
        ("reeb_dtheta", zero_verdict(interior_product(data.E, dtheta), "i(E)dtheta = 0")),
    )
    hams = []
    for f in [one] + chart.vars():
        X = hamiltonian_field(data.pair, f)
        hams.append(zero_verdict(interior_product(X, theta).scalar() - f, f"i(X_{f})theta = f"))
        rhs = -differential(f) + vector_apply(data.E, f) * theta
        hams.append(zero_verdict(interior_product(X, dtheta) - rhs, f"i(X_{f})dtheta = -df + (Ef)theta"))
    ham = combine(*((f"h{i}", v) for i, v in enumerate(hams)))
    return combine(("reeb", reeb), ("hamiltonian", ham), ("jacobi", is_jacobi(data.pair)))


def lcs_verify(data: LcsData, point: Optional[Mapping] = None) -> Verdict:
    """Closed Lee form, ``dW = w ^ W``, ``flat o #' = Id``, ``E = #'w`` and Jacobi.

    ``#'a = L(., a)`` is the second-slot contraction, ``-sharp(L, a)``.
    """
    chart = data.chart
    if chart.dim % 2:
        raise NondegeneracyFailure("an l.c.s. chart has even dimension")
    _nonzero_at(_power(data.Omega, chart.dim // 2), point or default_point(chart), "Omega^m")
    W, w = data.Omega, data.omega
    inverse = []
    for v in chart.variables:
        dz = DifferentialForm.basis(chart, v)
        inverse.append(zero_verdict(flat(W, sharp(data.Lambda, dz)) + dz, f"flat(#'d{v}) = d{v}"))
    return combine(
        ("lee_closed", zero_verdict(exterior_derivative(w), "d omega = 0")),
        ("structure", zero_verdict(exterior_derivative(W) - wedge(w, W), "dOmega = omega ^ Omega")),
        ("inverse", combine(*((f"i{i}", v) for i, v in enumerate(inverse)))),
        ("reeb", zero_verdict(data.E + sharp(data.Lambda, w), "E = #'omega")),
        ("jacobi", is_jacobi(data.pair)),
    )


def symplectization_form(theta: DifferentialForm, tau: str = DEFAULT_TAU) -> DifferentialForm:
    """``exp(tau) (dtheta + dtau ^ theta)`` on the chart extended by ``tau``."""
    chart = theta.chart.extend(tau, name=f"{theta.chart.name}xR")
    th = theta.transfer(chart)
    dtau = DifferentialForm.basis(chart, tau)
    return Scalar.exp(Scalar.variable(chart, tau)) * (exterior_derivative(th) + wedge(dtau, th))


def symplectization_check(data: ContactData, Pi: Optional[Multivector] = None,
                          point: Optional[Mapping] = None, tau: str = DEFAULT_TAU) -> Verdict:
    """``sharp_Pi o flat_Omega = -Id`` on ``M x R`` for the Poissonized contact pair."""
    pre = contact_verify(data, point)
    if not pre:
        raise PreconditionFailed(f"contact data fails verification: {pre.witness}")
    Omega = symplectization_form(data.theta, tau)
    if Pi is None:
        Pi = poissonize(data.pair, tau).Pi
    chart = Omega.chart
    checks = []
    for v in chart.variables:
        dv = Multivector.basis(chart, v)
        img = sharp(Pi, flat(Omega, dv))
        checks.append((v, zero_verdict(img + dv, f"sharp(flat(d/d{v})) = -d/d{v}")))
    return combine(*checks)


def contact_darboux(m: int) -> ContactData:
    """``theta = dz - sum y_i dx_i`` on ``(x_1..x_m, y_1..y_m, z)``."""
    xs = [f"x{i}" for i in range(1, m + 1)]
    ys = [f"y{i}" for i in range(1, m + 1)]
    chart = Chart.make(f"R{2 * m + 1}", xs + ys + ["z"])
    theta = DifferentialForm.basis(chart, "z")
    L = Multivector.zero(chart, 2)
    for x, y in zip(xs, ys):
        yv = Scalar.variable(chart, y)
        theta = theta - yv * DifferentialForm.basis(chart, x)
        L = L + Multivector.basis(chart, x, y) + yv * Multivector.basis(chart, "z", y)
    return ContactData(theta, Multivector.basis(chart, "z"), L)


def lcs_conformal(Omega0: DifferentialForm, sigma: Scalar) -> LcsData:
    """``Omega = exp(-sigma) Omega0`` for a constant symplectic ``Omega0``.

    The matching ``Lambda`` satisfies ``flat o #' = Id`` with ``#'a = L(., a)``.
    """
    from .linalg import invert_rational

    chart = Omega0.chart
    n = chart.dim
    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            c = Omega0[(i, j)].constant_value()
            if c is None:
                raise PreconditionFailed("Omega0 must have constant coefficients")
            row.append(c)
        mat.append(row)
    # -sum_j L^kj W_jl = delta_kl, so L is minus the matrix inverse of W
    inv = invert_rational(mat)
    comps = {}
    for k in range(n):
        for j in range(k + 1, n):
            if inv[k][j]:
                comps[(k, j)] = -inv[k][j]
    L0 = Multivector(chart, 2, comps)
    Omega = Scalar.exp(-sigma) * Omega0
    omega = -differential(sigma)
    L = Scalar.exp(sigma) * L0
    return LcsData(Omega, omega, L, -sharp(L, omega))


def symplectic_inverse(Omega: DifferentialForm) -> Multivector:
    """Constant-coefficient ``Pi`` with ``sharp_Pi o flat_Omega = -Id``."""
    return lcs_conformal(Omega, Scalar.zero(Omega.chart)).Lambda


__all__ = [
    "JacobiPair", "HomogeneousPoisson", "ContactData", "LcsData",
    "is_poisson", "is_jacobi", "poisson_bracket", "jacobi_bracket", "hamiltonian_field",
    "is_homogeneous", "poissonize", "conformal_change", "is_infinitesimal_automorphism",
    "contact_verify", "lcs_verify", "symplectization_form", "symplectization_check",
    "contact_darboux", "lcs_conformal", "symplectic_inverse", "default_point",
]

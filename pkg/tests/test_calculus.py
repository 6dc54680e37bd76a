import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from soldered.calculus import (
    PolyMap,
    contract_symmetric,
    d,
    evaluate_at_point,
    flat,
    interior_product,
    lie_derivative,
    pullback,
    pushforward,
    schouten_bracket,
    sharp,
    sharp_cochain,
    sharp_form,
    vector_apply,
    wedge,
)
from soldered.chart import Chart
from soldered.errors import DegreeMismatch, NotInvertible
from soldered.models import example_pair, symplectic_canonical
from soldered.sampling import random_polynomial, random_tensor
from soldered.scalar import Scalar
from soldered.tensors import DifferentialForm, Multivector, SymmetricTwoTensor, sort_sign

from conftest import seeds

M4 = Chart.make("M4", ["a", "b", "c", "e"])
M3 = Chart.make("M3", ["x", "y", "z"])


def V(chart, name):
    return Scalar.variable(chart, name)


def rt(kind, k, rng, chart=M4):
    return random_tensor(chart, kind, k, rng, density=0.6)


def comp(T, idx):
    """Fully antisymmetric component for an arbitrary index tuple (oracle helper)."""
    sign, key = sort_sign(idx)
    if sign == 0:
        return Scalar.zero(T.chart)
    v = T._c.get(key, Scalar.zero(T.chart))
    return v if sign > 0 else -v


# wedge


def test_wedge_examples():
    dx, dy = DifferentialForm.basis(M3, "x"), DifferentialForm.basis(M3, "y")
    px = Multivector.basis(M3, "x")
    assert not wedge(px, px)
    assert wedge(dx, dy) == -wedge(dy, dx)
    R = Chart.make("R", ["tau", "t"])
    E = Multivector(R, 1, {"t": V(R, "t")})
    w = wedge(Multivector.basis(R, "tau"), E)
    assert w[("tau", "t")] == V(R, "t")


@given(seeds)
def test_wedge_graded_commutative_and_associative(seed):
    rng = random.Random(seed)
    kind = rng.choice([Multivector, DifferentialForm])
    p, q, r = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1)
    A, B, C = rt(kind, p, rng), rt(kind, q, rng), rt(kind, r, rng)
    assert wedge(A, B) == (-1) ** (p * q) * wedge(B, A)
    assert wedge(wedge(A, B), C) == wedge(A, wedge(B, C))


# exterior derivative


def test_exterior_derivative_examples():
    x, y = V(M3, "x"), V(M3, "y")
    assert d(DifferentialForm(M3, 1, {"y": x})) == DifferentialForm(M3, 2, {("x", "y"): 1})
    theta = DifferentialForm(M3, 1, {"z": 1, "x": -y})
    assert not d(d(theta))
    P = Chart.make("P", ["x", "y"])
    Omega = Scalar.exp(-V(P, "x")) * DifferentialForm(P, 2, {("x", "y"): 1})
    omega = DifferentialForm(P, 1, {"x": -1})
    assert d(Omega) == wedge(omega, Omega)


@given(seeds)
def test_d_squared_and_leibniz(seed):
    rng = random.Random(seed)
    p, q = rng.randint(0, 2), rng.randint(0, 1)
    a, b = rt(DifferentialForm, p, rng), rt(DifferentialForm, q, rng)
    assert not d(d(a))
    assert d(wedge(a, b)) == wedge(d(a), b) + (-1) ** p * wedge(a, d(b))


# interior product


def test_interior_examples():
    assert interior_product(Multivector.basis(M3, "x"), DifferentialForm.basis(M3, "x", "y")) \
        == DifferentialForm.basis(M3, "y")
    assert interior_product(DifferentialForm.basis(M3, "y"), Multivector.basis(M3, "x", "y")) \
        == -Multivector.basis(M3, "x")
    with pytest.raises(DegreeMismatch):
        interior_product(Multivector.basis(M3, "x", "y"), DifferentialForm.basis(M3, "x"))


def test_sharp_of_tangent_covector_in_adapted_coordinates():
    A = Chart.make("A", ["x", "y1", "y2"])
    Pi = Multivector(A, 2, {("x", "y1"): V(A, "y2"), ("y1", "y2"): V(A, "x") + 1})
    s = sharp(Pi, DifferentialForm.basis(A, "y1"))
    # (#dy^u)^j = Pi^{u j}: the x-part is Pi^{u a}, the y-part Pi^{u v}
    assert s["x"] == -V(A, "y2") and s["y2"] == V(A, "x") + 1


# Schouten bracket


def test_schouten_examples():
    x = V(M3, "x")
    assert schouten_bracket(Multivector.basis(M3, "x"), Multivector.from_scalar(x)).scalar() == 1
    P = Multivector.basis(M3, "x", "y")
    assert not schouten_bracket(P, P)
    pair = example_pair(1)
    L, E = pair.Lambda, pair.E
    assert schouten_bracket(L, L) == -2 * wedge(E, L)


def lichnerowicz_rhs(P, Q, w):
    p, q = P.degree, Q.degree
    t1 = interior_product(P, d(interior_product(Q, w)))
    t2 = interior_product(Q, d(interior_product(P, w)))
    t3 = interior_product(wedge(P, Q), d(w))
    return (-1) ** ((p + 1) * (q + 1)) * t1 - t2 + (-1) ** p * t3


def test_lichnerowicz_identity_fifty_random_triples():
    rng = random.Random(2024)
    cases = [(p, q) for p in range(1, 4) for q in range(1, 4) if p + q <= 4]
    for k in range(50):
        p, q = cases[k % len(cases)]
        P, Q = rt(Multivector, p, rng), rt(Multivector, q, rng)
        w = rt(DifferentialForm, p + q - 1, rng)
        assert interior_product(schouten_bracket(P, Q), w) == lichnerowicz_rhs(P, Q, w)


@given(seeds)
def test_bivector_self_bracket_matches_cyclic_formula(seed):
    rng = random.Random(seed)
    P = rt(Multivector, 2, rng)
    B = schouten_bracket(P, P)
    for i, j, k in itertools.combinations(range(4), 3):
        expected = Scalar.zero(M4)
        for (u, v, w) in ((i, j, k), (j, k, i), (k, i, j)):
            for l in range(4):
                expected = expected + comp(P, (u, l)) * comp(P, (v, w)).diff(l)
        assert B[(i, j, k)] == 2 * expected


@given(seeds)
def test_vector_bracket_is_lie_bracket(seed):
    rng = random.Random(seed)
    X, Y = rt(Multivector, 1, rng), rt(Multivector, 1, rng)
    B = schouten_bracket(X, Y)
    for i in range(4):
        expected = Scalar.zero(M4)
        for j in range(4):
            expected = expected + X[(j,)] * Y[(i,)].diff(j) - Y[(j,)] * X[(i,)].diff(j)
        assert B[(i,)] == expected


@given(seeds)
def test_schouten_graded_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    p, q, r = (rng.randint(0, 3) for _ in range(3))
    P, Q, R = rt(Multivector, p, rng), rt(Multivector, q, rng), rt(Multivector, r, rng)
    if p + q >= 1:
        assert schouten_bracket(P, Q) == -(-1) ** ((p - 1) * (q - 1)) * schouten_bracket(Q, P)
    if p + q + r >= 2 and min(p + q, q + r, r + p) >= 1:
        s = lambda a, b: (-1) ** ((a - 1) * (b - 1))  # noqa: E731
        total = (s(p, r) * schouten_bracket(P, schouten_bracket(Q, R))
                 + s(q, p) * schouten_bracket(Q, schouten_bracket(R, P))
                 + s(r, q) * schouten_bracket(R, schouten_bracket(P, Q)))
        assert not total


@given(seeds)
def test_lie_derivative_is_derivation_of_bracket(seed):
    rng = random.Random(seed)
    p, q = rng.randint(0, 2), rng.randint(1, 2)
    X = rt(Multivector, 1, rng)
    P, Q = rt(Multivector, p, rng), rt(Multivector, q, rng)
    lhs = lie_derivative(X, schouten_bracket(P, Q))
    rhs = schouten_bracket(lie_derivative(X, P), Q) + schouten_bracket(P, lie_derivative(X, Q))
    assert lhs == rhs


# Lie derivatives


def test_lie_derivative_examples():
    R = Chart.make("R", ["tau", "x", "y"])
    T = Scalar.exp(-V(R, "tau")) * Multivector.basis(R, "x", "y")
    assert lie_derivative(Multivector.basis(R, "tau"), T) == -T
    X = Multivector(M3, 1, {"x": V(M3, "x")})
    assert lie_derivative(X, Multivector.basis(M3, "x", "y")) == -Multivector.basis(M3, "x", "y")
    with pytest.raises(DegreeMismatch):
        lie_derivative(Multivector.basis(M3, "x", "y"), X)


def coordinate_lie_form(X, k):
    """(L_X k)_I = X^l d_l k_I + sum_j (d_{i_j} X^l) k_{i_1..l..i_k}."""
    n = k.chart.dim
    out = {}
    for I in itertools.combinations(range(n), k.degree):
        acc = Scalar.zero(k.chart)
        for l in range(n):
            acc = acc + X[(l,)] * comp(k, I).diff(l)
            for j, ij in enumerate(I):
                J = I[:j] + (l,) + I[j + 1:]
                acc = acc + X[(l,)].diff(ij) * comp(k, J)
        if acc:
            out[I] = acc
    return DifferentialForm._raw(k.chart, k.degree, out)


@given(seeds)
def test_lie_derivative_of_forms_matches_coordinate_formula(seed):
    rng = random.Random(seed)
    X, k = rt(Multivector, 1, rng), rt(DifferentialForm, rng.randint(0, 3), rng)
    assert lie_derivative(X, k) == coordinate_lie_form(X, k)


@given(seeds)
def test_lie_derivative_of_f_times_x(seed):
    rng = random.Random(seed)
    f = random_polynomial(M4, rng)
    X = rt(Multivector, 1, rng)
    kdeg = rng.randint(1, 3)
    k = rt(DifferentialForm, kdeg, rng)
    lhs = lie_derivative(f * X, k)
    LX, iX = lie_derivative(X, k), interior_product(X, k)
    for I in itertools.combinations(range(4), kdeg):
        expected = f * comp(LX, I)
        for j, ij in enumerate(I, start=1):
            rest = I[:j - 1] + I[j:]
            expected = expected - (-1) ** j * f.diff(ij) * comp(iX, rest)
        assert comp(lhs, I) == expected


@given(seeds)
def test_lie_derivative_of_metric(seed):
    rng = random.Random(seed)
    g = SymmetricTwoTensor(M3, {(i, j): random_polynomial(M3, rng)
                                for i in range(3) for j in range(i, 3) if rng.random() < 0.6})
    X, Y, Z = (rt(Multivector, 1, rng, M3) for _ in range(3))
    lhs = contract_symmetric(lie_derivative(X, g), Y, Z)
    rhs = (vector_apply(X, contract_symmetric(g, Y, Z))
           - contract_symmetric(g, schouten_bracket(X, Y), Z)
           - contract_symmetric(g, Y, schouten_bracket(X, Z)))
    assert lhs == rhs


@given(seeds)
def test_cartan_formula(seed):
    rng = random.Random(seed)
    X, k = rt(Multivector, 1, rng), rt(DifferentialForm, rng.randint(0, 3), rng)
    rhs = interior_product(X, d(k))
    if k.degree:
        rhs = rhs + d(interior_product(X, k))
    assert lie_derivative(X, k) == rhs


# sharp and flat


def test_sharp_flat_examples():
    assert sharp(Multivector.basis(M3, "x", "y"), DifferentialForm.basis(M3, "x")) == Multivector.basis(M3, "y")
    assert flat(DifferentialForm.basis(M3, "x", "y"), Multivector.basis(M3, "x")) == DifferentialForm.basis(M3, "y")
    omega, Pi, _ = symplectic_canonical(1, 1)
    for v in omega.chart.variables:
        e = Multivector.basis(omega.chart, v)
        assert sharp(Pi, flat(omega, e)) == -e


def test_chain_identity_for_lie_poisson():
    x, y, z = (V(M3, v) for v in "xyz")
    Pi = Multivector(M3, 2, {("x", "y"): z, ("y", "z"): x, ("z", "x"): y})
    rng = random.Random(5)
    for k in range(3):
        for _ in range(4):
            kappa = rt(DifferentialForm, k, rng, M3)
            assert -schouten_bracket(Pi, sharp_form(Pi, kappa)) == sharp_form(Pi, d(kappa))
            assert -schouten_bracket(Pi, sharp_cochain(Pi, kappa)) == -sharp_cochain(Pi, d(kappa))
    alpha = rt(DifferentialForm, 1, rng, M3)
    assert sharp_cochain(Pi, alpha) == sharp(Pi, alpha)


# maps


def shear(chart, rng):
    """(.., v_j + p(v_0..v_{j-1}), ..): polynomial with polynomial inverse."""
    names = chart.variables
    j = rng.randint(1, len(names) - 1)
    p = random_polynomial(chart, rng, terms=2, variables=list(names[:j]))
    w = V(chart, names[j])
    return PolyMap(chart, chart, {names[j]: w + p}, {names[j]: w - p})


def random_map(chart, rng):
    phi = shear(chart, rng)
    first = chart.variables[0]
    flip = PolyMap.involution(chart, {first: -V(chart, first)})
    return shear(chart, rng).compose(flip).compose(phi)


def test_pushforward_examples():
    pair = example_pair(1)
    c = pair.chart
    t_flip = PolyMap.involution(c, {"t": -V(c, "t")})
    assert pushforward(pair.Lambda, t_flip) == pair.Lambda
    assert pushforward(pair.E, t_flip) == pair.E
    uq = PolyMap.involution(c, {"u1": -V(c, "u1"), "q1": -V(c, "q1")})
    assert pushforward(pair.Lambda, uq) == pair.Lambda
    ident = PolyMap.identity(c)
    assert pushforward(pair.Lambda, ident) == pair.Lambda


def test_not_invertible():
    x = V(M3, "x")
    with pytest.raises(NotInvertible):
        PolyMap(M3, M3, {"x": x * x}, {"x": x})


@given(seeds)
def test_pushforward_functorial_and_respects_structure(seed):
    rng = random.Random(seed)
    phi, psi = random_map(M3, rng), random_map(M3, rng)
    P, Q = rt(Multivector, rng.randint(1, 2), rng, M3), rt(Multivector, 1, rng, M3)
    assert pushforward(P, phi.compose(psi)) == pushforward(pushforward(P, psi), phi)
    assert pushforward(wedge(P, Q), phi) == wedge(pushforward(P, phi), pushforward(Q, phi))
    assert pushforward(schouten_bracket(P, Q), phi) == schouten_bracket(pushforward(P, phi), pushforward(Q, phi))


@given(seeds)
def test_pullback_functorial_and_commutes_with_d(seed):
    rng = random.Random(seed)
    phi, psi = random_map(M3, rng), random_map(M3, rng)
    a, b = rt(DifferentialForm, rng.randint(0, 2), rng, M3), rt(DifferentialForm, 1, rng, M3)
    assert pullback(a, phi.compose(psi)) == pullback(pullback(a, phi), psi)
    assert pullback(d(a), phi) == d(pullback(a, phi))
    assert pullback(wedge(a, b), phi) == wedge(pullback(a, phi), pullback(b, phi))


@given(seeds)
def test_pullback_of_metric_is_functorial(seed):
    rng = random.Random(seed)
    phi, psi = random_map(M3, rng), random_map(M3, rng)
    g = SymmetricTwoTensor(M3, {(i, j): random_polynomial(M3, rng) for i in range(3) for j in range(i, 3)})
    assert pullback(g, phi.compose(psi)) == pullback(pullback(g, phi), psi)


# evaluation


def test_evaluate_examples():
    L = example_pair(1).Lambda
    val = evaluate_at_point(L, {"u1": 2, "q1": 0, "p1": 3, "t": 1})
    # the point chart has no names, so components are addressed by position
    assert val[(1, 2)].constant_value() == 2 and val[(2, 3)].constant_value() == -3
    assert not evaluate_at_point(Multivector.zero(M3, 2), {"x": 1, "y": 2, "z": 3})


@given(seeds)
def test_evaluate_commutes_with_wedge(seed):
    rng = random.Random(seed)
    A, B = rt(DifferentialForm, rng.randint(0, 2), rng), rt(DifferentialForm, rng.randint(0, 2), rng)
    pt = {v: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for v in M4.variables}
    assert _evaluated_wedge(A, B, pt)


def _evaluated_wedge(A, B, pt):
    # evaluation loses the index chart, so compare component values directly
    W = wedge(A, B)
    EA = {k: v.evaluate(pt) for k, v in A._c.items()}
    EB = {k: v.evaluate(pt) for k, v in B._c.items()}
    out = {}
    for ka, va in EA.items():
        for kb, vb in EB.items():
            sign, key = sort_sign(ka + kb)
            if sign:
                out[key] = out.get(key, 0) + sign * va * vb
    expected = {k: v for k, v in out.items() if v}
    got = {k: v.evaluate(pt) for k, v in W._c.items()}
    got = {k: v for k, v in got.items() if v}
    return expected == got

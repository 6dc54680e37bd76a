import random
from fractions import Fraction

import pytest
from hypothesis import given

from soldered.calculus import PolyMap, pushforward
from soldered.chart import Chart
from soldered.errors import (
    LocusNotCoordinate,
    NotAUnit,
    NotInvolution,
    NotJacobi,
    NotPoisson,
    NotPreserved,
    NotTangentFunction,
    PreconditionFailed,
)
from soldered.models import example_pair, symplectic_canonical
from soldered.sampling import random_block_poisson, random_jacobi, random_polynomial, random_tensor
from soldered.scalar import Scalar
from soldered.structures import (
    JacobiPair,
    conformal_change,
    is_homogeneous,
    is_jacobi,
    is_poisson,
    poissonize,
)
from soldered.submanifold import (
    FrameMatrix,
    NormalizedSubmanifold,
    alternate_normal_check,
    classify,
    classify_jacobi,
    classify_poisson,
    conformal_flatten,
    frame_change_map,
    induced_structure,
    involution_fixed_locus_check,
    is_soldered,
    is_soldered_form,
    is_soldered_multivector,
    is_soldered_symmetric,
    second_fundamental,
    soldered_closure_suite,
    tubular_poisson_check,
)
from soldered.tensors import DifferentialForm, Multivector, SymmetricTwoTensor

from conftest import seeds

XY = Chart.make("XY", ["x", "y"])
XYY = Chart.make("XYY", ["x", "y1", "y2"])
C5 = Chart.make("C5", ["x1", "x2", "x3", "y1", "y2"])
NORMAL_SETS = (["x1"], ["x1", "x2"], ["x1", "x2", "x3"])


def V(chart, name):
    return Scalar.variable(chart, name)


def B(chart, *names):
    return Multivector.basis(chart, *names)


def sub_of(chart, normals):
    return NormalizedSubmanifold.make(chart, normals)


# the submanifold type


def test_normalized_submanifold_partition():
    pair = example_pair(1)
    sub = sub_of(pair.chart, ["u1", "q1"])
    assert sub.normal_names == ("u1", "q1")
    assert sub.tangent_names == ("p1", "t")
    assert sub.tangent_chart.variables == ("p1", "t")
    lap = example_pair(1, laurent_t=True).chart
    s1 = sub_of(lap, {"t": 1})
    assert s1.values["t"] == 1
    assert s1.restrict(V(lap, "t") ** 2 + V(lap, "p1")) == V(s1.tangent_chart, "p1") + 1
    with pytest.raises(PreconditionFailed):
        sub_of(pair.chart, {"t": 1})


def test_frame_matrix_shape():
    sub = sub_of(XYY, ["x"])
    th = FrameMatrix(sub, {("y1", "x"): Scalar.one(XYY)})
    assert th[("y1", "x")].constant_value() == 1
    assert th[("y2", "x")].is_zero()
    assert not th.is_zero()
    with pytest.raises(Exception):
        FrameMatrix(sub, {("x", "y1"): Scalar.one(XYY)})


# soldering


def test_soldered_form_examples():
    sub = sub_of(XY, ["x"])
    x = V(XY, "x")
    assert is_soldered_form(DifferentialForm.basis(XY, "y"), sub)
    v = is_soldered_form(x * DifferentialForm.basis(XY, "y"), sub)
    assert not v and v.witness.direction == "x" and v.details["algebraic"]
    # the dx component has exactly one normal index, so it must vanish on N
    kappa = x * x * DifferentialForm.basis(XY, "y") + DifferentialForm.basis(XY, "x")
    v = is_soldered_form(kappa, sub)
    assert not v
    assert v.details["derivative"] and not v.details["algebraic"]
    assert v.witness.component == ("x",)
    assert is_soldered_form(x * x * DifferentialForm.basis(XY, "y") + x * DifferentialForm.basis(XY, "x"), sub)


def test_soldered_functions():
    sub = sub_of(XY, ["x"])
    x, y = V(XY, "x"), V(XY, "y")
    assert is_soldered(DifferentialForm.from_scalar(y * y + x * x), sub)
    assert not is_soldered(DifferentialForm.from_scalar(y + x), sub)


def test_soldered_multivector_examples():
    sub = sub_of(XY, ["x"])
    assert is_soldered_multivector(B(XY, "y"), sub)
    v = is_soldered_multivector(V(XY, "x") * B(XY, "y"), sub)
    assert not v and v.witness.direction == "x"
    pair = example_pair(1)
    assert is_soldered_multivector(pair.Lambda, sub_of(pair.chart, ["t"]))


def test_soldered_symmetric_examples():
    C = Chart.make("C", ["x", "y", "z"])
    eucl = SymmetricTwoTensor(C, {(i, i): 1 for i in range(3)})
    for normals in (["x"], ["y", "z"], []):
        assert is_soldered_symmetric(eucl, sub_of(C, normals))
    x = V(XY, "x")
    sub = sub_of(XY, ["x"])
    assert is_soldered_symmetric(SymmetricTwoTensor(XY, {(0, 0): 1, (1, 1): 1 + x * x}), sub)
    v = is_soldered_symmetric(SymmetricTwoTensor(XY, {(0, 0): 1, (1, 1): 1 + x}), sub)
    assert not v
    (part,) = v.details["second_fundamental"].parts["x"]
    assert part[(0, 0)].constant_value() == 1


def test_degenerate_partitions():
    pair = example_pair(1)
    everything = sub_of(pair.chart, list(pair.chart.variables))
    nothing = sub_of(pair.chart, [])
    rng = random.Random(1)
    for _ in range(5):
        T = random_tensor(pair.chart, Multivector, 2, rng)
        assert is_soldered(T, nothing)
        assert is_soldered(T, everything).details["derivative"]


@given(seeds)
def test_constructed_soldered_tensors_pass(seed):
    from soldered.sampling import random_soldered

    rng = random.Random(seed)
    sub = sub_of(C5, rng.choice(NORMAL_SETS))
    kind = rng.choice([Multivector, DifferentialForm])
    assert is_soldered(random_soldered(sub, kind, rng.randint(0, 3), rng), sub)


# classification


def test_classify_poisson_examples():
    f = classify_poisson(B(XYY, "y1", "y2"), sub_of(XYY, ["x"]))
    assert f.dirac and f.strong_dirac and f.apc and f.quasi_dirac
    omega, Pi, sub = symplectic_canonical(1, 1)
    f = classify_poisson(Pi, sub)
    assert f.cosymplectic and f.dirac
    y1 = V(XYY, "y1")
    f = classify_poisson(y1 * B(XYY, "x", "y1"), sub_of(XYY, ["x"]))
    assert not f.apc and not f.dirac
    assert f.witnesses["apc"].component == ("x", "y1")
    with pytest.raises(NotPoisson):
        classify_poisson(V(C5, "x3") * B(C5, "x1", "x2") + V(C5, "x2") * B(C5, "x2", "x3"), sub_of(C5, ["x1"]))


def test_classify_jacobi_examples():
    pair = example_pair(1)
    f = classify_jacobi(pair, sub_of(pair.chart, ["t"]))
    assert f.dirac and f.almost_dirac and f.ajc and f.quasi_dirac and f.e_normal
    f = classify_jacobi(pair, sub_of(pair.chart, ["u1", "q1"]))
    assert f.dirac and not f.e_normal
    lp = example_pair(1, laurent_t=True)
    f = classify_jacobi(lp, sub_of(lp.chart, {"t": 1}))
    # engine values: E = t d/dt is normal on t = 1 but Lambda^{tp} = t p is not zero there
    assert f.e_normal and not f.almost_dirac and not f.ajc and f.quasi_dirac and not f.dirac
    with pytest.raises(NotJacobi):
        classify_jacobi(JacobiPair(B(XY, "x", "y"), V(XY, "x") * B(XY, "x")), sub_of(XY, ["x"]))


@given(seeds)
def test_flag_implications_hold(seed):
    rng = random.Random(seed)
    sub = sub_of(C5, rng.choice(NORMAL_SETS))
    if rng.random() < 0.5:
        flags = classify(random_block_poisson(C5, rng, 2, sub), sub)
    else:
        flags = classify(random_jacobi(C5, rng), sub)
    assert flags.implications_hold()
    if flags.kind == "poisson":
        assert flags.dirac == (flags.apc and flags.quasi_dirac)
        assert (not flags.strong_dirac) or flags.dirac
    else:
        assert (not flags.dirac) or (flags.ajc and flags.quasi_dirac and flags.almost_dirac)
    for name, value in flags.flags().items():
        if value is False and name != "cosymplectic":
            assert name in flags.witnesses


# induced structures


def test_induced_examples():
    pair = example_pair(1)
    res = induced_structure(pair, sub_of(pair.chart, ["t"]))
    T = res.chart
    assert res.kind == "poisson"
    assert res.Lambda == V(T, "u1") * B(T, "q1", "p1") and not res.E
    res = induced_structure(pair, sub_of(pair.chart, ["u1", "q1"]))
    T = res.chart
    assert res.kind == "jacobi"
    assert res.Lambda == V(T, "t") * V(T, "p1") * B(T, "t", "p1")
    assert res.E == V(T, "t") * B(T, "t")
    zero = induced_structure(Multivector.zero(C5, 2), sub_of(C5, ["x1"]))
    assert not zero.Lambda and zero.kind == "poisson"


def test_induced_precondition():
    C = Chart.make("C", ["x1", "x2", "y1", "y2", "y3"])
    Pi = B(C, "x1", "y1") + V(C, "x2") * B(C, "y2", "y3")
    sub = sub_of(C, ["x1", "x2"])
    flags = classify_poisson(Pi, sub)
    assert not flags.apc and not flags.quasi_dirac
    with pytest.raises(PreconditionFailed):
        induced_structure(Pi, sub)
    with pytest.raises(PreconditionFailed):
        induced_structure(JacobiPair(Pi, Multivector.zero(C, 1)), sub)


@given(seeds)
def test_induced_structures_satisfy_their_identities(seed):
    rng = random.Random(seed)
    sub = sub_of(C5, rng.choice(NORMAL_SETS))
    Pi = random_block_poisson(C5, rng, 2, sub)
    flags = classify(Pi, sub)
    if flags.apc or flags.quasi_dirac:
        assert is_poisson(induced_structure(Pi, sub).Lambda)
    pair = conformal_change(Pi, random_polynomial(C5, rng, terms=2, max_degree=1))
    jf = classify(pair, sub)
    if jf.almost_dirac or jf.ajc or jf.quasi_dirac or (jf.soldered_algebraic and jf.e_normal):
        res = induced_structure(pair, sub)
        assert is_jacobi(res.pair)
        if jf.e_normal:
            assert res.kind == "poisson" and is_poisson(res.Lambda)


def test_induced_structure_independent_of_normal_frame():
    rng = random.Random(11)
    checked = 0
    for _ in range(200):
        normals = rng.choice(NORMAL_SETS)
        sub = sub_of(C5, normals)
        Pi = random_block_poisson(C5, rng, 2, sub)
        if not classify_poisson(Pi, sub).dirac:
            continue
        theta = {(u, a): rng.randint(-2, 2) for u in sub.tangent_names for a in normals}
        frame = FrameMatrix(sub, {k: Scalar.const(C5, c) for k, c in theta.items()})
        if not alternate_normal_check(Pi, sub, frame).details["apc_tilde"]:
            continue
        moved = pushforward(Pi, frame_change_map(sub, theta))
        assert induced_structure(moved, sub).Lambda == induced_structure(Pi, sub).Lambda
        checked += 1
    assert checked >= 20


# alternate normal bundles


def frame(sub, theta):
    return FrameMatrix(sub, {k: Scalar.const(sub.chart, c) for k, c in theta.items()})


def test_alternate_normal_examples():
    omega, Pi, sub = symplectic_canonical(1, 1)
    base = classify_poisson(Pi, sub)
    r = alternate_normal_check(Pi, sub, FrameMatrix(sub, {}))
    assert r.details["apc_tilde"] == base.apc and r.details["dirac_tilde"] == base.dirac
    r = alternate_normal_check(Pi, sub, frame(sub, {("y1", "x1"): 1}))
    assert not r.details["apc_tilde"] and not r
    s = sub_of(XYY, ["x"])
    flat_tangent = 3 * B(XYY, "y1", "y2")
    assert classify_poisson(flat_tangent, s).strong_dirac
    rng = random.Random(3)
    for _ in range(10):
        th = {("y1", "x"): rng.randint(-5, 5), ("y2", "x"): rng.randint(-5, 5)}
        assert alternate_normal_check(flat_tangent, s, frame(s, th)).details["dirac_tilde"]
    # strong Dirac alone is not enough: tilting the normal along y1 sees d Pi^{uv} / d y1
    strong = (1 + V(XYY, "y1") ** 2) * B(XYY, "y1", "y2")
    assert classify_poisson(strong, s).strong_dirac
    assert alternate_normal_check(strong, s, frame(s, {("y2", "x"): 4})).details["dirac_tilde"]
    r = alternate_normal_check(strong, s, frame(s, {("y1", "x"): 1}))
    assert r.details["apc_tilde"] and not r.details["dirac_tilde"]


def test_alternate_normal_needs_dirac():
    s = sub_of(XYY, ["x"])
    with pytest.raises(PreconditionFailed):
        alternate_normal_check((1 + V(XYY, "x")) * B(XYY, "y1", "y2"), s, FrameMatrix(s, {}))


def test_alternate_normal_matches_coordinate_change():
    """The reduced conditions agree with classifying the pushforward under the frame change."""
    rng = random.Random(7)
    outcomes = set()
    compared = 0
    for _ in range(400):
        normals = rng.choice(NORMAL_SETS)
        sub = sub_of(C5, normals)
        Pi = random_block_poisson(C5, rng, 2, sub)
        if not classify_poisson(Pi, sub).dirac:
            continue
        theta = {(u, a): rng.choice([0, 0, 1, -1, 2]) for u in sub.tangent_names for a in normals}
        r = alternate_normal_check(Pi, sub, frame(sub, theta))
        moved = classify_poisson(pushforward(Pi, frame_change_map(sub, theta)), sub)
        assert r.details["apc_tilde"] == moved.apc
        assert r.details["dirac_tilde"] == moved.dirac
        outcomes.add((moved.apc, moved.dirac))
        compared += 1
    assert compared >= 50
    assert {(True, True), (True, False), (False, False)} <= outcomes


# second fundamental data


def test_second_fundamental_examples():
    s = sub_of(XYY, ["x"])
    data = second_fundamental((1 + V(XYY, "x")) * B(XYY, "y1", "y2"), s)
    (part,) = data.parts["x"]
    assert part == B(s.tangent_chart, "y1", "y2")
    assert second_fundamental(B(XYY, "y1", "y2"), s).is_zero()
    g = SymmetricTwoTensor(XY, {(0, 0): 1, (1, 1): 1 + V(XY, "x")})
    sx = sub_of(XY, ["x"])
    assert second_fundamental(g, sx) == is_soldered_symmetric(g, sx).details["second_fundamental"]
    with pytest.raises(PreconditionFailed):
        second_fundamental(V(XYY, "y1") * B(XYY, "x", "y1"), s)


@given(seeds)
def test_second_fundamental_vanishes_iff_dirac(seed):
    rng = random.Random(seed)
    sub = sub_of(C5, rng.choice(NORMAL_SETS))
    Pi = random_block_poisson(C5, rng, 2, sub)
    flags = classify_poisson(Pi, sub)
    if flags.apc:
        assert second_fundamental(Pi, sub).is_zero() == flags.dirac
    pair = conformal_change(Pi, random_polynomial(C5, rng, terms=1, max_degree=1))
    jf = classify_jacobi(pair, sub)
    if jf.ajc:
        assert second_fundamental(pair, sub).is_zero() == jf.dirac
    g = SymmetricTwoTensor(C5, {(i, j): random_polynomial(C5, rng, terms=1)
                                for i in range(5) for j in range(i, 5) if rng.random() < 0.3})
    v = is_soldered_symmetric(g, sub)
    if v.details["algebraic"]:
        assert second_fundamental(g, sub).is_zero() == bool(v)


# homogeneity and Poissonization


def test_homogeneity_descends_to_linear_example():
    C = Chart.make("C", ["w", "x", "y", "z"])
    Pi = V(C, "x") * B(C, "y", "z")
    Z = Multivector(C, 1, {v: V(C, v) for v in "wxyz"})
    sub = sub_of(C, ["w"])
    assert classify_poisson(Pi, sub).apc
    res = induced_structure(Pi, sub)
    assert is_homogeneous(res.Lambda, sub.tangential(Z))


@given(seeds)
def test_homogeneity_descends_from_poissonization(seed):
    rng = random.Random(seed)
    C = Chart.make("C4", ["x1", "x2", "y1", "y2"])
    sub = sub_of(C, rng.choice([["x1"], ["x1", "x2"]]))
    pair = conformal_change(random_block_poisson(C, rng, 2, sub), random_polynomial(C, rng, terms=1, max_degree=1))
    hp = poissonize(pair)
    lifted = NormalizedSubmanifold(hp.chart, sub.normal, sub.name)
    if classify_poisson(hp.Pi, lifted).apc:
        res = induced_structure(hp.Pi, lifted)
        assert is_homogeneous(res.Lambda, lifted.tangential(hp.Z))


@given(seeds)
def test_poissonization_transfers_flags(seed):
    rng = random.Random(seed)
    C = Chart.make("C4", ["x1", "x2", "y1", "y2"])
    sub = sub_of(C, rng.choice([["x1"], ["x1", "x2"], ["x2", "y1"]]))
    if rng.random() < 0.6:
        pair = conformal_change(random_block_poisson(C, rng, 2, sub),
                                random_polynomial(C, rng, terms=1, max_degree=1))
    else:
        pair = random_jacobi(C, rng)
    hp = poissonize(pair)
    lifted = NormalizedSubmanifold(hp.chart, sub.normal, sub.name)
    fj, fp = classify_jacobi(pair, sub), classify_poisson(hp.Pi, lifted)
    assert fj.dirac == fp.dirac
    assert fj.ajc == fp.apc


def test_poissonization_transfers_flags_for_the_example():
    pair = example_pair(1)
    hp = poissonize(pair)
    for normals in (["t"], ["u1", "q1"], ["p1"], ["q1"]):
        sub = sub_of(pair.chart, normals)
        lifted = NormalizedSubmanifold(hp.chart, sub.normal, sub.name)
        fj, fp = classify_jacobi(pair, sub), classify_poisson(hp.Pi, lifted)
        assert (fj.dirac, fj.ajc) == (fp.dirac, fp.apc)


# conformal flattening


def test_conformal_flatten_examples():
    pair = example_pair(1)
    sub = sub_of(pair.chart, ["t"])
    assert conformal_flatten(pair, sub).is_zero()
    C = Chart.make("C", ["x1", "x2", "y"])
    s = sub_of(C, ["x1", "x2"])
    # Lambda^{12} mu_2 = 1 and Lambda^{21} mu_1 = 2 by hand
    pair = JacobiPair(B(C, "x1", "x2"), B(C, "x1") + 2 * B(C, "x2"))
    assert is_jacobi(pair)
    phi = conformal_flatten(pair, s)
    assert phi == -2 * V(C, "x1") + V(C, "x2")
    assert s.restrict(phi).is_zero()
    assert classify_jacobi(conformal_change(pair, phi), s).dirac
    assert not classify_jacobi(pair, s).dirac


def test_conformal_flatten_failures():
    C = Chart.make("C", ["x1", "x2", "y"])
    s = sub_of(C, ["x1", "x2"])
    pair = JacobiPair(V(C, "y") * B(C, "x1", "x2"), B(C, "x1"))
    assert is_jacobi(pair)
    with pytest.raises(NotAUnit):
        conformal_flatten(pair, s)
    bad = JacobiPair(B(C, "x1", "y"), Multivector.zero(C, 1))
    with pytest.raises(PreconditionFailed):
        conformal_flatten(bad, s)


@given(seeds)
def test_conformal_flatten_on_cosymplectic_instances(seed):
    rng = random.Random(seed)
    C = Chart.make("C4", ["x1", "x2", "y1", "y2"])
    s = sub_of(C, ["x1", "x2"])
    k = rng.choice([1, -2, 3])
    Pi = (k + random_polynomial(C, rng, terms=2, variables=["x1", "x2"])) * B(C, "x1", "x2") \
        + random_polynomial(C, rng, terms=2, variables=["y1", "y2"]) * B(C, "y1", "y2")
    pair = conformal_change(Pi, random_polynomial(C, rng, terms=2, max_degree=2))
    try:
        phi = conformal_flatten(pair, s)
    except NotAUnit:
        return
    assert s.restrict(phi).is_zero()
    assert classify_jacobi(conformal_change(pair, phi), s).ajc


# tubular neighbourhoods


def test_tubular_examples():
    s = sub_of(XYY, ["x"])
    T = s.tangent_chart
    f, g = V(T, "y1"), V(T, "y2")
    dirac = (1 + V(XYY, "x") ** 2) * B(XYY, "y1", "y2")
    r = tubular_poisson_check(dirac, s, f, g)
    assert r and r.details["caracttub"] and r.details["compD"] and r.details["ptDirac"]
    assert not r.details["strong"]
    apc_only = (1 + V(XYY, "x")) * B(XYY, "y1", "y2")
    r = tubular_poisson_check(apc_only, s, f, g)
    assert r.details["caracttub"] and r.details["compD"] and not r.details["ptDirac"]
    assert r.witness.direction == "x"
    strong = (1 + V(XYY, "y1")) * B(XYY, "y1", "y2")
    r = tubular_poisson_check(strong, s, V(XYY, "y1"), V(XYY, "y2") ** 2)
    assert r and r.details["strong"]
    with pytest.raises(NotTangentFunction):
        tubular_poisson_check(strong, s, V(XYY, "x"), g)


def test_tubular_symplectic():
    omega, Pi, sub = symplectic_canonical(1, 2)
    T = sub.tangent_chart
    names = T.variables
    for i in range(len(names)):
        for j in range(len(names)):
            assert tubular_poisson_check(Pi, sub, V(T, names[i]), V(T, names[j]) ** 2)


# closure


def test_closure_suite():
    for normals in NORMAL_SETS:
        sub = sub_of(C5, normals)
        r = soldered_closure_suite(sub, samples=8, seed=len(normals))
        assert r, r.witness
        assert r.details["d"] > 0 and r.details["schouten"] > 0 and r.details["hr"] > 0
    sub = sub_of(XYY, ["x"])
    Pi = (1 + V(XYY, "x") ** 2) * B(XYY, "y1", "y2")
    r = soldered_closure_suite(sub, samples=8, Pi=Pi)
    assert r and r.details["sharp"] == 8 and r.details["chain"] == 8
    with pytest.raises(PreconditionFailed):
        soldered_closure_suite(sub, samples=1, Pi=(1 + V(XYY, "x")) * B(XYY, "y1", "y2"))


def test_closure_examples():
    from soldered.calculus import d, schouten_bracket
    from soldered.sampling import random_soldered

    sub = sub_of(C5, ["x1", "x2"])
    rng = random.Random(4)
    for _ in range(5):
        k = random_soldered(sub, DifferentialForm, 1, rng)
        assert is_soldered(d(k), sub)
        P, Q = random_soldered(sub, Multivector, 2, rng), random_soldered(sub, Multivector, 1, rng)
        assert is_soldered(schouten_bracket(P, Q), sub)
        Y, Z = random_soldered(sub, Multivector, 1, rng), random_soldered(sub, Multivector, 1, rng)
        f = random_soldered(sub, Multivector, 0, rng).scalar()
        assert is_soldered(f * Y, sub) and is_soldered(schouten_bracket(Y, Z), sub)


# involutions


def test_involution_examples():
    pair = example_pair(1)
    c = pair.chart
    flip_t = PolyMap.involution(c, {"t": -V(c, "t")})
    for T in (pair.Lambda, pair.E):
        r = involution_fixed_locus_check(T, flip_t)
        assert r and r.details["locus"].normal_names == ("t",)
    flip_uq = PolyMap.involution(c, {"u1": -V(c, "u1"), "q1": -V(c, "q1")})
    for T in (pair.Lambda, pair.E):
        r = involution_fixed_locus_check(T, flip_uq)
        assert r and set(r.details["locus"].normal_names) == {"u1", "q1"}


def test_inverse_involution_on_the_laurent_chart():
    pair = example_pair(1, laurent_t=True)
    c = pair.chart
    inv = PolyMap.involution(c, {"t": V(c, "t") ** -1})
    with pytest.raises(NotPreserved) as exc:
        involution_fixed_locus_check(pair.Lambda, inv)
    defect = exc.value.defect
    assert defect[("p1", "t")] == 2 * V(c, "p1") * V(c, "t")
    with pytest.raises(NotPreserved) as exc:
        involution_fixed_locus_check(pair.E, inv)
    assert exc.value.defect == -2 * pair.E


def test_involution_errors():
    C = Chart.make("C", ["x", "y"])
    shift = PolyMap(C, C, {"x": V(C, "x") + 1}, {"x": V(C, "x") - 1})
    with pytest.raises(NotInvolution):
        involution_fixed_locus_check(B(C, "y"), shift)
    swap = PolyMap.involution(C, {"x": V(C, "y"), "y": V(C, "x")})
    with pytest.raises(LocusNotCoordinate):
        involution_fixed_locus_check(B(C, "x") + B(C, "y"), swap)
    L = Chart.make("L", [("s", True), "y"])
    root = PolyMap.involution(L, {"s": 4 * V(L, "s") ** -1})
    sB = V(L, "s") * B(L, "y")
    with pytest.raises(NotPreserved):
        involution_fixed_locus_check(sB, root)
    r = involution_fixed_locus_check(B(L, "y"), root)
    assert r and r.details["locus"].values["s"] == 2


@given(seeds)
def test_symmetrized_tensors_are_soldered_to_the_fixed_locus(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    chart = Chart.make(f"S{n}", [f"z{i}" for i in range(n)])
    flipped = rng.sample(chart.variables, rng.randint(1, n))
    phi = PolyMap.involution(chart, {v: -V(chart, v) for v in flipped})
    kind = rng.choice([Multivector, DifferentialForm])
    Q = random_tensor(chart, kind, rng.randint(0, min(3, n)), rng)
    moved = pushforward(Q, phi) if kind is Multivector else pullback_(Q, phi)
    sym = Fraction(1, 2) * (Q + moved)
    r = involution_fixed_locus_check(sym, phi)
    assert r


def pullback_(form, phi):
    from soldered.calculus import pullback

    return pullback(form, phi)

"""Seeded random generators for scalars, tensors and structures (used by tests and the closure suite)."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Optional

from .chart import Chart
from .scalar import Scalar
from .structures import JacobiPair, conformal_change
from .tensors import AltTensor, DifferentialForm, Multivector


def random_coefficient(rng: random.Random, small: int = 3) -> Fraction:
    c = 0
    while c == 0:
        c = rng.randint(-small, small)
    if rng.random() < 0.2:
        return Fraction(c, rng.choice((2, 3)))
    return Fraction(c)


def random_polynomial(chart: Chart, rng: random.Random, terms: int = 3, max_degree: int = 2,
                      variables: Optional[list] = None, laurent: bool = False) -> Scalar:
    """Sum of a few random monomials in ``variables`` (default: all of the chart).

    With ``laurent`` negative powers are allowed on Laurent variables.
    """
    names = list(variables if variables is not None else chart.variables)
    acc = Scalar.zero(chart)
    for _ in range(rng.randint(1, terms)):
        exps = {}
        for v in names:
            lo = -1 if laurent and chart.is_laurent(v) else 0
            e = rng.randint(lo, max_degree)
            if e:
                exps[v] = e
        while sum(max(e, 0) for e in exps.values()) > max_degree:
            v = rng.choice([k for k, e in exps.items() if e > 0])
            exps[v] -= 1
        acc = acc + Scalar.monomial(chart, exps, random_coefficient(rng))
    return acc


def random_scalar(chart: Chart, rng: random.Random, with_exp: bool = False) -> Scalar:
    s = random_polynomial(chart, rng, laurent=True)
    if with_exp and rng.random() < 0.5:
        q = random_polynomial(chart, rng, terms=1, max_degree=1)
        s = s * Scalar.exp(q)
    return s


def random_tensor(chart: Chart, kind, degree: int, rng: random.Random, density: float = 0.5) -> AltTensor:
    comps = {}
    for idx in itertools.combinations(range(chart.dim), degree):
        if rng.random() < density or degree == 0:
            s = random_polynomial(chart, rng)
            if s:
                comps[idx] = s
    return kind._raw(chart, degree, comps)


def random_soldered(sub, kind, degree: int, rng: random.Random) -> AltTensor:
    """A random tensor built to satisfy both soldering conditions for ``sub``.

    Components with one normal index carry a factor ``x^a - c^a``; pure tangent
    components are ``p(y) + sum (x^a - c^a)^2 r``; the rest are arbitrary.
    """
    chart = sub.chart
    normal = set(sub.normal_indices)
    tangent = list(sub.tangent_names)
    comps = {}
    for idx in itertools.combinations(range(chart.dim), degree):
        if degree and rng.random() < 0.4:
            continue
        k = sum(1 for i in idx if i in normal)
        if k == 1:
            s = Scalar.zero(chart)
            for a in sub.normal_names:
                if rng.random() < 0.7:
                    s = s + sub.coordinate_shift(a) * random_polynomial(chart, rng, terms=2, max_degree=1)
        elif k == 0:
            s = random_polynomial(chart, rng, terms=2, variables=tangent)
            for a in sub.normal_names:
                if rng.random() < 0.5:
                    s = s + sub.coordinate_shift(a) ** 2 * random_polynomial(chart, rng, terms=1, max_degree=1)
        else:
            s = random_polynomial(chart, rng, terms=2)
        if s:
            comps[idx] = s
    return kind._raw(chart, degree, comps)


def random_poisson(chart: Chart, rng: random.Random) -> Multivector:
    """Either ``f(x_k) d_i ^ d_j`` with ``k`` free, or a random Lie-Poisson bivector on three variables."""
    n = chart.dim
    if n >= 3 and rng.random() < 0.5:
        i, j, k = rng.sample(range(n), 3)
        c = [random_coefficient(rng) for _ in range(3)]
        xi, xj, xk = (Scalar.variable(chart, chart.variables[t]) for t in (i, j, k))
        # so(3)-type brackets scaled per pair
        return Multivector(chart, 2, {(i, j): c[0] * c[1] * xk, (j, k): c[1] * c[2] * xi,
                                      (k, i): c[2] * c[0] * xj})
    i, j = rng.sample(range(n), 2)
    free = [v for t, v in enumerate(chart.variables) if t not in (i, j)] or [chart.variables[i]]
    f = random_polynomial(chart, rng, terms=2, variables=free)
    return Multivector(chart, 2, {(i, j): f})


def random_block_poisson(chart: Chart, rng: random.Random, blocks: int = 2, sub=None) -> Multivector:
    """Sum of ``f_k d_i ^ d_j`` over disjoint pairs, ``f_k`` free of the other pairs' variables.

    Such a sum is always Poisson.  With ``sub`` the coefficients are biased
    toward the soldering conditions: a block with one normal index usually gets
    a factor ``x^a - c^a``, a pure tangent block mostly gets quadratic normal
    dependence and sometimes linear.
    """
    n = chart.dim
    order = rng.sample(range(n), n)
    pairs = [tuple(sorted(order[2 * k:2 * k + 2])) for k in range(min(blocks, n // 2))]
    taken = {i for pr in pairs for i in pr}
    comps = {}
    for pr in pairs:
        allowed = [chart.variables[i] for i in range(n) if i in pr or i not in taken]
        f = random_polynomial(chart, rng, terms=2, max_degree=2, variables=allowed)
        if sub is not None and rng.random() < 0.8:
            normals = [a for a in sub.normal_names if a in allowed]
            k = sum(1 for i in pr if sub.is_normal(i))
            tangent = [v for v in allowed if v not in sub.normal_names]
            if k == 1 and normals:
                f = sub.coordinate_shift(rng.choice(normals)) * random_polynomial(chart, rng, terms=2, max_degree=1,
                                                                                  variables=allowed)
            elif k == 0:
                f = random_polynomial(chart, rng, terms=2, variables=tangent) if tangent else Scalar.one(chart)
                r = rng.random()
                if normals and r < 0.8:
                    power = 2 if r < 0.6 else 1
                    f = f + sub.coordinate_shift(rng.choice(normals)) ** power * random_polynomial(
                        chart, rng, terms=1, max_degree=1, variables=allowed)
        if f:
            comps[pr] = f
    return Multivector._raw(chart, 2, comps)


def random_jacobi(chart: Chart, rng: random.Random) -> JacobiPair:
    """Conformal change of a random Poisson bivector, or ``(0, X)`` for a random vector field."""
    if rng.random() < 0.2:
        return JacobiPair(Multivector.zero(chart, 2), random_tensor(chart, Multivector, 1, rng))
    Pi = random_poisson(chart, rng)
    phi = random_polynomial(chart, rng, terms=2, max_degree=1)
    return conformal_change(Pi, phi)


def non_jacobi_pair(chart: Chart) -> JacobiPair:
    """``(d_0 ^ d_1, x_0 d_0)``: the bivector is Poisson but ``L_E Lambda != 0``."""
    x = Scalar.variable(chart, chart.variables[0])
    L = Multivector(chart, 2, {(0, 1): 1})
    E = Multivector(chart, 1, {(0,): x})
    return JacobiPair(L, E)


__all__ = [
    "random_coefficient", "random_polynomial", "random_scalar", "random_tensor",
    "random_soldered", "random_poisson", "random_block_poisson", "random_jacobi", "non_jacobi_pair",
    "DifferentialForm",
]

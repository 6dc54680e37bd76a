"""Ready-made structures used by the built-in examples and the acceptance tests."""

from __future__ import annotations

from .chart import Chart
from .scalar import Scalar
from .structures import JacobiPair, LcsData, contact_darboux, lcs_conformal, symplectic_inverse
from .submanifold import NormalizedSubmanifold
from .tensors import DifferentialForm, Multivector


def example_chart(n: int = 1, laurent_t: bool = False) -> Chart:
    """Variables ``u1..un, q1..qn, p1..pn, t``."""
    names = [f"u{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)]
    names += [f"p{i}" for i in range(1, n + 1)]
    names.append(("t", True) if laurent_t else "t")
    return Chart.make("M", names)


def example_pair(n: int = 1, laurent_t: bool = False) -> JacobiPair:
    """``Lambda = sum u_i dq_i ^ dp_i + (t dt) ^ (sum p_j dp_j)``, ``E = t dt``."""
    chart = example_chart(n, laurent_t)
    V = lambda name: Scalar.variable(chart, name)  # noqa: E731
    comps = {}
    for i in range(1, n + 1):
        comps[(f"q{i}", f"p{i}")] = V(f"u{i}")
        comps[("t", f"p{i}")] = V("t") * V(f"p{i}")
    return JacobiPair(Multivector(chart, 2, comps), Multivector(chart, 1, {("t",): V("t")}))


def symplectic_canonical(normal_pairs: int = 1, tangent_pairs: int = 1):
    """``omega = sum dx^a ^ dxs^a + sum dy^u ^ dys^u``, its Poisson inverse and ``N = {x = xs = 0}``."""
    names = [f"x{a}" for a in range(1, normal_pairs + 1)] + [f"xs{a}" for a in range(1, normal_pairs + 1)]
    names += [f"y{u}" for u in range(1, tangent_pairs + 1)] + [f"ys{u}" for u in range(1, tangent_pairs + 1)]
    chart = Chart.make("M", names)
    comps = {(f"x{a}", f"xs{a}"): 1 for a in range(1, normal_pairs + 1)}
    comps.update({(f"y{u}", f"ys{u}"): 1 for u in range(1, tangent_pairs + 1)})
    omega = DifferentialForm(chart, 2, comps)
    Pi = symplectic_inverse(omega)
    normals = [f"x{a}" for a in range(1, normal_pairs + 1)] + [f"xs{a}" for a in range(1, normal_pairs + 1)]
    return omega, Pi, NormalizedSubmanifold.make(chart, normals)


def lcs_plane() -> LcsData:
    """``Omega = e^-x dx ^ dy`` on the plane: Lee form ``-dx``."""
    chart = Chart.make("R2", ["x", "y"])
    Omega0 = DifferentialForm(chart, 2, {("x", "y"): 1})
    return lcs_conformal(Omega0, Scalar.variable(chart, "x"))


__all__ = ["example_chart", "example_pair", "symplectic_canonical", "lcs_plane", "contact_darboux"]

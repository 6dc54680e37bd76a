"""Built-in check scripts, available as ``soldered example NAME``."""

from __future__ import annotations

from ..errors import UnknownExample
from .script import CheckScript, parse_script

_HEAD = """\
chart M: u1, q1, p1, t{laurent}
bivector Lambda on M:
  [q1,p1] = u1
  [t,p1] = t*p1
vector E on M:
  [t] = t
"""

EXAMPLES = {
    "jacobi4-t0": (
        "the hyperplane t = 0 of the four-dimensional example: Dirac, induced Poisson",
        _HEAD.format(laurent="") + """\
submanifold N in M: normal t = 0
involution flip on M:
  t -> -t
check jacobi Lambda E
check involution Lambda flip expect preserved, soldered
check involution E flip expect preserved, soldered
check classify-jacobi Lambda E N expect dirac, almost_dirac, ajc, quasi_dirac, e_normal
check induced Lambda E N expect poisson
check soldered-lift Lambda E N expect pass, agree
""",
    ),
    "jacobi4-uq0": (
        "the plane u1 = q1 = 0 of the four-dimensional example: Dirac, induced Jacobi",
        _HEAD.format(laurent="") + """\
submanifold N in M: normal u1 = 0, q1 = 0
involution flip on M:
  u1 -> -u1
  q1 -> -q1
check jacobi Lambda E
check involution Lambda flip expect preserved, soldered
check involution E flip expect preserved, soldered
check classify-jacobi Lambda E N expect dirac, !e_normal
check induced Lambda E N expect jacobi
""",
    ),
    "jacobi4-t1": (
        "the hyperplane t = 1 under t -> 1/t: the engine finds Lambda is not preserved",
        _HEAD.format(laurent="(laurent)") + """\
submanifold N in M: normal t = 1
involution inv on M:
  t -> t^-1
check jacobi Lambda E
check involution Lambda inv expect !preserved
check involution E inv expect !preserved
check classify-jacobi Lambda E N expect e_normal, !almost_dirac, !ajc, quasi_dirac
""",
    ),
    "symplectic-canonical": (
        "canonical symplectic chart with N = {x1 = xs1 = 0}: cosymplectic and Dirac, unique normal bundle",
        """\
chart M: x1, xs1, y1, ys1
form omega on M:
  [x1,xs1] = 1
  [y1,ys1] = 1
bivector Pi on M:
  [x1,xs1] = 1
  [y1,ys1] = 1
submanifold N in M: normal x1 = 0, xs1 = 0
frame Theta for N:
  [y1,x1] = 1
frame Zero for N:
check poisson Pi
check classify-poisson Pi N expect cosymplectic, dirac, strong_dirac
check alternate-normal Pi N Zero expect apc_tilde, dirac_tilde
check alternate-normal Pi N Theta expect !apc_tilde
check coisotropic-lift Pi N expect dirac, agree
""",
    ),
    "contact-darboux": (
        "Darboux contact form on R^5: contact, symplectization, and a Dirac plane versus a degenerate one",
        """\
chart R5: x1, x2, y1, y2, z
form theta on R5:
  [z] = 1
  [x1] = -y1
  [x2] = -y2
vector E on R5:
  [z] = 1
bivector Lambda on R5:
  [x1,y1] = 1
  [x2,y2] = 1
  [z,y1] = y1
  [z,y2] = y2
submanifold N in R5: normal x2 = 0, y2 = 0
submanifold K in R5: normal y1 = 0, y2 = 0
check contact theta E Lambda
check symplectization theta E Lambda
check classify-jacobi Lambda E N expect dirac
check classify-jacobi Lambda E K expect !dirac
""",
    ),
    "poissonization": (
        "Poissonization of the example pair and of a non-Jacobi pair",
        _HEAD.format(laurent="") + """\
submanifold N in M: normal t = 0
chart P: x, y
bivector B on P:
  [x,y] = 1
vector X on P:
  [x] = x
check poissonize Lambda E N expect pass, agree, dirac_transfer, ajc_transfer
check poissonize B X expect !jacobi, !pass, agree
""",
    ),
}


def example_names() -> list:
    return sorted(EXAMPLES)


def example_text(name: str) -> str:
    try:
        return EXAMPLES[name][1]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(example_names())}") from None


def builtin_example(name: str) -> CheckScript:
    return parse_script(example_text(name))


__all__ = ["EXAMPLES", "example_names", "example_text", "builtin_example"]

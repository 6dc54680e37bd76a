"""Check-script format: parsing, canonical printing and the command table.

A script is a sequence of declarations and ``check`` commands, one per line;
indented lines belong to the preceding block header, ``#`` starts a comment::

    chart M: u1, q1, p1, t(laurent)
    bivector Lambda on M:
      [q1,p1] = u1
      [t,p1] = t*p1
    vector E on M:
      [t] = t
    submanifold N in M: normal t = 0
    check classify-jacobi Lambda E N expect dirac, !cosymplectic
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from ..calculus import PolyMap
from ..chart import Chart
from ..errors import (
    NegativePower,
    NonPolynomialExponent,
    NotInvolution,
    ParseError,
    PreconditionFailed,
    ScriptNameError,
    UnknownVariable,
)
from ..scalar import Scalar
from ..scalar_parse import parse_scalar
from ..submanifold import ClassificationFlags, FrameMatrix, NormalizedSubmanifold
from ..tensors import DifferentialForm, Multivector, SymmetricTwoTensor

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_NAME_RE = re.compile(_NAME)
_CHART_RE = re.compile(rf"chart\s+({_NAME})\s*:(.*)$")
_TENSOR_RE = re.compile(rf"(bivector|vector|multivector|form)\s+({_NAME})\s+on\s+({_NAME})(?:\s+degree\s+(\d+))?\s*:\s*$")
_METRIC_RE = re.compile(rf"metric\s+({_NAME})\s+on\s+({_NAME})\s*:\s*$")
_FUNCTION_RE = re.compile(rf"function\s+({_NAME})\s+on\s+({_NAME})\s*=(.*)$")
_SUB_RE = re.compile(rf"submanifold\s+({_NAME})\s+in\s+({_NAME})\s*:\s*normal\b(.*)$")
_FRAME_RE = re.compile(rf"frame\s+({_NAME})\s+for\s+({_NAME})\s*:\s*$")
_INVOLUTION_RE = re.compile(rf"involution\s+({_NAME})\s+on\s+({_NAME})\s*:\s*$")
_ENTRY_RE = re.compile(r"\[([^\]]*)\]\s*=(.*)$")
_MAP_RE = re.compile(rf"({_NAME})\s*->(.*)$")
_VALUE_RE = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*$")

KEYWORDS = {"chart", "bivector", "vector", "multivector", "form", "metric", "function",
            "submanifold", "frame", "involution", "check", "expect", "on", "in", "for",
            "normal", "degree", "exp"}

_CLASSIFY = ClassificationFlags.FLAG_NAMES

# command -> (accepted argument-kind signatures, flags usable after ``expect``)
COMMANDS: Dict[str, Tuple[tuple, tuple]] = {
    "poisson": ((("bivector",),), ()),
    "jacobi": ((("bivector", "vector"),), ()),
    "homogeneous": ((("bivector", "vector"),), ()),
    "poissonize": ((("bivector", "vector"), ("bivector", "vector", "submanifold")),
                   ("poisson", "homogeneous", "jacobi", "agree", "dirac_transfer", "ajc_transfer")),
    "classify-poisson": ((("bivector", "submanifold"),), _CLASSIFY),
    "classify-jacobi": ((("bivector", "vector", "submanifold"),), _CLASSIFY),
    "induced": ((("bivector", "submanifold"), ("bivector", "vector", "submanifold")),
                ("poisson", "jacobi")),
    "second-fundamental": ((("bivector", "submanifold"), ("bivector", "vector", "submanifold"),
                            ("metric", "submanifold")), ("zero",)),
    "soldered": ((("tensor", "submanifold"),), ("algebraic", "derivative")),
    "soldered-lift": ((("tensor", "submanifold"), ("bivector", "vector", "submanifold")), ("agree",)),
    "coisotropic": ((("bivector",),), ()),
    "coisotropic-lift": ((("bivector", "submanifold"),), ("dirac", "agree")),
    "conformal-flatten": ((("bivector", "vector", "submanifold"),), ("vanishes_on_n", "dirac")),
    "alternate-normal": ((("bivector", "submanifold", "frame"),), ("apc_tilde", "dirac_tilde")),
    "tubular": ((("bivector", "submanifold", "function", "function"),),
                ("caracttub", "compD", "ptDirac", "strong")),
    "involution": ((("tensor", "involution"),), ("preserved", "soldered")),
    "contact": ((("form", "vector", "bivector"),), ()),
    "symplectization": ((("form", "vector", "bivector"),), ()),
    "lcs": ((("form", "form", "bivector", "vector"),), ()),
    "closure": ((("submanifold",), ("submanifold", "bivector")), ()),
    "tangent-poisson": ((("bivector",),), ()),
    "tangent-jacobi": ((("bivector", "vector"),), ()),
}


@dataclass(eq=False)
class Decl:
    """A named declaration; ``value`` is the parsed object."""

    keyword: str
    name: str
    chart: str
    value: object
    line: int = 0

    def key(self):
        if isinstance(self.value, PolyMap):
            return (self.keyword, self.name, self.chart, tuple(sorted(
                (k, v) for k, v in self.value.components.items())))
        return (self.keyword, self.name, self.chart, self.value)

    def __eq__(self, other):
        return isinstance(other, Decl) and self.key() == other.key()

    @property
    def kinds(self) -> set:
        v = self.value
        if isinstance(v, Chart):
            return {"chart"}
        if isinstance(v, Multivector):
            out = {"multivector", "tensor"}
            if v.degree == 1:
                out.add("vector")
            if v.degree == 2:
                out.add("bivector")
            return out
        if isinstance(v, DifferentialForm):
            return {"form", "tensor"}
        if isinstance(v, SymmetricTwoTensor):
            return {"metric", "tensor"}
        if isinstance(v, Scalar):
            return {"function", "tensor"}
        if isinstance(v, NormalizedSubmanifold):
            return {"submanifold"}
        if isinstance(v, FrameMatrix):
            return {"frame"}
        if isinstance(v, PolyMap):
            return {"involution"}
        return set()


@dataclass
class Check:
    command: str
    args: Tuple[str, ...]
    variables: Tuple[str, ...] = ()
    expect: Tuple[Tuple[str, bool], ...] = ()
    line: int = field(default=0, compare=False)

    def text(self) -> str:
        out = f"check {self.command}"
        if self.args:
            out += " " + " ".join(self.args)
        if self.command == "coisotropic":
            out += " : " + ", ".join(self.variables)
        if self.expect:
            out += " expect " + ", ".join(("" if v else "!") + k for k, v in self.expect)
        return out


@dataclass
class CheckScript:
    declarations: List[Decl] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)

    def lookup(self, name: str) -> Decl:
        for d in self.declarations:
            if d.name == name:
                return d
        raise ScriptNameError(f"unknown name {name!r}")

    def value(self, name: str):
        return self.lookup(name).value


# parsing


def _strip_comment(raw: str) -> str:
    pos = raw.find("#")
    return raw if pos < 0 else raw[:pos]


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.script = CheckScript()
        self.names: Dict[str, Decl] = {}

    def run(self) -> CheckScript:
        i = 0
        n = len(self.lines)
        while i < n:
            raw = _strip_comment(self.lines[i]).rstrip()
            lineno = i + 1
            i += 1
            if not raw.strip():
                continue
            if raw[0].isspace():
                raise ParseError("indented line outside a block", lineno, 1)
            body = []
            while i < n:
                nxt = _strip_comment(self.lines[i]).rstrip()
                if nxt.strip() and not nxt[0].isspace():
                    break
                if nxt.strip():
                    indent = len(nxt) - len(nxt.lstrip())
                    body.append((i + 1, indent + 1, nxt.strip()))
                i += 1
            self.statement(raw, lineno, body)
        return self.script

    # helpers

    def declare(self, decl: Decl, column: int) -> None:
        if decl.name in KEYWORDS:
            raise ParseError(f"{decl.name!r} is a reserved word", decl.line, column)
        if decl.name in self.names:
            raise ScriptNameError(f"duplicate name {decl.name!r}", decl.line)
        self.names[decl.name] = decl
        self.script.declarations.append(decl)

    def resolve(self, name: str, lineno: int, kind: str = None) -> Decl:
        d = self.names.get(name)
        if d is None:
            raise ScriptNameError(f"unknown name {name!r}", lineno)
        if kind and kind not in d.kinds:
            raise ScriptNameError(f"{name!r} is not a {kind}", lineno)
        return d

    def scalar(self, text: str, chart: Chart, lineno: int, column: int) -> Scalar:
        lead = len(text) - len(text.lstrip())
        try:
            return parse_scalar(text.strip(), chart, line=lineno, column=column + lead)
        except UnknownVariable as exc:
            raise ScriptNameError(str(exc), lineno) from None
        except (NegativePower, NonPolynomialExponent) as exc:
            raise ParseError(str(exc).split(" (line")[0], lineno, column + lead) from None

    def no_body(self, body, what: str) -> None:
        if body:
            ln, col, _ = body[0]
            raise ParseError(f"{what} takes no indented block", ln, col)

    def statement(self, raw: str, lineno: int, body) -> None:
        word = raw.split(None, 1)[0]
        handler = {
            "chart": self.chart_decl, "bivector": self.tensor_decl, "vector": self.tensor_decl,
            "multivector": self.tensor_decl, "form": self.tensor_decl, "metric": self.metric_decl,
            "function": self.function_decl, "submanifold": self.sub_decl, "frame": self.frame_decl,
            "involution": self.involution_decl, "check": self.check,
        }.get(word)
        if handler is None:
            raise ParseError(f"unknown statement {word!r}", lineno, 1)
        handler(raw, lineno, body)

    # declarations

    def chart_decl(self, raw, lineno, body):
        m = _CHART_RE.match(raw)
        if not m:
            raise ParseError("expected 'chart NAME: var, var(laurent), ...'", lineno, 1)
        self.no_body(body, "chart")
        specs = []
        text = m.group(2)
        offset = m.start(2)
        if text.strip():
            pos = 0
            for part in text.split(","):
                col = offset + pos + len(part) - len(part.lstrip()) + 1
                pos += len(part) + 1
                p = part.strip()
                pm = re.fullmatch(rf"({_NAME})(\s*\(\s*laurent\s*\))?", p)
                if not pm:
                    raise ParseError(f"bad variable {p!r}", lineno, col)
                if pm.group(1) in KEYWORDS:
                    raise ParseError(f"{pm.group(1)!r} is a reserved word", lineno, col)
                specs.append((pm.group(1), bool(pm.group(2))))
        try:
            chart = Chart.make(m.group(1), specs)
        except Exception as exc:  # duplicate variables and the like
            raise ParseError(str(exc), lineno, offset + 1) from None
        self.declare(Decl("chart", m.group(1), m.group(1), chart, lineno), m.start(1) + 1)

    def _chart(self, name, lineno) -> Chart:
        return self.resolve(name, lineno, "chart").value

    def _entries(self, body, chart: Chart):
        out = []
        for ln, col, text in body:
            m = _ENTRY_RE.match(text)
            if not m:
                raise ParseError("expected '[i,j,...] = expression'", ln, col)
            idx = tuple(s.strip() for s in m.group(1).split(",")) if m.group(1).strip() else ()
            for v in idx:
                if v not in chart:
                    raise ScriptNameError(f"unknown variable {v!r} in chart {chart.name!r}", ln)
            value = self.scalar(m.group(2), chart, ln, col + m.start(2))
            out.append((ln, col, idx, value))
        return out

    def tensor_decl(self, raw, lineno, body):
        m = _TENSOR_RE.match(raw)
        if not m:
            raise ParseError("expected 'KIND NAME on CHART [degree K]:'", lineno, 1)
        keyword, name, cname, deg = m.groups()
        chart = self._chart(cname, lineno)
        entries = self._entries(body, chart)
        fixed = {"vector": 1, "bivector": 2}.get(keyword)
        if deg is not None:
            if fixed is not None:
                raise ParseError(f"{keyword} has a fixed degree", lineno, m.start(4) + 1)
            degree = int(deg)
        elif fixed is not None:
            degree = fixed
        elif entries:
            degree = len(entries[0][2])
        else:
            raise ParseError(f"empty {keyword} needs 'degree K'", lineno, len(raw))
        comps = {}
        for ln, col, idx, value in entries:
            if len(idx) != degree:
                raise ParseError(f"expected {degree} indices, got {len(idx)}", ln, col)
            if len(set(idx)) != len(idx):
                raise ParseError("repeated index", ln, col)
            key = tuple(sorted(idx, key=chart.index))
            if key in comps:
                raise ParseError(f"component {list(idx)} given twice", ln, col)
            comps[key] = (idx, value)
        cls = DifferentialForm if keyword == "form" else Multivector
        value = cls(chart, degree, {idx: v for idx, v in comps.values()})
        self.declare(Decl(keyword, name, cname, value, lineno), m.start(2) + 1)

    def metric_decl(self, raw, lineno, body):
        m = _METRIC_RE.match(raw)
        if not m:
            raise ParseError("expected 'metric NAME on CHART:'", lineno, 1)
        name, cname = m.groups()
        chart = self._chart(cname, lineno)
        comps = {}
        for ln, col, idx, value in self._entries(body, chart):
            if len(idx) != 2:
                raise ParseError("metric entries need two indices", ln, col)
            key = tuple(sorted(idx, key=chart.index))
            if key in comps:
                raise ParseError(f"component {list(idx)} given twice", ln, col)
            comps[key] = value
        self.declare(Decl("metric", name, cname, SymmetricTwoTensor(chart, comps), lineno), m.start(1) + 1)

    def function_decl(self, raw, lineno, body):
        m = _FUNCTION_RE.match(raw)
        if not m:
            raise ParseError("expected 'function NAME on CHART = expression'", lineno, 1)
        self.no_body(body, "function")
        name, cname, text = m.groups()
        chart = self._chart(cname, lineno)
        value = self.scalar(text, chart, lineno, m.start(3) + 1)
        self.declare(Decl("function", name, cname, value, lineno), m.start(1) + 1)

    def sub_decl(self, raw, lineno, body):
        m = _SUB_RE.match(raw)
        if not m:
            raise ParseError("expected 'submanifold NAME in CHART: normal var = c, ...'", lineno, 1)
        self.no_body(body, "submanifold")
        name, cname, text = m.groups()
        chart = self._chart(cname, lineno)
        normals = []
        offset = m.start(3)
        if text.strip():
            pos = 0
            for part in text.split(","):
                col = offset + pos + len(part) - len(part.lstrip()) + 1
                pos += len(part) + 1
                if "=" not in part:
                    raise ParseError("expected 'var = value'", lineno, col)
                var, val = (s.strip() for s in part.split("=", 1))
                if var not in chart:
                    raise ScriptNameError(f"unknown variable {var!r} in chart {chart.name!r}", lineno)
                vm = _VALUE_RE.match(val)
                if not vm:
                    raise ParseError(f"base value must be rational, got {val!r}", lineno, col)
                normals.append((var, Fraction(vm.group(1))))
        try:
            sub = NormalizedSubmanifold(chart, tuple(normals), name)
        except PreconditionFailed as exc:
            raise ParseError(str(exc), lineno, offset + 1) from None
        self.declare(Decl("submanifold", name, cname, sub, lineno), m.start(1) + 1)

    def frame_decl(self, raw, lineno, body):
        m = _FRAME_RE.match(raw)
        if not m:
            raise ParseError("expected 'frame NAME for SUBMANIFOLD:'", lineno, 1)
        name, sname = m.groups()
        sub = self.resolve(sname, lineno, "submanifold").value
        entries = {}
        for ln, col, idx, value in self._entries(body, sub.chart):
            if len(idx) != 2:
                raise ParseError("frame entries are [tangent,normal]", ln, col)
            u, a = idx
            if u not in sub.tangent_names or a not in sub.normal_names:
                raise ParseError(f"frame entry [{u},{a}] must be [tangent,normal] for {sname}", ln, col)
            if (u, a) in entries:
                raise ParseError(f"entry [{u},{a}] given twice", ln, col)
            entries[(u, a)] = value
        self.declare(Decl("frame", name, sname, FrameMatrix(sub, entries), lineno), m.start(1) + 1)

    def involution_decl(self, raw, lineno, body):
        m = _INVOLUTION_RE.match(raw)
        if not m:
            raise ParseError("expected 'involution NAME on CHART:'", lineno, 1)
        name, cname = m.groups()
        chart = self._chart(cname, lineno)
        comps = {}
        for ln, col, text in body:
            mm = _MAP_RE.match(text)
            if not mm:
                raise ParseError("expected 'var -> expression'", ln, col)
            var = mm.group(1)
            if var not in chart:
                raise ScriptNameError(f"unknown variable {var!r} in chart {chart.name!r}", ln)
            if var in comps:
                raise ParseError(f"image of {var!r} given twice", ln, col)
            comps[var] = self.scalar(mm.group(2), chart, ln, col + mm.start(2))
        try:
            phi = PolyMap.involution(chart, comps)
        except NotInvolution as exc:
            raise ParseError(str(exc), lineno, 1) from None
        self.declare(Decl("involution", name, cname, phi, lineno), m.start(1) + 1)

    # checks

    def check(self, raw, lineno, body):
        self.no_body(body, "check")
        text = raw[len("check"):]
        expect = ()
        em = re.search(r"\bexpect\b", text)
        if em:
            expect = self._expect(text[em.end():], lineno, len("check") + em.end())
            text = text[:em.start()]
        variables = ()
        if ":" in text:
            text, vtext = text.split(":", 1)
            variables = tuple(v.strip() for v in vtext.split(",") if v.strip())
        words = text.split()
        if not words:
            raise ParseError("missing check command", lineno, len("check") + 2)
        cmd, args = words[0], tuple(words[1:])
        if cmd not in COMMANDS:
            raise ParseError(f"unknown check {cmd!r}", lineno, raw.find(cmd) + 1)
        sigs, flags = COMMANDS[cmd]
        decls = [self.resolve(a, lineno) for a in args]
        if not any(len(sig) == len(decls) and all(k in d.kinds for k, d in zip(sig, decls)) for sig in sigs):
            wanted = " | ".join(" ".join(sig) for sig in sigs)
            raise ParseError(f"check {cmd} expects arguments: {wanted}", lineno, len("check") + 2)
        if cmd == "coisotropic":
            if not variables:
                raise ParseError("coisotropic needs ': var, ...'", lineno, len(raw))
            chart = decls[0].value.chart
            for v in variables:
                if v not in chart:
                    raise ScriptNameError(f"unknown variable {v!r} in chart {chart.name!r}", lineno)
        elif variables:
            raise ParseError(f"check {cmd} takes no variable list", lineno, raw.find(":") + 1)
        for flag, _ in expect:
            if flag not in flags and flag not in ("pass", "fail"):
                raise ParseError(f"check {cmd} has no flag {flag!r}", lineno, raw.find(flag, len("check")) + 1)
        self.script.checks.append(Check(cmd, args, variables, expect, lineno))

    def _expect(self, text: str, lineno: int, offset: int):
        out = []
        for part in text.split(","):
            p = part.strip()
            neg = p.startswith("!")
            flag = p[1:].strip() if neg else p
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", flag or ""):
                raise ParseError(f"bad expectation {p!r}", lineno, offset + 1)
            if flag == "fail":
                flag, neg = "pass", not neg
            out.append((flag, not neg))
        return tuple(out)


def parse_script(text: str) -> CheckScript:
    """Parse a check script; raises :class:`ParseError` or :class:`ScriptNameError`."""
    return _Parser(text).run()


# printing


def _fmt_value(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def print_script(script: CheckScript) -> str:
    """Canonical text; ``parse_script(print_script(s)) == s``."""
    out = []
    for d in script.declarations:
        v = d.value
        if d.keyword == "chart":
            out.append(f"chart {d.name}: {v.spec()}".rstrip())
        elif d.keyword in ("bivector", "vector", "multivector", "form"):
            head = f"{d.keyword} {d.name} on {d.chart}"
            if d.keyword in ("multivector", "form"):
                head += f" degree {v.degree}"
            out.append(head + ":")
            out.extend("  " + line for line in v.lines())
        elif d.keyword == "metric":
            out.append(f"metric {d.name} on {d.chart}:")
            out.extend("  " + line for line in v.lines())
        elif d.keyword == "function":
            out.append(f"function {d.name} on {d.chart} = {v}")
        elif d.keyword == "submanifold":
            spec = ", ".join(f"{n} = {_fmt_value(c)}" for n, c in v.normal)
            out.append(f"submanifold {d.name} in {d.chart}: normal {spec}".rstrip())
        elif d.keyword == "frame":
            out.append(f"frame {d.name} for {d.chart}:")
            for (u, a), s in sorted(v.entries.items()):
                out.append(f"  [{u},{a}] = {s}")
        elif d.keyword == "involution":
            out.append(f"involution {d.name} on {d.chart}:")
            for w in v.source.variables:
                comp = v.components[w]
                if comp != Scalar.variable(v.source, w):
                    out.append(f"  {w} -> {comp}")
    for c in script.checks:
        out.append(c.text())
    return "\n".join(out) + ("\n" if out else "")


__all__ = ["CheckScript", "Check", "Decl", "COMMANDS", "parse_script", "print_script"]

"""Execute a parsed check script and format its report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..errors import NotPreserved, SolderError
from ..lifts import coisotropic_normal_bundle, is_coisotropic, soldering_via_lift, tangent_jacobi, tangent_poisson
from ..report import Verdict, Witness
from ..structures import (
    ContactData,
    JacobiPair,
    LcsData,
    contact_verify,
    is_homogeneous,
    is_jacobi,
    is_poisson,
    lcs_verify,
    poissonize,
    symplectization_check,
)
from ..submanifold import (
    NormalizedSubmanifold,
    alternate_normal_check,
    classify,
    conformal_change,
    conformal_flatten,
    induced_structure,
    involution_fixed_locus_check,
    is_soldered,
    second_fundamental,
    soldered_closure_suite,
    tubular_poisson_check,
)
from .script import Check, CheckScript

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    check: Check
    status: str  # PASS, FAIL or ERROR
    flags: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[Witness] = None
    witnesses: tuple = ()
    message: str = ""
    output: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self, verbose: bool = False) -> dict:
        out = {
            "command": self.check.text(),
            "line": self.check.line,
            "status": self.status,
            "flags": dict(self.flags),
            "witness": self.witness.to_dict() if self.witness else None,
            "message": self.message,
            "output": list(self.output),
            "seconds": round(self.seconds, 6),
        }
        if verbose:
            out["all_witnesses"] = [w.to_dict() for w in self.witnesses]
        return out


@dataclass
class Report:
    results: List[CheckResult] = field(default_factory=list)
    skipped: int = 0  # checks not run because an earlier one raised ERROR

    @property
    def exit_code(self) -> int:
        return 0 if all(r.status == "PASS" for r in self.results) and not self.skipped else 1

    def counts(self) -> dict:
        out = {"PASS": 0, "FAIL": 0, "ERROR": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_dict(self, verbose: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "results": [r.to_dict(verbose) for r in self.results],
            "summary": self.counts(),
            "skipped": self.skipped,
            "exit_code": self.exit_code,
        }

    def to_json(self, verbose: bool = False) -> str:
        return json.dumps(self.to_dict(verbose), indent=2)

    def to_text(self, verbose: bool = False) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{r.status:5} line {r.check.line}: {r.check.text()}  ({r.seconds * 1000:.1f} ms)")
            if r.message:
                lines.append(f"      {r.message}")
            shown = r.witnesses if verbose else ((r.witness,) if r.witness else ())
            for w in shown:
                lines.append(f"      witness: {w}")
            if verbose or r.status != "PASS":
                lines.extend(f"      {o}" for o in r.output)
        c = self.counts()
        summary = f"{c['PASS']} passed, {c['FAIL']} failed, {c['ERROR']} errors"
        if self.skipped:
            summary += f", {self.skipped} not run after the error"
        lines.append(summary)
        return "\n".join(lines)


@dataclass
class _Outcome:
    verdict: Verdict
    flags: Dict[str, bool] = field(default_factory=dict)
    output: List[str] = field(default_factory=list)


def _pair(script: CheckScript, L: str, E: str) -> JacobiPair:
    return JacobiPair(script.value(L), script.value(E))


def _structure(script: CheckScript, args) -> object:
    """Bivector alone, or a Jacobi pair when a vector follows."""
    if len(args) == 2:
        return script.value(args[0])
    return _pair(script, args[0], args[1])


def _run_one(script: CheckScript, chk: Check) -> _Outcome:
    v = script.value
    a = chk.args
    cmd = chk.command
    if cmd == "poisson":
        return _Outcome(is_poisson(v(a[0])))
    if cmd == "jacobi":
        return _Outcome(is_jacobi(_pair(script, *a)))
    if cmd == "homogeneous":
        return _Outcome(is_homogeneous(v(a[0]), v(a[1])))
    if cmd == "poissonize":
        pair = _pair(script, a[0], a[1])
        hp = poissonize(pair)
        pv, hv, jv = is_poisson(hp.Pi), is_homogeneous(hp.Pi, hp.Z), is_jacobi(pair)
        flags = {"poisson": pv.ok, "homogeneous": hv.ok, "jacobi": jv.ok,
                 "agree": jv.ok == (pv.ok and hv.ok)}
        out = [f"Pi = {line}" for line in hp.Pi.lines()]
        if len(a) == 3 and jv.ok:
            sub = v(a[2])
            lifted = NormalizedSubmanifold(hp.Pi.chart, sub.normal, sub.name)
            fj, fp = classify(pair, sub), classify(hp.Pi, lifted)
            flags["dirac_transfer"] = fj.dirac == fp.dirac
            flags["ajc_transfer"] = fj.ajc == fp.apc
        ok = pv.ok and hv.ok and all(flags.values())
        w = pv.witness or hv.witness
        return _Outcome(Verdict(ok, w, {}, pv.all_witnesses + hv.all_witnesses), flags, out)
    if cmd in ("classify-poisson", "classify-jacobi"):
        flags = classify(_structure(script, a), v(a[-1]))
        if not flags.implications_hold():
            raise AssertionError("classification flags violate their implications")
        ws = tuple(flags.witnesses.values())
        return _Outcome(Verdict(True, None, {}, ws), flags.flags(), flags.lines())
    if cmd == "induced":
        res = induced_structure(_structure(script, a), v(a[-1]))
        out = [f"kind: {res.kind}"] + [f"Lambda' {line}" for line in res.Lambda.lines()]
        out += [f"E' {line}" for line in res.E.lines()]
        return _Outcome(res.verdict, {"poisson": res.kind == "poisson", "jacobi": res.kind == "jacobi"}, out)
    if cmd == "second-fundamental":
        data = second_fundamental(_structure(script, a), v(a[-1]))
        zero = data.is_zero()
        return _Outcome(Verdict(True), {"zero": zero}, data.lines())
    if cmd == "soldered":
        r = is_soldered(v(a[0]), v(a[1]))
        return _Outcome(r, {"algebraic": r.details["algebraic"], "derivative": r.details["derivative"]})
    if cmd == "soldered-lift":
        sub = v(a[-1])
        if len(a) == 3:
            pair = _pair(script, a[0], a[1])
            r = soldering_via_lift(pair, sub)
            direct = classify(pair, sub).dirac
        else:
            r = soldering_via_lift(v(a[0]), sub)
            direct = is_soldered(v(a[0]), sub).ok
        if direct != r.ok:
            raise AssertionError("lift route and direct route disagree")
        return _Outcome(r, {"agree": True})
    if cmd == "coisotropic":
        return _Outcome(is_coisotropic(v(a[0]), chk.variables))
    if cmd == "coisotropic-lift":
        Pi, sub = v(a[0]), v(a[1])
        r = coisotropic_normal_bundle(Pi, sub)
        dirac = classify(Pi, sub).dirac
        return _Outcome(r, {"dirac": dirac, "agree": dirac == r.ok})
    if cmd == "conformal-flatten":
        pair, sub = _pair(script, a[0], a[1]), v(a[2])
        phi = conformal_flatten(pair, sub)
        vanishes = not sub.restrict(phi)
        dirac = classify(conformal_change(pair, phi), sub).dirac
        ok = vanishes and dirac
        w = None if ok else Witness("changed pair is Dirac with phi|_N = 0", (), None, str(phi))
        return _Outcome(Verdict(ok, w, {}, (w,) if w else ()),
                        {"vanishes_on_n": vanishes, "dirac": dirac}, [f"phi = {phi}"])
    if cmd == "alternate-normal":
        r = alternate_normal_check(v(a[0]), v(a[1]), v(a[2]))
        return _Outcome(r, {k: r.details[k] for k in ("apc_tilde", "dirac_tilde")})
    if cmd == "tubular":
        r = tubular_poisson_check(v(a[0]), v(a[1]), v(a[2]), v(a[3]))
        return _Outcome(r, {k: r.details[k] for k in ("caracttub", "compD", "ptDirac", "strong")})
    if cmd == "involution":
        try:
            r = involution_fixed_locus_check(v(a[0]), v(a[1]))
        except NotPreserved as exc:
            defect = exc.defect
            ws = tuple(Witness("involution image minus tensor vanishes",
                               tuple(defect.chart.variables[i] for i in idx), None, str(val))
                       for idx, val in defect.items())
            return _Outcome(Verdict(False, ws[0] if ws else None, {}, ws),
                            {"preserved": False, "soldered": False},
                            [f"defect {line}" for line in defect.lines()])
        return _Outcome(r, {"preserved": True, "soldered": r.ok}, [str(r.details["locus"])])
    if cmd == "contact":
        return _Outcome(contact_verify(ContactData(v(a[0]), v(a[1]), v(a[2]))))
    if cmd == "symplectization":
        return _Outcome(symplectization_check(ContactData(v(a[0]), v(a[1]), v(a[2]))))
    if cmd == "lcs":
        return _Outcome(lcs_verify(LcsData(v(a[0]), v(a[1]), v(a[2]), v(a[3]))))
    if cmd == "closure":
        r = soldered_closure_suite(v(a[0]), Pi=v(a[1]) if len(a) == 2 else None)
        return _Outcome(r, {}, [f"{k}: {n}" for k, n in r.details.items()])
    if cmd == "tangent-poisson":
        PiC = tangent_poisson(v(a[0]))
        return _Outcome(Verdict(True), {}, PiC.lines())
    if cmd == "tangent-jacobi":
        tpair, hp = tangent_jacobi(_pair(script, a[0], a[1]))
        out = [f"Lambda_T {line}" for line in tpair.Lambda.lines()]
        out += [f"E_T {line}" for line in tpair.E.lines()]
        return _Outcome(Verdict(True), {}, out)
    raise ValueError(f"unknown check {cmd!r}")


def run_check(script: CheckScript, chk: Check) -> CheckResult:
    start = time.perf_counter()
    try:
        outcome = _run_one(script, chk)
    except (SolderError, AssertionError) as exc:
        return CheckResult(chk, "ERROR", message=f"{type(exc).__name__}: {exc}",
                           seconds=time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    flags = {"pass": outcome.verdict.ok, **outcome.flags}
    r = outcome.verdict
    if chk.expect:
        missed = [(k, want) for k, want in chk.expect if flags.get(k) != want]
        status = "FAIL" if missed else "PASS"
        message = "; ".join(f"expected {'' if want else '!'}{k}" for k, want in missed)
    else:
        status = "PASS" if r.ok else "FAIL"
        message = ""
    return CheckResult(chk, status, flags, r.witness, r.all_witnesses, message, outcome.output, elapsed)


def run(script: CheckScript) -> Report:
    """Run checks in order; a FAIL never stops the run, the first ERROR does."""
    report = Report()
    for k, chk in enumerate(script.checks):
        result = run_check(script, chk)
        report.results.append(result)
        if result.status == "ERROR":
            report.skipped = len(script.checks) - k - 1
            break
    return report


__all__ = ["CheckResult", "Report", "run", "run_check", "SCHEMA_VERSION"]

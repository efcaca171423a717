"""Dispatch of parsed checks and serialisation of the run report."""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .. import __version__, polyid, suites
from ..fock import FockVector, enumerate_basis
from ..qscalar import ONE, q_pow
from ..report import Report
from ..toroidal import RELATION_IDS, PiConfig, apply_h, display_exchange_check, gs16_convention_matrix, verify_relation
from .dsl import Call, Check, ListV, Mono, Range, Script, Word


@dataclass(frozen=True)
class Options:
    """Command-line defaults; None means "use the check's own default"."""

    window: int | None = None
    max_degree: int | None = None
    modes: int | None = None
    config: PiConfig = PiConfig()
    seed: int = 0
    timing: bool = False


@dataclass
class RunReport:
    reports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "version": __version__,
            "checks": [r.to_dict(timing) for r in self.reports],
            "pass": self.passed,
        }

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def to_text(self, timing: bool = False) -> str:
        lines = []
        for r in self.reports:
            line = r.summary()
            if timing:
                line += f" {r.millis} ms"
            lines.append(line)
            for k, v in r.notes.items():
                lines.append(f"    note {k}: {json.dumps(v)}")
            for mm in r.mismatches:
                lines.append(f"    mismatch at {json.dumps(mm['location'])}")
                lines.append(f"      lhs = {mm['lhs']}")
                lines.append(f"      rhs = {mm['rhs']}")
            if r.mismatch_count > len(r.mismatches):
                lines.append(f"    ... {r.mismatch_count - len(r.mismatches)} more mismatches")
        failed = sum(not r.passed for r in self.reports)
        lines.append("PASS" if not failed else f"FAIL ({failed} of {len(self.reports)} checks)")
        return "\n".join(lines) + "\n"


# -- value conversion ----------------------------------------------------------------


def to_python(v):
    if isinstance(v, Mono):
        return v.value
    if isinstance(v, Range):
        return range(v.lo, v.hi + 1)
    if isinstance(v, Word):
        return v.text
    if isinstance(v, ListV):
        out = []
        for x in v.items:
            x = to_python(x)
            out.extend(x if isinstance(x, range) else [x])
        return out
    return v


def states_from(v, opts: Options, default_degree: int = 3) -> list:
    if v is None:
        return enumerate_basis(default_degree if opts.max_degree is None else opts.max_degree)
    if not isinstance(v, Call):
        raise TypeError("states must be a basis(...) call")
    args = {k: x for k, _, x in v.args}
    st = enumerate_basis(args["deg"], args.get("lattice", 0))
    if "sample" in args and args["sample"] < len(st):
        rng = random.Random(opts.seed)
        keep = set(rng.sample(range(len(st)), args["sample"]))
        st = [s for k, s in enumerate(st) if k in keep]
    return st


def _config(check: Check, opts: Options) -> PiConfig:
    cfg = opts.config
    if check.get("uv") is not None:
        cfg = replace(cfg, uv=check.get("uv").text)
    if check.get("flip") is not None:
        cfg = replace(cfg, flip=check.get("flip").text == "on")
    if check.get("phi") is not None:
        cfg = replace(cfg, phi=check.get("phi").text)
    return cfg


def h_bracket(states, perturb=ONE) -> Report:
    """[pi(h_11), pi(h_1,-1)] = (q + q^-1)/2, times ``perturb`` for harness self-tests."""
    rep = Report("h_bracket", {"states": len(states), "perturb": str(perturb)})
    target = (q_pow(1) + q_pow(-1)) / 2 * perturb
    for s in states:
        v = FockVector.basis(s)
        lhs = apply_h(1, 1, apply_h(1, -1, v)) - apply_h(1, -1, apply_h(1, 1, v))
        rep.check({"state": str(s)}, lhs, v.scale(target))
    return rep


def run_check(check: Check, opts: Options = Options()) -> Report:
    name = check.name
    window = check.get("window", opts.window)
    if name in RELATION_IDS:
        params = {}
        for k, v in check.params:
            if k not in ("states", "window", "order", "uv", "flip", "phi"):
                params[k] = to_python(v)
        if opts.modes is not None and name in ("R1", "R2", "R3", "R4", "R5", "R6"):
            params.setdefault("m", opts.modes)
            if name not in ("R1", "R2"):
                params.setdefault("n", opts.modes)
        states = [] if name == "S4" else states_from(check.get("states"), opts)
        win = 3 if window is None else window
        return verify_relation(name, params, states, win, _config(check, opts), check.get("order", 6))
    kw = {k: to_python(v) for k, v in check.params if k != "states"}
    if name == "lemma7":
        return polyid.lemma7_check()
    if name == "quartic_bracket":
        return polyid.quartic_bracket_identity()
    if name == "serre_quartic":
        params = {k: v for k, v in kw.items() if k in ("budget", "sign", "i", "j")}
        return verify_relation("S4", params, (), 3, _config(check, opts))
    if name == "gs14_display":
        st = states_from(check.get("states"), opts)
        return display_exchange_check(st, 4 if window is None else window, kw.get("order", 6))
    if name == "gs16_conventions":
        st = states_from(check.get("states"), opts)
        return gs16_convention_matrix(st, 3 if window is None else window, kw.get("phi", "uv"))
    if name == "h_bracket":
        return h_bracket(states_from(check.get("states"), opts, 0), kw.get("perturb", ONE))
    if name in ("contraction", "limits", "prop5"):
        kw.pop("window", None)
        if window is not None:
            kw["radius"] = window
    if opts.max_degree is not None and name in ("heisenberg", "exchange", "contraction", "limits", "prop5"):
        kw.setdefault("max_degree", opts.max_degree)
    return getattr(suites, f"{name}_suite")(**kw)


def _run_indexed(args):
    check, opts = args
    return run_check(check, opts)


def run(script: Script, opts: Options = Options(), jobs: int = 1) -> RunReport:
    """Run every check; results keep script order whatever the completion order."""
    checks = list(script.checks)
    if jobs > 1 and len(checks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_indexed, [(c, opts) for c in checks]))
    else:
        reports = [run_check(c, opts) for c in checks]
    return RunReport(reports)

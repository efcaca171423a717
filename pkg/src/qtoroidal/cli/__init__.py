"""Command-line driver: ``qtoroidal --script all.checks``.

Exit status is 0 when every check passes, 1 on any mismatch and 2 on
usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources

from ..toroidal import RELATION_IDS, TEMPLATES, PiConfig, RelationError
from .dsl import SUITES, DslError, format_script, parse
from .runner import Options, RunReport, run

__all__ = ["main", "parse", "format_script", "run", "Options", "RunReport"]

SUITE_DOCS = {
    "heisenberg": "[e_i(m), e_j(n)] = m/2 delta on every basis state",
    "exchange": "E_+(a,z) E_-(b,w) exchange with its two-point kernel",
    "contraction": "X X against its normal ordering times the four-factor kernel",
    "limits": "u/v limits of the normal-ordered product",
    "lemma4": "partial fractions of (1-az)^-1 (1-bz)^-1",
    "prop5": "[X_ij, X_ji] in delta form, plus [pi(h_11), pi(h_1,-1)]",
    "lemma7": "four-variable polynomial identity and its w-coefficients",
    "quartic_bracket": "rational-function reduction of the quartic Serre relation",
    "serre_quartic": "quartic Serre relation on the vacuum (alias of S4)",
    "gs14_display": "u_01 X_01 exchange factor (z+q^3/2 w)/(z-q^3/2 w) (z-q^-5/2 w)/(z+q^-5/2 w)",
    "gs16_conventions": "GS16 under all four uv/flip settings",
    "h_bracket": "[pi(h_11), pi(h_1,-1)] = (q+q^-1)/2, with an optional perturb factor",
}


def _convention(text: str) -> PiConfig:
    kw = {}
    for part in filter(None, text.split(",")):
        key, _, val = part.partition("=")
        key, val = key.strip(), val.strip()
        if key == "uv":
            kw["uv"] = val
        elif key == "flip":
            if val not in ("on", "off"):
                raise argparse.ArgumentTypeError("flip must be on or off")
            kw["flip"] = val == "on"
        elif key == "phi":
            kw["phi"] = val
        else:
            raise argparse.ArgumentTypeError(f"unknown convention key {key!r}")
    try:
        return PiConfig(**kw)
    except RelationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qtoroidal", description="Exact checks for the twisted quantum toroidal algebra.")
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--script", metavar="FILE", help="relation script ('-' for stdin, @all for a shipped one)")
    src.add_argument("--relation", metavar="ID", help="run a single relation or suite")
    src.add_argument("--list", action="store_true", help="list relation ids and suites")
    ap.add_argument("--window", type=int, help="window radius for ad-hoc checks")
    ap.add_argument("--max-degree", type=int, help="maximal state degree")
    ap.add_argument("--modes", type=int, help="odd-mode bound for R1-R6")
    ap.add_argument("--convention", type=_convention, default=PiConfig(), help="e.g. uv=negated,flip=off,phi=heisenberg")
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled state sets")
    ap.add_argument("--timing", action="store_true", help="include wall-clock milliseconds in reports")
    ap.add_argument("--print", dest="echo", action="store_true", help="parse the script and print it back")
    return ap


def _list() -> str:
    lines = ["relations:"]
    lines += [f"  {r:5s} {TEMPLATES[r]}" for r in RELATION_IDS]
    lines.append("suites:")
    lines += [f"  {s:17s} {SUITE_DOCS[s]}" for s in SUITES]
    return "\n".join(lines) + "\n"


def _read_script(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    if name.startswith("@"):
        # scripts shipped with the package: @all, @perturbed, @smoke
        res = resources.files("qtoroidal").joinpath("checks", name[1:] + ".checks")
        if not res.is_file():
            raise OSError(f"no shipped script named {name[1:]!r}")
        return res.read_text(encoding="utf-8")
    with open(name, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.list:
        sys.stdout.write(_list())
        return 0
    for flag in ("window", "max_degree", "modes"):
        val = getattr(args, flag)
        if val is not None and val < 0:
            ap.error(f"--{flag.replace('_', '-')} must be non-negative")
    if args.jobs < 1:
        ap.error("--jobs must be positive")
    try:
        if args.script:
            text = _read_script(args.script)
            script = parse(text)
        elif args.relation:
            script = parse(f"check {args.relation} {{}}")
        else:
            ap.error("one of --script, --relation or --list is required")
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return 2
    except DslError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    if args.echo:
        sys.stdout.write(format_script(script))
        return 0
    opts = Options(args.window, args.max_degree, args.modes, args.convention, args.seed, args.timing)
    try:
        report = run(script, opts, args.jobs)
    except (RelationError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    out = report.to_json(args.timing) + "\n" if args.format == "json" else report.to_text(args.timing)
    sys.stdout.write(out)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

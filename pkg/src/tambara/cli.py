"""Command-line entry point: ``tambara <verb> [options]``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import serialize as ser
from .functor import check_axioms
from .ideals import enumerate_ideals, is_radical, prime_ideals
from .spectrum import build_radid_frame, nakaoka_spectrum
from .workspace import (SUITES, Workspace, WorkspaceError, builtin_workspace, load_workspace,
                        map_section, run_suite)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tambara", description="Ideals and spectra of finite Tambara functors.")
    sub = p.add_subparsers(dest="verb", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workspace", type=Path, help="workspace JSON file (default: built-in fixtures)")
    common.add_argument("--functor", action="append",
                        help="functor name or constructor expression; repeatable")
    common.add_argument("--out", type=Path, help="directory for emitted files (default: stdout)")
    common.add_argument("--format", choices=ser.FORMATS, default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for suites")
    sub.add_parser("check", parents=[common], help="verify the Tambara axioms")
    sub.add_parser("ideals", parents=[common], help="list Tambara ideals with radical/prime flags")
    sub.add_parser("spectrum", parents=[common], help="Nakaoka spectrum of a functor")
    sub.add_parser("frame", parents=[common], help="frame of radical ideals")
    m = sub.add_parser("map", parents=[common], help="spectral map of a morphism")
    m.add_argument("--morphism", action="append", help="morphism name; repeatable")
    s = sub.add_parser("suite", parents=[common], help="run a verification suite")
    s.add_argument("name", choices=SUITES)
    s.add_argument("--morphism", action="append")
    sub.add_parser("run", parents=[common], help="execute the jobs listed in a workspace")
    return p


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text, encoding="utf-8")


def _safe(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_.()" else "_" for c in name)


def _ideal_list(t) -> dict:
    primes = set(prime_ideals(t))
    return {"kind": "ideal_list", "functor": t.name, "ok": True,
            "ideals": [{"levels": ser._ideal_levels(i.levels), "radical": is_radical(i),
                        "prime": i in primes} for i in enumerate_ideals(t)]}


def _functor_names(ws: Workspace, given: list[str] | None) -> list[str]:
    return given if given else ws.functor_names


def run_verb(verb: str, ws: Workspace, functors: list[str] | None, morphisms: list[str] | None,
             fmt: str, out: Path | None, jobs: int, suite: str | None = None) -> bool:
    if verb == "suite":
        report, arts = run_suite(ws, suite, functors, morphisms, jobs)
        for name, text in sorted(arts.items()):
            if out is not None:
                _write(out, _safe(name), text)
        _write(out, f"report.{'txt' if fmt == 'text' else 'json'}",
               ser.to_text(report) if fmt == "text" else ser.dumps(report))
        return report["ok"]
    if verb == "map":
        names = morphisms or ws.morphism_names
        if not names:
            raise WorkspaceError("no morphisms in scope")
        ok = True
        for n in names:
            d = {"kind": "map_report", "morphism": n} | map_section(ws.morphism(n))
            ok &= d["ok"]
            _write(out, f"{_safe(n)}.map.{'txt' if fmt == 'text' else 'json'}",
                   ser.to_text(d) if fmt == "text" else ser.dumps(d))
        return ok
    ok = True
    ext = {"json": "json", "dot": "dot", "text": "txt"}[fmt]
    for n in _functor_names(ws, functors):
        t = ws.functor_or_expression(n)
        if verb == "check":
            rep = check_axioms(t)
            ok &= rep.ok
            obj = rep
        elif verb == "ideals":
            obj = _ideal_list(t)
        elif verb == "spectrum":
            obj = nakaoka_spectrum(t)
        else:
            obj = build_radid_frame(t)
            ok &= obj.checks.ok
        if fmt == "dot" and verb in ("check", "ideals"):
            raise WorkspaceError(f"no DOT form for '{verb}' output")
        _write(out, f"{_safe(t.name)}.{verb}.{ext}", ser.emit(obj, fmt))
    return ok


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        ws = load_workspace(args.workspace) if args.workspace else builtin_workspace()
        if args.verb == "run":
            ok = True
            for job in ws.jobs:
                ok &= run_verb(job["verb"], ws, job.get("functors"), job.get("morphisms"),
                               job.get("format", args.format), args.out, args.jobs, job.get("suite"))
            return 0 if ok else 1
        ok = run_verb(args.verb, ws, args.functor, getattr(args, "morphism", None), args.format,
                      args.out, args.jobs, getattr(args, "name", None))
    except (WorkspaceError, ser.SerializationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

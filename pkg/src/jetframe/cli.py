"""Command-line front end: ``jetframe gen | verify | pole | export``."""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import List, Sequence

from . import bellkit as bk
from .errors import JetFrameError
from .fieldforge import FrameSpec, assemble_frame
from .jetcalc import COMPACT, LOG, JetConfig
from .verifier import SUITES, identities_report, pole_audit, verify_frame

# (n, k, degrees, case) of the acceptance configurations
PRESETS = {
    "small": [(2, 1, (2,), COMPACT), (2, 2, (3,), COMPACT), (2, 1, (1, 2), COMPACT),
              (1, 1, (2,), LOG)],
    "medium": [(3, 2, (3,), COMPACT), (2, 3, (4,), COMPACT), (3, 1, (2, 2), COMPACT),
               (2, 2, (3,), LOG), (1, 1, (2, 2), LOG)],
}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _degrees(s: str) -> tuple:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be a comma list of integers, got {s!r}")


def config_from_args(args) -> JetConfig:
    if args.n is None or args.k is None or args.d is None:
        raise JetFrameError("--n, --k and --d are required (or give a frame file / --preset)")
    return JetConfig(args.n, args.k, args.d, args.case, None, args.chart)


def _frames(args) -> List[FrameSpec]:
    if getattr(args, "frame", None):
        with open(args.frame) as fh:
            return [FrameSpec.from_json(json.load(fh))]
    if getattr(args, "preset", None):
        return [assemble_frame(JetConfig(*spec)) for spec in PRESETS[args.preset]]
    return [assemble_frame(config_from_args(args))]


def _summary(frame: FrameSpec) -> str:
    counts = ", ".join(f"{k}={v}" for k, v in frame.counts().items())
    return f"{frame.cfg.to_json()}: {len(frame.fields)} fields ({counts}); max pole order {frame.max_pole_order()}"


def cmd_gen(args) -> int:
    frames = _frames(args)
    for fr in frames:
        print(_summary(fr), file=sys.stderr)
    payload = frames[0].to_json() if len(frames) == 1 else {"frames": [f.to_json() for f in frames]}
    _write(dumps(payload), args.out)
    return 0


def _suites(args) -> List[str]:
    if args.all or not args.suite:
        return list(SUITES)
    return list(dict.fromkeys(args.suite))


def cmd_verify(args) -> int:
    suites = _suites(args)
    only_ids = suites == ["identities"]
    if only_ids and not args.frame and not args.preset and args.n is None:
        if args.k is None:
            raise JetFrameError("--k is required for the identity suite")
        report = identities_report(args.k, 2, args.seed)
    else:
        reports = [verify_frame(fr, suites, args.points, args.seed) for fr in _frames(args)]
        if len(reports) == 1:
            report = reports[0]
        else:
            report = {"runs": reports, "pass": all(r["pass"] for r in reports)}
    _write(dumps(report), args.out)
    print("PASS" if report["pass"] else "FAIL", file=sys.stderr)
    return 0 if report["pass"] else 1


def _pole_text(frame: FrameSpec, audit: dict) -> str:
    lines = [f"config {frame.cfg.to_json()}",
             f"{'field':<40} {'family':<12} {'computed':>8} {'predicted':>12}  match"]
    for r in audit["rows"]:
        pred = f"{r['relation']} {r['predicted']}"
        lines.append(f"{r['field']:<40} {r['family']:<12} {r['computed']:>8} {pred:>12}  {r['match']}")
    lines.append(f"max {audit['max']} at {audit['argmax']} (5k-2 = {audit['bound']})")
    return "\n".join(lines) + "\n"


def cmd_pole(args) -> int:
    out = []
    for fr in _frames(args):
        audit = pole_audit(fr)
        sys.stderr.write(_pole_text(fr, audit))
        out.append({"config": fr.cfg.to_json(), **audit})
    _write(dumps(out[0] if len(out) == 1 else out), args.out)
    return 0


def cmd_export(args) -> int:
    if args.what == "bell":
        if args.k is None:
            raise JetFrameError("--k is required for the Bell export")
        k = args.k
        if args.format == "json":
            payload = {"k": k, "B_z1": bk.matrix_to_json(bk.bell_matrix_z1(k)),
                       "B_t": bk.matrix_to_json(bk.bell_matrix_t(k))}
            _write(dumps(payload), args.out)
        else:
            lines = [f"B[{p},{q}](z1) = {bk.bell_z1(p, q).to_text()}"
                     for p in range(1, k + 1) for q in range(1, p + 1)]
            _write("\n".join(lines) + "\n", args.out)
        return 0
    frames = _frames(args)
    if args.format == "json":
        payload = frames[0].to_json() if len(frames) == 1 else {"frames": [f.to_json() for f in frames]}
        _write(dumps(payload), args.out)
    else:
        lines = []
        for fr in frames:
            lines.append(f"# {fr.cfg.to_json()}")
            for ff in fr.fields:
                lines.append(f"{ff.label} [{ff.family}, pole order {ff.pole_order}] = {ff.field.to_text()}")
        _write("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jetframe", description="Slanted vector fields on vertical jets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, frame_arg=True):
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--d", type=_degrees, help="degrees, comma separated (one per component)")
        p.add_argument("--case", choices=(COMPACT, LOG), default=COMPACT)
        p.add_argument("--chart", type=int, default=1)
        p.add_argument("--preset", choices=sorted(PRESETS))
        p.add_argument("--out", help="output file (default stdout)")
        if frame_arg:
            p.add_argument("frame", nargs="?", help="FrameSpec JSON file")

    g = sub.add_parser("gen", help="build a frame and write its FrameSpec JSON")
    common(g, frame_arg=False)
    g.set_defaults(func=cmd_gen, frame=None)

    v = sub.add_parser("verify", help="run verification suites; exit 0 iff all pass")
    common(v)
    v.add_argument("--suite", action="append", choices=SUITES)
    v.add_argument("--all", action="store_true", help="run every suite")
    v.add_argument("--points", type=int, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("pole", help="pole-order table")
    common(p)
    p.set_defaults(func=cmd_pole)

    e = sub.add_parser("export", help="export a frame or the Bell matrices")
    common(e)
    e.add_argument("--what", choices=("frame", "bell"), default="frame")
    e.add_argument("--format", choices=("json", "text"), default="json")
    e.set_defaults(func=cmd_export)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            return args.func(args)
        except (JetFrameError, OSError, ValueError, KeyError) as exc:
            print(f"jetframe: error: {exc}", file=sys.stderr)
            return 2


if __name__ == "__main__":
    raise SystemExit(main())

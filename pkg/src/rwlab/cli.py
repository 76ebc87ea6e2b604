"""Command-line entry point.

Every verb prints line-oriented, deterministic output; ``--machine``
switches report verbs to tab-separated key=value records.  Exit status is
0 on success/pass, 1 when a report contains a FAIL (or a confluence check
finds an unresolved peak), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path as FsPath

from . import casestudy, completion, invariant, obstruction, rewrite, ring, structure
from .core import EMPTY, ParseError, Presentation, RwlabError, parse_presentation, word, word_str
from .invariant import CtParams, CASE_STUDY_WEIGHTS


def _load_presentation(args) -> Presentation:
    if getattr(args, "pres_file", None):
        try:
            return parse_presentation(FsPath(args.pres_file).read_text())
        except OSError as exc:
            raise RwlabError(f"cannot read {args.pres_file}: {exc}") from None
    return casestudy.preset(args.preset)


def _add_common(sub, preset_default="Qbar"):
    sub.add_argument("-p", "--pres-file", help="presentation file")
    sub.add_argument(
        "--preset",
        default=preset_default,
        choices=("P", "Q", "Qbar", "M4", "N4"),
        help="built-in presentation (default %(default)s)",
    )
    sub.add_argument("--machine", action="store_true", help="tab-separated key=value output")
    sub.add_argument("--jobs", type=int, default=1, help="accepted for interface compatibility; execution is single-process")


def _sign(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError(f"expected +1 or -1, got {text}")


def _ct_params(args) -> CtParams:
    from .invariant import _REQUIRED

    required = _REQUIRED[args.circuit]
    kwargs = {}
    for slot in ("x",):
        if getattr(args, slot, None) is not None:
            kwargs[slot] = getattr(args, slot)
    for slot in ("w", "w1", "w2"):
        val = getattr(args, slot, None)
        if val is not None:
            kwargs[slot] = word(val)
        elif slot in required:
            kwargs[slot] = EMPTY  # word slots default to the empty word
    for slot in ("eps", "delta", "eps1", "delta1", "eps2", "delta2"):
        val = getattr(args, slot, None)
        if val is not None:
            kwargs[slot] = val
    return CtParams(args.circuit, **kwargs)


def _emit_report(report, args) -> int:
    lines = report.machine_lines() if args.machine else report.lines()
    print("\n".join(lines))
    return 0 if report.passed else 1


def _emit_scalar(args, key: str, value) -> int:
    print(f"{key}={value}" if args.machine else value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwlab", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("reduce", help="normalize a word")
    _add_common(s)
    s.add_argument("-w", "--word", required=True)
    s.add_argument("--trace", action="store_true", help="print one rewrite step per line")

    s = sub.add_parser("nf", help="enumerate normal forms")
    _add_common(s)
    s.add_argument("--max-len", type=int, required=True)

    s = sub.add_parser("peaks", help="list critical peaks")
    _add_common(s)
    s.add_argument("--schema-bound", type=int, default=0)

    s = sub.add_parser("confluence", help="resolve every critical peak")
    _add_common(s)
    s.add_argument("--schema-bound", type=int, default=0)

    s = sub.add_parser("complete", help="bounded Knuth-Bendix completion")
    _add_common(s, preset_default="Q")
    s.add_argument("--max-rules", type=int, default=50)
    s.add_argument("--max-lhs-len", type=int, default=6)
    s.add_argument("--schema-bound", type=int, default=2)

    s = sub.add_parser("equal", help="decide u = v over a complete system")
    _add_common(s)
    s.add_argument("u")
    s.add_argument("v")

    s = sub.add_parser("phi", help="invariant of a critical circuit")
    _add_common(s)
    s.add_argument("--circuit", required=True, choices=invariant.CT_FAMILIES)
    s.add_argument("--x")
    s.add_argument("--w")
    s.add_argument("--w1")
    s.add_argument("--w2")
    for slot in ("eps", "delta", "eps1", "delta1", "eps2", "delta2"):
        s.add_argument(f"--{slot}", type=_sign)

    s = sub.add_parser("partial", help="the derivation of a free-group word")
    _add_common(s, preset_default="P")
    s.add_argument("-w", "--word", required=True)

    s = sub.add_parser("classify", help="H-class of a word")
    _add_common(s)
    s.add_argument("-w", "--word", required=True)

    s = sub.add_parser("sigma", help="stabilizer congruence test")
    _add_common(s)
    s.add_argument("w1")
    s.add_argument("w2")

    s = sub.add_parser("ball", help="distances within a Cayley ball")
    _add_common(s)
    s.add_argument("-w", "--word", default="", help="center (default the empty word)")
    s.add_argument("--radius", type=int, required=True)

    s = sub.add_parser("dist", help="directed distance d(x, y)")
    _add_common(s)
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--radius", type=int, required=True)

    s = sub.add_parser("isometry", help="compare two systems' Cayley balls")
    _add_common(s, preset_default="M4")
    s.add_argument("--preset2", default="N4", choices=("P", "Q", "Qbar", "M4", "N4"))
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("-w", "--word", default="", help="ball center")

    s = sub.add_parser("hn", help="b-exponent membership test")
    _add_common(s, preset_default="P")
    s.add_argument("-w", "--word", required=True)

    s = sub.add_parser("witness", help="ring-verified witness construction")
    _add_common(s, preset_default="P")
    s.add_argument("--kind", required=True, choices=("commutator", "phi2x"))
    s.add_argument("--circuit", choices=invariant.CT_FAMILIES)
    s.add_argument("--x")
    s.add_argument("--w")
    s.add_argument("--w1")
    s.add_argument("--w2")
    for slot in ("eps", "delta", "eps1", "delta1", "eps2", "delta2"):
        s.add_argument(f"--{slot}", type=_sign)

    s = sub.add_parser("verify", help="run a verification suite")
    _add_common(s)
    s.add_argument(
        "suite", choices=("prop31", "figure2", "identities", "obstruction", "isometry")
    )
    s.add_argument("--max-len", type=int, help="main sweep bound")
    s.add_argument("--radius", type=int)

    return parser


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verb == "reduce":
        p = _load_presentation(args)
        w = word(args.word)
        if args.trace:
            path = rewrite.reduction_path(w, p)
            trace = rewrite.format_trace(path)
            if trace:
                print(trace)
            print(word_str(path.tau))
            return 0
        return _emit_scalar(args, "nf", word_str(rewrite.normalize(w, p)))

    if args.verb == "nf":
        p = _load_presentation(args)
        for w in rewrite.enumerate_normal_forms(p, args.max_len):
            print(word_str(w))
        return 0

    if args.verb == "peaks":
        p = _load_presentation(args)
        for peak in completion.critical_peaks(p, args.schema_bound):
            print(peak.describe())
        return 0

    if args.verb == "confluence":
        p = _load_presentation(args)
        report = completion.is_confluent_bounded(p, args.schema_bound)
        for line in report.lines():
            print(line)
        print(f"confluent: {'true' if report.confluent else 'false'}")
        return 0 if report.confluent else 1

    if args.verb == "complete":
        p = _load_presentation(args)
        completed, report = completion.knuth_bendix(
            p, args.max_rules, args.max_lhs_len, args.schema_bound
        )
        for rule in report.added:
            print(f"added {rule}")
        print(f"status: {report.status}")
        print(f"rules: {len(completed.rules)}")
        return 0

    if args.verb == "equal":
        p = _load_presentation(args)
        same = completion.word_problem_equal(word(args.u), word(args.v), p)
        return _emit_scalar(args, "equal", "true" if same else "false")

    if args.verb == "phi":
        params = _ct_params(args)
        ambient = casestudy.preset("P")
        value = invariant.phi_path(
            casestudy.build_ct_circuit(params), CASE_STUDY_WEIGHTS, ambient
        )
        print(ring.format_ring(value))
        return 0

    if args.verb == "partial":
        ambient = casestudy.preset("P")
        print(ring.format_ring(invariant.partial_derivation(word(args.word), ambient)))
        return 0

    if args.verb == "classify":
        p = _load_presentation(args)
        return _emit_scalar(args, "hclass", structure.classify(word(args.word), p))

    if args.verb == "sigma":
        p = _load_presentation(args)
        same = structure.sigma_equal(word(args.w1), word(args.w2), p)
        return _emit_scalar(args, "sigma", "true" if same else "false")

    if args.verb == "ball":
        p = _load_presentation(args)
        ball = structure.cayley_ball(p, word(args.word), args.radius)
        for line in ball.dump_lines(p.ordering):
            print(line)
        return 0

    if args.verb == "dist":
        p = _load_presentation(args)
        d = structure.d_A(p, word(args.x), word(args.y), args.radius)
        if args.machine:
            return _emit_scalar(args, "dist", d if d is not None else "unreachable")
        print(d if d is not None else f"unreachable within radius {args.radius}")
        return 0

    if args.verb == "isometry":
        p1 = _load_presentation(args)
        p2 = casestudy.preset(args.preset2)
        result = structure.isometry_check(p1, p2, args.radius, word(args.word))
        for line in result.lines():
            print(line)
        return 0 if result.passed else 1

    if args.verb == "hn":
        member = obstruction.hn_member(word(args.word))
        return _emit_scalar(args, "member", "true" if member else "false")

    if args.verb == "witness":
        ambient = casestudy.preset("P")
        if args.kind == "commutator":
            if args.w is None or args.eps is None or args.delta is None:
                parser.error("commutator witness needs --w, --eps, --delta")
            w = obstruction.commutator_witness(word(args.w), args.eps, args.delta, ambient)
        else:
            if args.circuit is None:
                parser.error("phi2x witness needs --circuit")
            w = obstruction.phi_to_x_witness(_ct_params(args), ambient)
        for line in w.lines():
            print(line)
        return 0

    if args.verb == "verify":
        if args.suite == "prop31":
            report = casestudy.verify_prop31(args.max_len or 6)
        elif args.suite == "figure2":
            report = casestudy.verify_figure2(
                args.max_len if args.max_len is not None else 4
            )
        elif args.suite == "identities":
            report = casestudy.verify_identities(args.max_len or 5)
        elif args.suite == "obstruction":
            report = casestudy.verify_obstruction()
        else:
            report = casestudy.verify_isometry(radius=args.radius or 4)
        return _emit_report(report, args)

    parser.error(f"unknown verb {args.verb}")
    return 2


def main(argv=None) -> int:
    try:
        code = run(sys.argv[1:] if argv is None else argv)
    except ParseError as exc:
        print(f"rwlab: {exc}", file=sys.stderr)
        return 2
    except RwlabError as exc:
        print(f"rwlab: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0
    return code


if __name__ == "__main__":
    sys.exit(main())

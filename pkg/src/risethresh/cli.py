"""Command-line front end.

Subcommands: run (stream an instance through an algorithm), duel (the
adaptive phased adversary), gen (instance generators), opt (offline
optimum), verify-math (numeric verification of the analysis), sweep
(duel ratios across bin counts, CSV plus figure).
Exit codes: 0 success, 1 check failure, 2 usage error.
"""

import argparse
import json
import os
import sys

from .adversary import (
    build_sequence,
    default_alpha,
    fuzz_instance,
    greedy_trap,
    run_adversary,
    theoretical_U,
)
from .instances import Instance
from .oracle import DEFAULT_NODE_BUDGET, check_certificate, exact_opt
from .reports import (
    duel_row,
    make_engine,
    run_stream,
    write_csv,
    write_report,
    write_transcript,
)
from .validate import verify_boundary_conditions


def _parse_alpha(text, n):
    if n < 1:
        raise ValueError("--n must be a positive integer, got %d" % (n,))
    if text == "paper":
        return default_alpha(n)
    try:
        alpha = float(text)
    except ValueError:
        raise ValueError("--alpha expects a float or 'paper', got %r" % (text,))
    if not 0.0 <= alpha <= 1.0 / n:
        raise ValueError("--alpha must lie in [0, 1/n] = [0, %g], got %g"
                         % (1.0 / n, alpha))
    return alpha


def _parse_mix(text):
    mix = {}
    for part in text.split(","):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError("--mix expects name=weight pairs, got %r" % (part,))
        mix[key.strip()] = float(value)
    return mix


def _sibling_png(path):
    return os.path.splitext(path)[0] + ".png"


def cmd_run(args):
    instance = Instance.load(args.instance)
    engine = make_engine(args.alg, instance.n)
    rows, report = run_stream(engine, instance, slack_constant=args.slack)
    if args.transcript:
        write_transcript(args.transcript, rows)
    if args.report:
        write_report(args.report, report)
    print("alg=%s n=%d offered=%d accepted=%d rejected=%d terminated=%s"
          % (report.alg, report.n, report.offered, report.accepted,
             report.rejected, report.terminated))
    print("gain=%.12g opt=%s ratio=%s" % (
        report.gain,
        "none" if report.opt is None else "%.12g" % report.opt,
        "none" if report.ratio is None else "%.12g" % report.ratio,
    ))
    failed = [c for c in report.checks if not c["holds"]]
    for check in report.checks:
        margin = ("vacuous" if check["margin"] is None
                  else "%.6g" % check["margin"])
        print("check %-18s %s margin=%s"
              % (check["id"], "PASS" if check["holds"] else "FAIL", margin))
    return 1 if failed else 0


def cmd_duel(args):
    alpha = _parse_alpha(args.alpha, args.n)
    transcript = None
    exceeded = False
    for _ in range(args.repeat):
        engine = make_engine(args.alg, args.n)
        transcript = run_adversary(args.n, engine, alpha=alpha,
                                   epsilon=args.epsilon)
        # the phase bound caps every online policy; exceeding it (beyond
        # the perturbation slack) means an engine or adversary bug
        bound = (theoretical_U(build_sequence(args.n, alpha, args.epsilon)).value
                 + transcript.epsilon)
        print("alg=%s n=%d j=%d gain=%.12g opt=%.12g ratio=%.12g bound=%.12g"
              % (transcript.alg, transcript.n, transcript.j,
                 transcript.det_gain, transcript.opt_value, transcript.ratio,
                 bound))
        if transcript.ratio > bound + 1e-12:
            print("BOUND EXCEEDED: ratio %.12g > %.12g"
                  % (transcript.ratio, bound))
            exceeded = True
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(transcript.to_dict(), sort_keys=True, indent=2))
            fh.write("\n")
    return 1 if exceeded else 0


def cmd_gen(args):
    if args.generator == "adversary":
        alpha = _parse_alpha(args.alpha, args.n)
        seq = build_sequence(args.n, alpha, args.epsilon)
        items = []
        for size in seq.s:
            items.extend([size] * args.n)
        instance = Instance(
            n=args.n,
            items=tuple(items),
            opt_certificate=float(args.n),
            meta={"generator": "adversary", "n": args.n,
                  "alpha": seq.alpha, "epsilon": seq.epsilon},
        )
    elif args.generator == "greedy-trap":
        instance = greedy_trap(args.n, args.epsilon)
    else:
        instance = fuzz_instance(args.n, args.length, _parse_mix(args.mix),
                                 args.seed)
    instance.save(args.out)
    print("wrote %s (%d items, n=%d)" % (args.out, len(instance.items),
                                         instance.n))
    return 0


def cmd_opt(args):
    instance = Instance.load(args.instance)
    result = exact_opt(instance.items, instance.n, node_budget=args.budget)
    print("value=%.12g exact=%s nodes=%d"
          % (result.value, result.exact, result.nodes))
    if instance.opt_certificate is not None:
        verdict = check_certificate(instance.items, instance.n,
                                    instance.opt_certificate)
        print("certificate=%.12g %s%s" % (
            instance.opt_certificate,
            "ok" if verdict else "MISMATCH",
            "" if verdict else " (%s)" % verdict.reason,
        ))
        if not verdict:
            return 1
    return 0


def cmd_verify_math(args):
    reports = verify_boundary_conditions(grid_step=args.grid_step)
    for rep in reports:
        print("%s %-34s min_margin=%.6e tol=%.0e"
              % ("PASS" if rep.passed else "FAIL", rep.property_id,
                 rep.min_margin, rep.tolerance))
    failed = [r for r in reports if not r.passed]
    print("%d/%d properties verified at grid step %g"
          % (len(reports) - len(failed), len(reports), args.grid_step))
    if args.out:
        payload = [rep.to_dict() for rep in reports]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2))
            fh.write("\n")
        from .plots import render_margins
        render_margins(reports, _sibling_png(args.out))
        print("wrote %s and %s" % (args.out, _sibling_png(args.out)))
    return 1 if failed else 0


def cmd_sweep(args):
    try:
        n_list = [int(part) for part in args.n_list.split(",") if part]
    except ValueError:
        raise ValueError("--n-list expects comma-separated integers, got %r"
                         % (args.n_list,))
    if not n_list:
        raise ValueError("--n-list is empty")
    rows = []
    for n in n_list:
        engine = make_engine(args.alg, n)
        transcript = run_adversary(n, engine, alpha=_parse_alpha(args.alpha, n))
        rows.append(duel_row(transcript, engine.snapshot()))
        print("n=%d ratio=%.12g" % (n, transcript.ratio))
    rows.sort(key=lambda r: (r["n"], r["alg"]))
    write_csv(args.out, rows)
    from .plots import render_sweep
    render_sweep(rows, _sibling_png(args.out))
    print("wrote %s and %s" % (args.out, _sibling_png(args.out)))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="risethresh",
        description="rising-threshold online knapsack: runs, duels, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="stream an instance through an algorithm")
    p.add_argument("--alg", choices=("rta", "firstfit"), required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--transcript", help="write per-item decisions (JSON lines)")
    p.add_argument("--report", help="write the run report (JSON)")
    p.add_argument("--slack", type=float, default=3.0,
                   help="guarantee-check slack constant C (default 3)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("duel", help="drive the phased adversary")
    p.add_argument("--alg", choices=("rta", "firstfit"), default="rta")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="paper",
                   help="phase offset, a float or 'paper' for 1/(8n)")
    p.add_argument("--epsilon", type=float, default=None,
                   help="tie-break perturbation (default 1/(64 n^2))")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--out", help="write the duel transcript (JSON)")
    p.set_defaults(func=cmd_duel)

    p = sub.add_parser("gen", help="write an instance file")
    gen_sub = p.add_subparsers(dest="generator", required=True)

    g = gen_sub.add_parser("adversary", help="flattened phase stream")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", default="paper")
    g.add_argument("--epsilon", type=float, default=None)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    g = gen_sub.add_parser("greedy-trap", help="barely-large items then full ones")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--epsilon", type=float, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    g = gen_sub.add_parser("fuzz", help="seeded random stream")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--length", type=int, required=True)
    g.add_argument("--mix", default="small=1,medium=1,large=1",
                   help="comma-separated name=weight pairs")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("opt", help="offline optimum of an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_opt)

    p = sub.add_parser("verify-math", help="sweep the closed-form properties")
    p.add_argument("--grid-step", type=float, default=1e-4)
    p.add_argument("--out", help="write margins JSON (+figure alongside)")
    p.set_defaults(func=cmd_verify_math)

    p = sub.add_parser("sweep", help="duel ratios across bin counts")
    p.add_argument("--alg", choices=("rta", "firstfit"), default="rta")
    p.add_argument("--n-list", required=True,
                   help="comma-separated bin counts, e.g. 100,1000,10000")
    p.add_argument("--alpha", default="paper")
    p.add_argument("--out", required=True, help="CSV path (+figure alongside)")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

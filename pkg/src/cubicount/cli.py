"""Batch driver: class-number tables, Dirichlet coefficients, Picard group
dumps, and every identity check as a subcommand with machine-readable
output.

Exit codes: 0 all requested checks pass, 1 a mathematical identity failed
(the first counterexample is printed), 2 operational failure (budget, IO,
bad arguments).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bridge, counting, quad
from .counting import BudgetExceeded, frac_str
from .quad import is_fundamental


CHECKS = ("on", "recursion", "rhs", "lhs", "fields-pic", "prop6", "scholz", "oracle")


def _shard_ranges(max_abs: int, shards: int):
    """Deterministic partition of 1..max_abs into contiguous shards."""
    size = max(1, -(-max_abs // shards))
    out = []
    lo = 1
    while lo <= max_abs:
        out.append((lo, min(lo + size - 1, max_abs)))
        lo += size
    return out


def cmd_table(args) -> int:
    if args.max <= 0:
        payload = "[]\n" if args.format == "json" else "delta,h_num,h_den,hhat_num,hhat_den\n"
        _emit(args.out, payload)
        return 0
    if args.format == "json":
        _emit(args.out, counting.table_json(args.max, budget=args.budget) + "\n")
        return 0
    all_lines = counting.table_csv_lines(args.max, budget=args.budget)
    # shards partition rows by |delta| range and are merged back sorted by
    # delta; output is byte-identical for every shard count
    body = []
    for lo, hi in _shard_ranges(args.max, args.shards):
        body.extend(
            ln for ln in all_lines[1:] if lo <= abs(int(ln.split(",")[0])) <= hi
        )
    body.sort(key=lambda ln: int(ln.split(",")[0]))
    _emit(args.out, "\n".join([all_lines[0]] + body) + "\n")
    return 0


def cmd_zeta(args) -> int:
    z = counting.zeta_coefficients(args.max, budget=args.budget)
    rows = []
    for n in range(1, args.max + 1):
        rows.append(
            {
                "n": n,
                "zeta_plus": frac_str(z["zeta_plus"][n]),
                "zeta_minus": frac_str(z["zeta_minus"][n]),
                "zhat_plus": frac_str(z["zhat_plus"][n]),
                "zhat_minus": frac_str(z["zhat_minus"][n]),
            }
        )
    if args.format == "json":
        _emit(args.out, json.dumps(rows, indent=0) + "\n")
    else:
        lines = ["n,zeta_plus,zeta_minus,zhat_plus,zhat_minus"]
        for row in rows:
            lines.append(
                "%(n)d,%(zeta_plus)s,%(zeta_minus)s,%(zhat_plus)s,%(zhat_minus)s" % row
            )
        _emit(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_dump_pic(args) -> int:
    deltas = args.delta or []
    if not deltas and args.max:
        deltas = [D for D in range(-args.max, args.max + 1) if quad.in_discs(D)]
    payload = [quad.picard_dump(D) for D in deltas]
    _emit(args.out, json.dumps(payload, indent=0) + "\n")
    return 0


def _verify_on(args, reports):
    cn = counting.class_numbers(args.max, budget=args.budget)
    for D in sorted(cn):
        h, hh = cn[D]
        want = 3 * h if D > 0 else h
        reports.append(
            {"check": "on", "delta": D, "lhs": hh, "rhs": want, "pass": hh == want}
        )


def _verify_recursion(args, reports):
    # without explicit base discriminants, stay inside the default budget
    cap = min(args.max, 20)
    ds = args.D if args.D else [D for D in range(-cap, cap + 1) if counting.in_discs(D)]
    for D in ds:
        for p in args.primes:
            reports.extend(
                counting.check_recursion(D, p, include_hhat=args.hhat, budget=args.budget)
            )


def _verify_rhs(args, reports):
    for D in range(-args.max, args.max + 1):
        if quad.in_discs(D):
            reports.append(bridge.rhs_identity_check(D))


def _verify_lhs(args, reports):
    for D in range(-args.max, args.max + 1):
        if not quad.in_discs(D):
            continue
        _, m = quad.fundamental_part(D)
        if any(e >= 3 for e in counting.factorize(m).values()):
            continue
        reports.append(bridge.lhs_identity_check(D))


def _verify_fields_pic(args, reports):
    for D in range(-args.max, args.max + 1):
        if quad.in_discs(D):
            reports.append(bridge.check_fields_pic(D, budget=args.budget))


def _verify_prop6(args, reports):
    # the restricted ideal sum runs over orders of discriminant up to 27 max,
    # so keep the default range modest
    cap = min(args.max, 40)
    for D in range(-cap, cap + 1):
        if quad.in_discs(D) and D % 3 != 0:
            reports.append(bridge.check_prop_3notdiv(D))


def _verify_scholz(args, reports):
    for D in range(-args.max, args.max + 1):
        if D != 1 and is_fundamental(D):
            reports.append(bridge.check_scholz(D))


def _verify_oracle(args, reports):
    X = min(args.max, 200)
    box = counting.box_orbit_counts(X)
    table = counting.orbit_table(X, False, budget=args.budget)
    keys = sorted(set(box) | set(table))
    for D in keys:
        lhs = len(table.get(D, []))
        rhs = box.get(D, 0)
        reports.append(
            {"check": "oracle", "delta": D, "lhs": Fraction(lhs), "rhs": Fraction(rhs), "pass": lhs == rhs}
        )


def _summary_lines(reports):
    lines = ["check        delta      lhs        rhs        pass"]
    for r in reports:
        lines.append(
            "%-12s %-10s %-10s %-10s %s"
            % (r["check"], r["delta"], _jsonable(r["lhs"]), _jsonable(r["rhs"]),
               "ok" if r["pass"] else "FAIL")
        )
    return lines


def cmd_verify(args) -> int:
    which = args.which or ["on"]
    reports = []
    runners = {
        "on": _verify_on,
        "recursion": _verify_recursion,
        "rhs": _verify_rhs,
        "lhs": _verify_lhs,
        "fields-pic": _verify_fields_pic,
        "prop6": _verify_prop6,
        "scholz": _verify_scholz,
        "oracle": _verify_oracle,
    }
    for name in which:
        if name not in runners:
            print("unknown check: %s (choose from %s)" % (name, ", ".join(CHECKS)), file=sys.stderr)
            return 2
        runners[name](args, reports)
    payload = [
        {
            "check": r["check"],
            "delta": r["delta"],
            "lhs": _jsonable(r["lhs"]),
            "rhs": _jsonable(r["rhs"]),
            "pass": bool(r["pass"]),
        }
        for r in reports
    ]
    _emit(args.out, json.dumps(payload, indent=0) + "\n")
    if args.summary:
        print("\n".join(_summary_lines(reports)), file=sys.stderr)
    failures = [r for r in reports if not r["pass"]]
    if failures:
        first = failures[0]
        print(
            "FAIL %s at delta=%s: lhs=%s rhs=%s"
            % (first["check"], first["delta"], first["lhs"], first["rhs"]),
            file=sys.stderr,
        )
        return 1
    print("%d checks passed" % len(reports), file=sys.stderr)
    return 0


def _jsonable(v):
    if isinstance(v, Fraction):
        return frac_str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


def _emit(path, text):
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    ap = argparse.ArgumentParser(prog="cubicount")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max", type=int, default=60, help="bound on |delta|")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--shards", type=int, default=1)
        p.add_argument("--out", default="-")
        p.add_argument("--budget", type=int, default=None, help="cap on |disc| enumerated")

    t = sub.add_parser("table", help="h/hhat table as CSV or JSON")
    common(t)
    t.set_defaults(func=cmd_table)

    z = sub.add_parser("zeta", help="Dirichlet coefficients of the four series")
    common(z)
    z.set_defaults(func=cmd_zeta)

    v = sub.add_parser("verify", help="run identity checks")
    common(v)
    v.add_argument("which", nargs="*", choices=CHECKS, help="checks to run")
    v.add_argument("--primes", type=int, nargs="*", default=[2, 3])
    v.add_argument("--D", type=int, nargs="*", default=None, help="recursion base discriminants")
    v.add_argument("--p", type=int, default=None, help="single recursion prime")
    v.add_argument("--no-hhat", dest="hhat", action="store_false", help="skip the hhat recursion variant")
    v.add_argument("--summary", action="store_true", help="print a readable summary table to stderr")
    v.set_defaults(func=cmd_verify, hhat=True)

    d = sub.add_parser("dump-pic", help="Picard group dumps as JSON")
    common(d)
    d.add_argument("--delta", type=int, nargs="*", default=None)
    d.set_defaults(func=cmd_dump_pic)
    return ap


def _apply_config(argv):
    """Optional JSON config file supplies defaults; explicit flags win."""
    import sys as _sys

    argv = list(_sys.argv[1:]) if argv is None else list(argv)
    if "--config" not in argv:
        return argv, None
    i = argv.index("--config")
    path = argv[i + 1]
    del argv[i : i + 2]
    with open(path) as fh:
        cfg = json.load(fh)
    return argv, cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        argv, cfg = _apply_config(argv)
    except (OSError, json.JSONDecodeError, IndexError) as exc:
        print("bad config: %s" % exc, file=sys.stderr)
        return 2
    args = ap.parse_args(argv)
    if cfg:
        known = {"max", "format", "shards", "out", "budget", "primes"}
        for key, val in cfg.items():
            if key in known and "--" + key not in argv and hasattr(args, key):
                setattr(args, key, val)
    if getattr(args, "p", None):
        args.primes = [args.p]
    if getattr(args, "shards", 1) < 1:
        print("shard count must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("io failure: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

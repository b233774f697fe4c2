"""Command-line front end: compute, bounds, verify, coeff.

Exit codes: 0 pass, 1 violation, 2 undecided, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import balls, bounds, closed_forms, coefficients, exact, lemmas
from .errors import CertifyError
from .report import SCHEMA_VERSION, VerificationReport

EXIT_PASS, EXIT_FAIL, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


def parse_range(text: str, lo_min: int = 0) -> range:
    """``a..b`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None
    if lo < lo_min or hi < lo:
        raise UsageError(f"bad range {text!r}; need {lo_min} <= A <= B")
    return range(lo, hi + 1)


@dataclass
class RunConfig:
    command: str
    check_id: str | None = None
    ranges: dict[str, range] = field(default_factory=dict)
    prec: int = 128
    max_prec: int | None = None
    seed: int = 42
    fmt: str = "json"
    cache_file: str | None = None
    jobs: int = 1


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prec", type=int, default=None, help="starting precision in bits")
    p.add_argument("--max-prec", type=int, default=None, help="precision cap in bits")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cache-file", default=None, help="file cache for the p(n) table")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partition-certify", description="Certified bounds for the partition function.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    pc = sub.add_parser("compute", help="exact p(n) over a range")
    pc.add_argument("range")
    _common(pc)

    pb = sub.add_parser("bounds", help="certified sandwich at one n")
    pb.add_argument("n", type=int)
    pb.add_argument("--order", "-w", type=int, default=4)
    pb.add_argument("--kind", choices=("main", "corollary", "bprz", "cjw"), default="main")
    _common(pb)

    pv = sub.add_parser("verify", help="run a verification sweep")
    pv.add_argument("check_id", choices=sorted(CHECKS))
    for name in ("t", "n", "k", "w"):
        pv.add_argument(f"--{name}", default=None, help=f"{name} range A..B")
    pv.add_argument("--grid", type=int, default=15)
    pv.add_argument("--samples", type=int, default=500)
    _common(pv)

    pco = sub.add_parser("coeff", help="exact coefficients g(t)")
    pco.add_argument("range")
    pco.add_argument("--decimal", action="store_true")
    pco.add_argument("--check-omega", action="store_true")
    _common(pco)
    return parser


# rendering


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows if len(rows) != 1 else rows[0], sort_keys=True) + "\n")
    elif fmt == "csv":
        flat = [_flatten(r) for r in rows]
        header = sorted({k for r in flat for k in r})
        w = csv.DictWriter(out, fieldnames=header, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
    else:
        for r in rows:
            out.write("  ".join(f"{k}={v}" for k, v in sorted(_flatten(r).items())) + "\n")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


# commands


def cmd_compute(cfg: RunConfig, out) -> int:
    ns = cfg.ranges["n"]
    table = exact.partition_table(ns[-1], cfg.cache_file)
    rows = [{"n": n, "p": str(table[n])} for n in ns]
    if cfg.fmt == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "values": rows}, sort_keys=True) + "\n")
    else:
        _emit(rows, cfg.fmt, out)
    return EXIT_PASS


def cmd_bounds(cfg: RunConfig, n: int, w: int, kind: str, out) -> int:
    if n < 1:
        raise UsageError("n must be at least 1")
    if kind == "bprz" and w < 2:
        raise UsageError("bprz bounds need --order >= 2")
    table = exact.partition_table(n + 1, cfg.cache_file)
    max_bits = cfg.max_prec or balls.precision_cap()
    p = table[n]
    if cfg.prec:
        pair = bounds._BUILDERS[kind](n, w, cfg.prec, None)
        verdict = pair.verdict(p)
    else:
        verdict, pair = bounds.certify_bracket(n, w, p, kind, max_bits)
    _emit([pair.to_dict(p)], cfg.fmt, out)
    if verdict == "violation" and not pair.threshold_ok:
        # outside the guaranteed range a violation contradicts nothing
        return EXIT_PASS
    return {"inside": EXIT_PASS, "violation": EXIT_FAIL, "undecided": EXIT_UNDECIDED}[verdict]


def cmd_coeff(cfg: RunConfig, ts: range, decimal: bool, check_omega: bool, out) -> int:
    if check_omega:
        good = sum(coefficients.g(t) == coefficients.omega(t) for t in ts)
        rep = VerificationReport("g-omega", f"t in {ts[0]}..{ts[-1]}")
        for t in ts:
            rep.record(t, coefficients.g(t) == coefficients.omega(t))
        rep.notes["summary"] = f"g==omega: {good}/{len(ts)}"
        if cfg.fmt == "json":
            out.write(rep.to_json() + "\n")
        else:
            out.write(rep.notes["summary"] + "\n")
        return rep.exit_code
    prec = cfg.prec or 64
    rows = []
    for t in ts:
        val = coefficients.g(t)
        row = {"t": t, "exact": repr(val)[len("RingElem(") : -1], "terms": val.to_json_terms()}
        if decimal:
            b = val.to_ball(prec)
            row["decimal"] = balls.to_decimal(b, max(5, prec * 3 // 10))
            row["ball"] = bounds.ball_json(b)
        rows.append(row)
    if cfg.fmt == "json":
        out.write(json.dumps({"schema_version": SCHEMA_VERSION, "coefficients": rows}, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        _emit([{k: v for k, v in r.items() if k != "terms"} for r in rows], "csv", out)
    else:
        for r in rows:
            line = f"g({r['t']}) = {r['exact']}"
            if decimal:
                line += f"  ~ {r['decimal']}"
            out.write(line + "\n")
    return EXIT_PASS


# verification registry


def _rng(cfg: RunConfig, name: str, default: range) -> range:
    return cfg.ranges.get(name) or default


def _v_certificate(cfg, args):
    grid = closed_forms.verify_certificate_grid(args.grid)
    rep = closed_forms.verify_certificate_sample(args.samples, cfg.seed)
    rep.check_id = "certificate"
    rep.parameter_range = f"{args.grid}^3 grid and {args.samples} random points"
    rep.merge(grid)
    rep.notes["grid_complete_proof"] = grid.notes["complete_proof"]
    return rep


def _v_closed_forms(cfg, args):
    ts = _rng(cfg, "t", range(1, 61))
    rep = VerificationReport("closed-forms", f"t in {ts[0]}..{ts[-1]}, all valid u")
    for i in (1, 2, 3, 4):
        for t in ts:
            if t < 1:
                continue
            lo, hi = {1: (1, t), 2: (0, t - 1), 3: (1, t), 4: (0, t)}[i]
            for u in range(lo, hi + 1):
                rep.record((i, t, u), closed_forms.inner_closed_form(i, t, u) == closed_forms.direct_inner_sum(i, t, u))
    return rep


def _v_recurrence(cfg, args):
    ts = _rng(cfg, "t", range(1, 41))
    rep = VerificationReport("recurrence3", f"t in {ts[0]}..{ts[-1]}")
    for t in ts:
        vals = {u: closed_forms.direct_inner_sum(3, t, u) for u in range(1, t + 1)} if t >= 1 else {}
        for u in range(1, t - 1):
            rep.record(("rec", t, u), closed_forms.verify_recurrence3(t, u, vals))
        if t >= 1:
            first, second = closed_forms.initial_values3(t)
            rep.record(("init1", t), first == vals[1])
            if second is not None:
                rep.record(("init2", t), second == vals[2])
    return rep


def _v_s_estimate(i):
    def run(cfg, args):
        ts = _rng(cfg, "t", range(lemmas.S_ESTIMATE_MIN_T[i], 1001))
        return lemmas.s_estimate_sweep(i, max(ts[0], lemmas.S_ESTIMATE_MIN_T[i]), ts[-1], cfg.prec, cfg.max_prec or 512)

    return run


def _v_tail_lemma(which):
    def run(cfg, args):
        return lemmas.tail_lemma_sweep(which, args.samples if args.samples != 500 else 100, cfg.seed, cfg.prec)

    return run


def _v_main(cfg, args):
    ws = _rng(cfg, "w", range(1, 9))
    n_max = _rng(cfg, "n", range(1, 5001))[-1]
    table = exact.partition_table(n_max, cfg.cache_file)
    rep = VerificationReport("main-theorem", f"w in {ws[0]}..{ws[-1]}, guaranteed n up to {n_max}")
    for w in ws:
        ns = cfg.ranges.get("n") or bounds.guaranteed_range(w, n_max)
        ns = [n for n in ns if bounds.threshold_ok(n, w)]
        if ns:
            rep.merge(bounds.sandwich_sweep([w], ns, table, "main", cfg.jobs, cfg.max_prec or bounds.SWEEP_MAX_PREC))
    return rep


def _v_corollary(cfg, args):
    ns = _rng(cfg, "n", range(bounds.COROLLARY_START, 5001))
    table = exact.partition_table(ns[-1], cfg.cache_file)
    rep = bounds.sandwich_sweep([4], ns, table, "corollary", cfg.jobs, cfg.max_prec or bounds.SWEEP_MAX_PREC)
    lo, hi = bounds.corollary_reduction()
    rep.record("L(4) > -1/14", lemmas._verdict(lo))
    rep.record("U(4) < 1/13", lemmas._verdict(hi))
    return rep


def _v_logconcave(cfg, args):
    ns = _rng(cfg, "n", range(bounds.LOGCONCAVE_START, 10**5 + 1))
    table = exact.partition_table(ns[-1] + 1, cfg.cache_file)
    rep = VerificationReport("logconcave", f"n in {ns[0]}..{ns[-1]}")
    for n in ns:
        if n >= 1:
            rep.record(n, exact.log_concave_exact(n, table))
    return rep


def _v_logconcave_bounds(cfg, args):
    ns = _rng(cfg, "n", range(2000, 2101))
    rep = VerificationReport("logconcave-bounds", f"n in {ns[0]}..{ns[-1]}, brackets only")
    for n in ns:
        rep.record(n, lemmas._verdict(bounds.logconcave_from_bounds(n)))
    return rep


def _v_oracle(cfg, args):
    ns = _rng(cfg, "n", range(0, 2001))
    a = exact.p_pentagonal_table(ns[-1])
    b = exact.p_dp_table(ns[-1])
    rep = VerificationReport("oracle", f"n in {ns[0]}..{ns[-1]}")
    for n in ns:
        rep.record(n, a[n] == b[n])
    return rep


def _v_pp1(cfg, args):
    ks = _rng(cfg, "k", range(0, 61))
    rep = VerificationReport("pp1", f"0 <= k, j <= {ks[-1]}")
    for k in ks:
        for j in ks:
            lhs, rhs = coefficients.pp1_identity_sides(k, j)
            rep.record((k, j), lhs == rhs)
    return rep


def _v_omega(cfg, args):
    ts = _rng(cfg, "t", range(0, 201))
    rep = VerificationReport("g-omega", f"t in {ts[0]}..{ts[-1]}")
    for t in ts:
        rep.record(t, coefficients.g(t) == coefficients.omega(t))
    return rep


def _v_errorsum(cfg, args):
    ks = _rng(cfg, "k", range(1, 21))
    ns = cfg.ranges.get("n") or (10, 116, 1000)
    rep = VerificationReport("errorsum", f"j in 1..4, k in {ks[0]}..{ks[-1]}, n in {list(ns)}")
    for j in range(1, 5):
        for k in ks:
            for n in ns:
                rep.record((j, k, n), lemmas._verdict(lemmas.check_errorsum(j, k, n, cfg.prec)), cfg.prec)
    return rep


def _v_errorlem5(cfg, args):
    ks = _rng(cfg, "k", range(1, 51))
    n_max = _rng(cfg, "n", range(1, 101))[-1]
    return lemmas.errorlem5_sweep(ks[-1], n_max, cfg.prec)


def _v_ghat(cfg, args):
    ks = _rng(cfg, "k", range(2, 101))
    rep = VerificationReport("ghat-dominates", f"k in {ks[0]}..{ks[-1]}")
    for k in ks:
        rep.record(k, lemmas._verdict(bounds.ghat_dominates(k, cfg.prec)), cfg.prec)
    return rep


CHECKS: dict[str, Callable] = {
    "certificate": _v_certificate,
    "closed-forms": _v_closed_forms,
    "recurrence3": _v_recurrence,
    "ratio-lem2": lambda cfg, a: lemmas.ratio_bounds_sweep("lem2", _rng(cfg, "t", range(1, 301))[-1]),
    "ratio-lem3": lambda cfg, a: lemmas.ratio_bounds_sweep("lem3", _rng(cfg, "t", range(1, 301))[-1]),
    "product-inequality": lambda cfg, a: lemmas.product_inequality_sweep(10_000, cfg.seed),
    "closed-sums": lambda cfg, a: lemmas.check_closed_sums(cfg.prec),
    "tail-bound": lambda cfg, a: lemmas.tail_bound_sweep(_rng(cfg, "t", range(1, 501))[-1], cfg.prec),
    "component-majorant": lambda cfg, a: lemmas.majorant_sweep(_rng(cfg, "t", range(0, 101))[-1], cfg.prec),
    "errorsum": _v_errorsum,
    "errorlem5": _v_errorlem5,
    "main-theorem": _v_main,
    "corollary": _v_corollary,
    "logconcave": _v_logconcave,
    "logconcave-bounds": _v_logconcave_bounds,
    "oracle": _v_oracle,
    "pp1": _v_pp1,
    "omega": _v_omega,
    "ghat-dominates": _v_ghat,
    **{f"s-estimate-{i}": _v_s_estimate(i) for i in (1, 2, 3, 4)},
    **{f"tail-{w}": _v_tail_lemma(w) for w in lemmas.TAIL_LEMMAS},
}


def cmd_verify(cfg: RunConfig, args, out) -> int:
    rep = CHECKS[cfg.check_id](cfg, args)
    if rep.seed is None and cfg.check_id in ("certificate", "product-inequality"):
        rep.seed = cfg.seed
    if cfg.fmt == "json":
        out.write(rep.to_json() + "\n")
    elif cfg.fmt == "csv":
        _emit([{k: v for k, v in rep.to_dict().items() if k != "notes"}], "csv", out)
    else:
        out.write(
            f"{rep.check_id}: {rep.status} ({rep.total} points, {len(rep.violations)} violations, "
            f"{len(rep.undecided)} undecided, max {rep.precision_bits_max} bits)\n"
        )
    return rep.exit_code


def _config(args) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        check_id=getattr(args, "check_id", None),
        prec=args.prec or 0,
        max_prec=args.max_prec,
        seed=args.seed,
        fmt=args.format,
        cache_file=args.cache_file,
        jobs=max(1, args.jobs),
    )
    if cfg.prec and cfg.prec < 2:
        raise UsageError("--prec must be at least 2")
    if cfg.max_prec is not None:
        if cfg.max_prec < 2:
            raise UsageError("--max-prec must be at least 2")
        if cfg.max_prec > balls.precision_cap():
            raise UsageError(f"--max-prec exceeds the cap {balls.precision_cap()}")
    for name in ("t", "n", "k", "w"):
        text = getattr(args, name, None)
        if isinstance(text, str):
            cfg.ranges[name] = parse_range(text, 1 if name == "w" else 0)
    if cfg.command == "compute":
        cfg.ranges["n"] = parse_range(args.range)
    return cfg


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        if cfg.command == "compute":
            return cmd_compute(cfg, out)
        if cfg.command == "bounds":
            if args.order < 1:
                raise UsageError("--order must be at least 1")
            return cmd_bounds(cfg, args.n, args.order, args.kind, out)
        if cfg.command == "coeff":
            return cmd_coeff(cfg, parse_range(args.range), args.decimal, args.check_omega, out)
        if not cfg.prec:
            cfg.prec = 128
        return cmd_verify(cfg, args, out)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except CertifyError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (used by tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

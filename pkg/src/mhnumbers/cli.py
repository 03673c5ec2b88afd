"""Command-line front end.

    mhnumbers [global flags] <command> [options]

Commands: macdonald, coeffs, mh, cutjoin, wavefn, algebra, jack, verify, export.
Exit status: 0 success, 1 an identity check failed, 2 bad input or cache.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import checks
from .cache import CacheError, TableCache
from .classalgebra import (
    EtaNormalizationError,
    eta_idempotent,
    eta_structure,
    idempotent,
    structure_constants,
    verify_cohomology_iso,
)
from .cutjoin import cut_and_join
from .hurwitz import mh, mh_disconnected
from .macdonald import coeff_a, jack_limit, macdonald_table
from .partitions import Partition, c_AB, c_prime_AB, enumerate_partitions, j, j_AB
from .qtfield import EtaPoleError, serialize
from .wavefn import phi, phi_mh_sum

DEFAULT_MAX_DEGREE = 6
_GLOBAL_DEFAULTS = {"max_degree": DEFAULT_MAX_DEGREE, "out": "json", "cache_dir": None, "jobs": 1, "seed": 0}


class UsageError(Exception):
    """Bad arguments; reported on stderr with exit status 2."""


# ---------------------------------------------------------------------------
# argument helpers


def _partition(s):
    try:
        return Partition.parse(s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _partitions(s):
    if s is None or s.strip() == "":
        return ()
    return tuple(_partition(x) for x in s.split("|"))


def _eta(s):
    try:
        a, b = (int(x) for x in s.split(","))
    except ValueError:
        raise UsageError(f"--eta expects 'A,B' with positive integers, got {s!r}") from None
    if a < 1 or b < 1:
        raise UsageError("--eta needs A, B >= 1")
    return a, b


def _degree(d, cfg):
    if d < 1:
        raise UsageError("degree must be >= 1")
    if d > cfg.max_degree:
        raise UsageError(f"degree {d} exceeds --max-degree {cfg.max_degree}")
    return d


def _warm(cfg, d):
    if cfg.cache is not None:
        cfg.cache.warm(d)


# ---------------------------------------------------------------------------
# output


def _text(x):
    if isinstance(x, Fraction):
        return str(x)
    return serialize(x)


def _emit(cfg, obj, rows=None, header=None):
    """Write ``obj`` as JSON/pretty, or ``rows`` as CSV."""
    out = cfg.stdout
    if cfg.out == "csv":
        if rows is None:
            raise UsageError("this command has no CSV form; use --out json")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    elif cfg.out == "pretty":
        _pretty(obj, out)
    else:
        out.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def _pretty(obj, out, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                out.write(f"{pad}{k}:\n")
                _pretty(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _pretty(v, out, indent)
                out.write("\n")
            else:
                out.write(f"{pad}- {v}\n")
    else:
        out.write(f"{pad}{obj}\n")


# ---------------------------------------------------------------------------
# commands


def table_json(d):
    tab = macdonald_table(d)
    obj = tab.to_json()
    return {
        "schema_version": obj["schema_version"],
        "degree": d,
        "rows": obj["rows"],
        "j": {str(lam): serialize(j(lam)) for lam in tab.partitions},
    }


def table_rows(d):
    tab = macdonald_table(d)
    return [
        [str(lam), str(dl), serialize(tab.a[lam][dl])] for lam in tab.partitions for dl in tab.partitions
    ]


def cmd_macdonald(cfg, args):
    d = _degree(args.d, cfg)
    _warm(cfg, d)
    _emit(cfg, table_json(d), table_rows(d), ["lambda", "delta", "a"])


def cmd_coeffs(cfg, args):
    lam = _partition(args.lam)
    _degree(lam.weight, cfg)
    _warm(cfg, lam.weight)
    deltas = [_partition(args.delta)] if args.delta else enumerate_partitions(lam.weight)
    for dl in deltas:
        if dl.weight != lam.weight:
            raise UsageError(f"|Δ|={dl.weight} differs from |λ|={lam.weight}")
    vals = {str(dl): serialize(coeff_a(lam, dl)) for dl in deltas}
    _emit(
        cfg,
        {"lambda": str(lam), "values": vals},
        [[str(lam), k, v] for k, v in vals.items()],
        ["lambda", "delta", "a"],
    )


def cmd_mh(cfg, args):
    d = args.d
    if d != 0:
        _degree(d, cfg)
        _warm(cfg, d)
    profiles = _partitions(args.profiles)
    for p in profiles:
        if p.weight != d:
            raise UsageError(f"profile {p} is not a partition of d={d}")
    if args.disconnected:
        if args.genus is None:
            raise UsageError("--disconnected needs --genus")
        val = mh_disconnected(args.h, d, profiles, args.genus)
        obj = {"value": serialize(val), "genus": args.genus, "constraint_ok": True}
    else:
        obj = mh(args.h, d, profiles, require_nonneg_genus=args.require_nonneg_genus).to_json()
    _emit(cfg, obj, [[obj["value"], obj["genus"], obj["constraint_ok"]]], ["value", "genus", "constraint_ok"])


def cmd_cutjoin(cfg, args):
    d = _degree(args.d, cfg)
    delta = _partition(args.delta)
    if delta.weight != d:
        raise UsageError(f"Δ={delta} is not a partition of d={d}")
    _warm(cfg, d)
    op = cut_and_join(delta, d, parity_gate=args.parity_gate)
    parts = enumerate_partitions(d)
    if args.hbar_one:
        at_one = op.at_hbar_one()
        obj = {
            str(g): {str(gp): serialize(at_one[(g, gp)]) for gp in parts if (g, gp) in at_one} for g in parts
        }
        rows = [[str(g), str(gp), serialize(v)] for (g, gp), v in sorted(at_one.items())]
        header = ["gamma", "gamma_prime", "value"]
    else:
        obj = op.to_json()
        rows = [
            [str(g), str(gp), e, serialize(v)]
            for (g, gp), lp in sorted(op.entries.items())
            for e, v in sorted(lp.terms.items())
        ]
        header = ["gamma", "gamma_prime", "hbar_exp", "value"]
    _emit(cfg, obj, rows, header)


def cmd_wavefn(cfg, args):
    d = _degree(args.d, cfg)
    _warm(cfg, d)
    deltas = _partitions(args.deltas)
    if args.parity_gate and not args.mh_sum:
        raise UsageError("--parity-gate only applies together with --mh-sum")
    try:
        if args.mh_sum:
            series = phi_mh_sum(args.h, d, deltas, args.k, args.order, parity_gate=args.parity_gate)
        else:
            series = phi(args.h, d, deltas, args.k, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    obj = series.to_json()
    rows = [
        [l, key, e, v]
        for l, row in obj["coeffs"].items()
        for key, lp in row.items()
        for e, v in lp.items()
    ]
    _emit(cfg, obj, rows, ["u_index", "partitions", "hbar_exp", "value"])


def cmd_algebra(cfg, args):
    d = _degree(args.d, cfg)
    _warm(cfg, d)
    eta = _eta(args.eta) if args.eta else None
    parts = enumerate_partitions(d)
    if args.verify:
        return _algebra_verify(cfg, d, eta)
    if args.idempotents:
        if eta is None:
            obj = {str(lam): {str(k): serialize(v) for k, v in idempotent(lam).coeffs.items()} for lam in parts}
        else:
            try:
                obj = {
                    str(lam): {
                        str(k): str(v)
                        for k, v in eta_idempotent(lam, *eta, scale_order=args.scale_order).coeffs.items()
                    }
                    for lam in parts
                }
            except EtaNormalizationError as exc:
                cfg.stderr.write(f"identity violation (idempotent limit): {exc}\n")
                return 1
        rows = [[lam, k, v] for lam, row in obj.items() for k, v in row.items()]
        _emit(cfg, {"degree": d, "idempotents": obj}, rows, ["lambda", "delta", "coefficient"])
        return 0
    table = eta_structure(d, *eta) if eta else structure_constants(d).C
    obj = {"|".join(map(str, key)): _text(v) for key, v in table.items() if v}
    rows = [[str(a), str(b), str(c), _text(v)] for (a, b, c), v in table.items() if v]
    _emit(cfg, {"degree": d, "C": obj}, rows, ["delta1", "delta2", "delta3", "value"])
    return 0


def _algebra_verify(cfg, d, eta):
    results = [checks.check_frobenius(d, cfg.seed)]
    if eta is not None:
        res = checks.CheckResult("eta-idempotents", "cohomology isomorphism on the η-path")
        ok, report = verify_cohomology_iso(d, *eta)
        res.record(ok, f"d={d} (A,B)={eta}: {'; '.join(report[:3])}")
        results.append(res)
    return _report(cfg, results, d)


def cmd_jack(cfg, args):
    d = _degree(args.d, cfg)
    _warm(cfg, d)
    A, B = _eta(args.eta)
    out = {}
    rows = []
    try:
        for lam in enumerate_partitions(d):
            J = jack_limit(lam, A, B, raw=args.raw)
            out[str(lam)] = {
                "J": {str(k): str(v) for k, v in J.items()},
                "c": str(c_AB(lam, A, B)),
                "c_prime": str(c_prime_AB(lam, A, B)),
                "j": str(j_AB(lam, A, B)),
            }
            rows.extend([str(lam), str(k), str(v)] for k, v in J.items())
    except EtaPoleError as exc:
        cfg.stderr.write(f"identity violation (η-limit pole): {exc}\n")
        return 1
    _emit(cfg, {"degree": d, "A": A, "B": B, "alpha": str(Fraction(B, A)), "limits": out}, rows, ["lambda", "delta", "value"])
    return 0


def _run_one(name, max_degree, seed):
    return checks.run_suite(name, max_degree, seed)


def cmd_verify(cfg, args):
    if args.suite == "all":
        names = list(checks.SUITES)
    else:
        names = [s.strip() for s in args.suite.split(",")]
        unknown = [s for s in names if s not in checks.SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {unknown}; known: {', '.join(checks.SUITES)}")
    top = min(cfg.max_degree, 6)
    for d in range(1, top + 1):
        _warm(cfg, d)
        macdonald_table(d)
    if cfg.jobs > 1 and len(names) > 1:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=cfg.jobs, mp_context=ctx) as ex:
            futs = [ex.submit(_run_one, n, cfg.max_degree, cfg.seed) for n in names]
            results = [f.result() for f in futs]
    else:
        results = [_run_one(n, cfg.max_degree, cfg.seed) for n in names]
    return _report(cfg, results, cfg.max_degree)


def _report(cfg, results, max_degree):
    failed = [r.name for r in results if not r.ok]
    obj = {
        "max_degree": max_degree,
        "seed": cfg.seed,
        "ok": not failed,
        "failed_suites": failed,
        "suites": [r.to_json() for r in results],
    }
    rows = [[r.name, r.equation, r.checked, len(r.failures), r.ok] for r in results]
    _emit(cfg, obj, rows, ["suite", "equation", "checked", "failed", "ok"])
    return 1 if failed else 0


def cmd_export(cfg, args):
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    top = args.d if args.d else cfg.max_degree
    written = []
    for d in range(1, _degree(top, cfg) + 1):
        _warm(cfg, d)
        jp = dest / f"macdonald_d{d}.json"
        jp.write_text(json.dumps(table_json(d), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "delta", "a"])
        w.writerows(table_rows(d))
        cp = dest / f"macdonald_d{d}.csv"
        cp.write_text(buf.getvalue(), encoding="utf-8")
        written += [str(jp), str(cp)]
    _emit(cfg, {"written": written}, [[p] for p in written], ["path"])


# ---------------------------------------------------------------------------
# parser


def build_parser():
    # global flags are accepted before or after the command name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=argparse.SUPPRESS, help="degree budget (default 6)")
    common.add_argument("--out", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, help="directory for persisted Macdonald tables")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for verify")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized sweeps")

    p = argparse.ArgumentParser(prog="mhnumbers", description=__doc__.split("\n\n")[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("macdonald", help="integral Macdonald table a_λ(Δ) of one degree")
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_macdonald)

    s = sub.add_parser("coeffs", help="a_λ(Δ) for one λ (all Δ unless --delta)")
    s.add_argument("--lam", required=True)
    s.add_argument("--delta")
    s.set_defaults(func=cmd_coeffs)

    s = sub.add_parser("mh", help="Macdonald-Hurwitz number")
    s.add_argument("--h", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--profiles", default="", help='e.g. "2,1|3|1,1,1"')
    s.add_argument("--require-nonneg-genus", action="store_true")
    s.add_argument("--disconnected", action="store_true")
    s.add_argument("--genus", type=int)
    s.set_defaults(func=cmd_mh)

    s = sub.add_parser("cutjoin", help="cut-and-join operator D(Δ, ħ)")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--delta", required=True)
    s.add_argument("--hbar-one", action="store_true")
    s.add_argument("--parity-gate", action="store_true", help="zero entries with odd ramification sum")
    s.set_defaults(func=cmd_cutjoin)

    s = sub.add_parser("wavefn", help="truncated wave function Φ_h")
    s.add_argument("--h", type=int, default=0)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--deltas", default="")
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--order", type=int, default=0)
    s.add_argument("--mh-sum", action="store_true", help="build from MH numbers instead of the λ-sum")
    s.add_argument("--parity-gate", action="store_true", help="with --mh-sum, drop profiles of non-integer genus")
    s.set_defaults(func=cmd_wavefn)

    s = sub.add_parser("algebra", help="class algebra ∘_{q,t}")
    s.add_argument("--d", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--structure", action="store_true")
    g.add_argument("--idempotents", action="store_true")
    g.add_argument("--verify", action="store_true")
    s.add_argument("--eta", help="A,B for the path t = r^A, q = r^B")
    s.add_argument("--scale-order", type=int, help="override the (1-r)^k scaling of idempotent limits")
    s.set_defaults(func=cmd_algebra)

    s = sub.add_parser("jack", help="η(A|B) limits of J_λ and j_λ")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--eta", required=True)
    s.add_argument("--raw", action="store_true", help="keep the A^{|λ|} factor")
    s.set_defaults(func=cmd_jack)

    s = sub.add_parser("verify", help="run identity-verification suites")
    s.add_argument("--suite", default="all", help="'all' or a comma list: " + ", ".join(checks.SUITES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", help="write JSON and CSV tables for degrees 1..d")
    s.add_argument("--dest", required=True)
    s.add_argument("--d", type=int, help="highest degree (default --max-degree)")
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None, stdout=None, stderr=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    cfg = argparse.Namespace(
        max_degree=args.max_degree,
        out=args.out,
        cache=TableCache(args.cache_dir) if args.cache_dir else None,
        jobs=max(1, args.jobs),
        seed=args.seed,
        stdout=stdout or sys.stdout,
        stderr=stderr or sys.stderr,
    )
    try:
        if cfg.max_degree < 1:
            raise UsageError("--max-degree must be >= 1")
        status = args.func(cfg, args)
    except UsageError as exc:
        cfg.stderr.write(f"error: {exc}\n")
        return 2
    except CacheError as exc:
        cfg.stderr.write(f"cache error: {exc}\n")
        return 2
    return status or 0


if __name__ == "__main__":
    sys.exit(main())

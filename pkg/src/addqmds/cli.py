"""Command-line front end: ``aqc <subcommand> ...``.

Exit codes: 0 success, 1 a checked property fails, 2 usage or input error,
3 an enumeration cap was exceeded.  Every run ends with a ``key=value``
summary block.  Block indices on the command line and in output are 1-based.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from pathlib import Path

from . import constructions as cons
from .code import ENUM_CAP, AdditiveCode, code_from_packing, dually_k_bound, qmds_length_bound
from .finite_field import tower_for
from .formats import FormatError, read_code, read_packing, write_code, write_packing
from .geometry import DualArc, dda_to_code, search_dho
from .linalg import SUBSPACE_CAP, CapExceeded
from .packing import lambda_packing_witness

OK, FAIL, USAGE, CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _out(*parts) -> None:
    print(*parts, flush=True)


def _summary(**kv) -> None:
    _out("--")
    for k, v in kv.items():
        _out(f"{k}={v}")


def _yn(b: bool) -> str:
    return "yes" if b else "no"


def _one_based(J) -> str:
    return ",".join(str(j + 1) for j in J)


def _labels(C: AdditiveCode, cap: int) -> str:
    tags = []
    if C.is_qmds(cap):
        tags.append("QMDS")
        if C.is_long(cap):
            tags.append("long")
    return " ".join([C.type_string(C.min_distance(cap))] + tags)


def _load(path: str):
    """(code or None, packing or None, tower or None) from either file kind."""
    p = Path(path)
    if not p.exists():
        raise UsageError(f"no such file: {path}")
    first = p.read_text(encoding="utf-8").split("\n", 1)[0].strip()
    if first == "aqc v1":
        C = read_code(p)
        return C, C.T(), C.tower
    if first == "pkg v1":
        P, T = read_packing(p)
        return None, P, T
    raise UsageError(f"{path}: unrecognised file (expected 'aqc v1' or 'pkg v1')")


def _need_code(path: str) -> AdditiveCode:
    C, P, T = _load(path)
    if C is None:
        if T is None:
            raise UsageError(f"{path}: packing file has no h=/g=, cannot form a code")
        C = code_from_packing(P, T)
    return C


# ---------------------------------------------------------------------------


def cmd_construct(a) -> int:
    params = cons.ConstructionParams(a.family, a.q, a.h, a.k if a.family not in ("Bbar", "spread") else
                                     (3 if a.family == "Bbar" else 2), a.r0, a.r1, a.r2)
    try:
        params.validate()
    except (cons.ConstructionError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    P, C = cons.construct(params, cap=a.cap)
    label = _labels(C, a.cap)
    _out(label)
    if P.meta.get("omega2_size") is not None:
        _out(f"omega1={P.meta['omega1_size']} omega2={P.meta['omega2_size']} g={P.meta['g']}")
    out = {}
    if a.output:
        code_path = Path(a.output)
        pkg_path = code_path.with_suffix(".pkg")
        write_code(code_path, C)
        write_packing(pkg_path, P, C.tower)
        out = {"code_file": code_path, "packing_file": pkg_path}
    _summary(status="ok", family=a.family, n=C.n, r=C.r, d=C.min_distance(a.cap), q=C.q, h=C.h,
             qmds=_yn(C.is_qmds(a.cap)), long=_yn(C.is_long(a.cap)), **out)
    return OK


def cmd_verify(a) -> int:
    C, P, T = _load(a.file)
    checks = [name for name in ("qmds", "dually", "faithful", "system") if getattr(a, name)]
    if a.packing is None and not checks:
        raise UsageError("nothing to verify: pass --qmds, --dually, --faithful, --system or --packing")
    if checks and C is None:
        if T is None:
            raise UsageError("code checks need an aqc file or a pkg file with h=/g=")
        C = code_from_packing(P, T)
    results = {}
    for name in checks:
        if name == "qmds":
            ok = C.is_qmds(a.cap)
            _out(f"qmds: {_yn(ok)} {C.type_string(C.min_distance(a.cap))}")
            if not ok:
                _out(f"  singleton defect {C.singleton_defect(a.cap)}; weight-{C.min_distance(a.cap)} "
                     f"message {list(C.min_weight_message(a.cap))}")
        elif name == "dually":
            ok = C.is_dually_qmds(cap=a.cap)
            _out(f"dually: {_yn(ok)} dual {C.dual().type_string(C.dual_distance(cap=a.cap))}")
            if not ok and C.condition_b_applies(a.cap):
                J = C.condition_b_witness()
                if J is not None:
                    dim = len(C.quotient_map(J))
                    _out(f"  J={_one_based(J)} dim={dim} expected={C.r - len(J) * C.h}")
        elif name == "faithful":
            ok = C.is_faithful()
            _out(f"faithful: {_yn(ok)}")
            if not ok:
                bad = [i for i in range(C.n) if C.column_space(i).dim != C.h]
                _out(f"  block {bad[0] + 1} spans dim {C.column_space(bad[0]).dim} < h={C.h}")
        else:
            best, cov = C.system_max_count(a.cap)
            ok = best == C.n - C.min_distance(a.cap)
            _out(f"system: {_yn(ok)} max hyperplane count {best}, n-d={C.n - C.min_distance(a.cap)}")
            _out(f"  hyperplane covector {list(cov)}")
        results[name] = ok
    if a.packing is not None:
        wit = lambda_packing_witness(P, a.packing, "both", a.cap)
        ok = wit is None
        _out(f"packing: {_yn(ok)} lambda={a.packing}")
        if wit is not None:
            kind, obj = wit
            if kind == "point":
                _out(f"  point {list(obj)} lies in more than {a.packing} blocks")
            else:
                _out(f"  blocks {_one_based(obj)} meet nontrivially")
        results["packing"] = ok
    passed = all(results.values())
    _summary(status="ok" if passed else "fail", **{k: _yn(v) for k, v in results.items()})
    return OK if passed else FAIL


def cmd_distance(a) -> int:
    C = _need_code(a.file)
    d = C.min_distance(a.cap, a.workers)
    _out(_labels(C, a.cap))
    _out(f"minimum-weight message {list(C.min_weight_message(a.cap))}")
    _summary(status="ok", n=C.n, r=C.r, d=d, k=C.k, singleton_defect=C.singleton_defect(a.cap))
    return OK


def cmd_dual(a) -> int:
    C = _need_code(a.file)
    D = C.dual()
    if D.r == 0:
        raise UsageError("dual of the full space is {0}")
    label = _labels(D, a.cap) if D.q ** D.r <= a.cap else D.type_string(C.dual_distance(cap=a.cap))
    _out(label)
    if a.output:
        write_code(a.output, D)
    _summary(status="ok", n=D.n, r=D.r, d=C.dual_distance(cap=a.cap), **({"code_file": a.output} if a.output else {}))
    return OK


def _parse_list(s: str, what: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{what}: expected comma-separated integers, got {s!r}") from exc


def cmd_quotient(a) -> int:
    C = _need_code(a.file)
    J = _parse_list(a.j, "--j")
    if not J or any(not 1 <= j <= C.n for j in J):
        raise UsageError(f"--j entries must lie in 1..{C.n}")
    J0 = [j - 1 for j in J]
    dimW = len(C.quotient_map(J0))
    if dimW == 0:
        _out(f"quotient by {_one_based(J0)} is {{0}} (obliterating)")
        _summary(status="fail", dim=0)
        return FAIL
    Q = C.geometric_quotient(J0)
    _out(_labels(Q, a.cap))
    _out(f"non-obliterating: {_yn(dimW >= C.h)}")
    if a.output:
        write_code(a.output, Q)
    _summary(status="ok", n=Q.n, r=Q.r, d=Q.min_distance(a.cap), dim=dimW,
             **({"code_file": a.output} if a.output else {}))
    return OK


def cmd_bounds(a) -> int:
    if a.q < 2 or a.h < 1 or a.k < 1 or not 1 <= a.r0 <= a.h:
        raise UsageError("need q >= 2, h >= 1, k >= 1 and 1 <= r0 <= h")
    try:
        tower_for(a.q, 1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n_max = qmds_length_bound(a.q, a.h, a.k, a.r0)
    k_max = dually_k_bound(a.q, a.h, a.r0)
    _out(f"n ≤ {n_max}, k ≤ {k_max}")
    _summary(status="ok", n_max=n_max, k_max=k_max)
    return OK


def cmd_search_dho(a) -> int:
    R = search_dho(a.q, a.h, cap=a.subspace_cap, state_path=a.state, workers=a.workers, max_units=a.max_units)
    extra = {}
    if R.status == "found":
        C = dda_to_code(R.arc)
        _out(f"{C.type_string(C.min_distance(a.cap))} dually QMDS")
        _out(f"dual {C.dual().type_string(C.dual_distance(cap=a.cap))}")
        if a.output:
            write_packing(a.output, R.arc.to_packing(), C.tower)
            extra["packing_file"] = a.output
    elif R.status == "none":
        _out(f"none: no DHO in F_{a.q}^{2 * a.h + 1} (search complete)")
    else:
        _out(f"incomplete: {R.units_done}/{R.units_total} units searched")
    _summary(status=R.status, blocks=len(R.arc) if R.arc else 0, units_done=R.units_done,
             units_total=R.units_total, nodes=R.nodes, **extra)
    return {"found": OK, "none": FAIL}.get(R.status, CAP)


def cmd_table(a) -> int:
    ks = _parse_list(a.k, "--k") if a.k else [None]
    rows = 0
    skipped = 0
    _out("family q h k r0 n r d qmds dually")
    for q, h, k, r0 in itertools.product(_parse_list(a.q, "--q"), _parse_list(a.h, "--h"), ks,
                                         _parse_list(a.r0, "--r0")):
        kk = {"Bbar": 3, "spread": 2}.get(a.family, k)
        if kk is None:
            raise UsageError(f"--k is required for family {a.family}")
        params = cons.ConstructionParams(a.family, q, h, kk, r0)
        try:
            params.validate()
        except (cons.ConstructionError, ValueError):
            continue
        try:
            P, C = cons.construct(params, cap=a.cap)
            d = C.min_distance(a.cap)
        except CapExceeded:
            skipped += 1
            _out(f"# skipped {a.family} q={q} h={h} k={kk} r0={r0}: cap")
            continue
        try:
            dually = _yn(C.is_dually_qmds(cap=a.cap))
        except CapExceeded:
            dually = "?"
        _out(f"{a.family} {q} {h} {kk} {r0} {C.n} {C.r} {d} {_yn(C.is_qmds(a.cap))} {dually}")
        rows += 1
    _summary(status="ok", rows=rows, skipped=skipped)
    return OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="aqc", description="Additive QMDS codes, packings and dual arcs.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--cap", type=int, default=ENUM_CAP, help="max q^r for exhaustive enumeration")
        p.add_argument("--workers", type=int, default=1)
        return p

    p = common(sub.add_parser("construct", help="build a family member"))
    p.add_argument("--family", required=True, choices=cons.FAMILIES)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--r0", type=int, required=True)
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = common(sub.add_parser("verify", help="check properties of a code or packing"))
    p.add_argument("file")
    for name in ("qmds", "dually", "faithful", "system"):
        p.add_argument(f"--{name}", action="store_true")
    p.add_argument("--packing", type=int, metavar="LAMBDA")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("distance", help="exhaustive minimum distance"))
    p.add_argument("file")
    p.set_defaults(func=cmd_distance)

    p = common(sub.add_parser("dual", help="trace dual"))
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dual)

    p = common(sub.add_parser("quotient", help="geometric quotient by positions J"))
    p.add_argument("--j", required=True, help="comma-separated 1-based positions")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_quotient)

    p = common(sub.add_parser("bounds", help="length and dimension bounds"))
    for name in ("q", "h", "k", "r0"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_bounds)

    p = common(sub.add_parser("search-dho", help="exhaustive dual hyperoval search"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--subspace-cap", type=int, default=SUBSPACE_CAP)
    p.add_argument("--state", help="JSON file for resumable progress")
    p.add_argument("--max-units", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search_dho)

    p = common(sub.add_parser("table", help="parameter rows for a family"))
    p.add_argument("--family", required=True, choices=cons.FAMILIES)
    p.add_argument("--q", required=True, help="comma-separated values")
    p.add_argument("--h", required=True)
    p.add_argument("--k")
    p.add_argument("--r0", required=True)
    p.set_defaults(func=cmd_table)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else USAGE
    try:
        return a.func(a)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stop quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _summary(status="usage_error")
        return USAGE
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _summary(status="format_error")
        return USAGE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        _summary(status="cap_exceeded")
        return CAP
    except cons.ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        _summary(status="fail")
        return FAIL


if __name__ == "__main__":
    sys.exit(main())

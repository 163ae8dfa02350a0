"""Command-line front end.

Every invocation is normalised into a JSON job (numbers as decimal
strings), validated against ``JOB_SCHEMA``, run, and rendered as a text
table, JSON or CSV.  JSON results embed the job, so ``results-verify``
can recompute them and report the first coefficient that differs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import jsonschema

from . import __version__
from .global_zeta import (
    PRESETS,
    OrderError,
    OrderSpec,
    RamificationStratum,
    azumaya_zeta,
    euler_specialize,
    matrix_algebra_spec,
    nc_plane_preset,
    order_zeta,
    poincare_zeta,
    segal_dirichlet,
    sklyanin_ratio,
)
from .hecke import ChiSpec, LMonomial, slice_from_hecke, xi, xi_power_closed_form
from .local import LocalOrderShape, hey_zeta, local_factor, slice_zeta
from .series import QZ, SeriesError, TruncatedSeries, ZPoly
from .weil import CATALOG_NAMES, LDataError, catalog, from_factors

DEFAULT_CAP = 24

COMMANDS = ("local", "global", "poincare", "euler", "hecke-verify", "oracle-verify", "census")
SUITES = ("hey", "ideals2d", "symbol", "tower", "p2", "segal", "delta")
CENSUS_KINDS = ("sublattices", "ideals2d", "quaternion", "delta2", "p2", "segal")

_INT = {"type": "string", "pattern": "^-?[0-9]+$"}
_POS = {"type": "string", "pattern": "^[1-9][0-9]*$"}
_NAT = {"type": "string", "pattern": "^[0-9]+$"}

_SURFACE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "catalog": {"enum": list(CATALOG_NAMES)},
                "params": {"type": "object"},
            },
            "required": ["catalog"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "factors": {
                    "type": "array",
                    # (weight, coefficients) or (weight, coefficients, multiplicity)
                    "items": {
                        "type": "array",
                        "prefixItems": [_NAT, {"type": "array", "items": _INT, "minItems": 1}, _INT],
                        "minItems": 2,
                        "maxItems": 3,
                    },
                },
                "name": {"type": "string"},
            },
            "required": ["factors"],
            "additionalProperties": False,
        },
    ]
}

JOB_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ozeta job",
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "q": _POS,
        "d": _POS,
        "e": _POS,
        "r": _POS,
        "m": _POS,
        "k": _POS,
        "N": _NAT,
        "n": _NAT,
        "bound": _NAT,
        "trace": _INT,
        "cap": _POS,
        "sigma": {"type": "array", "items": _POS},
        "preset": {"enum": list(PRESETS)},
        "surface": _SURFACE,
        "strata": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"cover": _SURFACE, "e": _POS},
                "required": ["cover", "e"],
                "additionalProperties": False,
            },
        },
        "suite": {"enum": list(SUITES)},
        "kind": {"enum": list(CENSUS_KINDS)},
        "format": {"enum": ["text", "json", "csv"]},
    },
    "required": ["command"],
    "additionalProperties": False,
}


class JobError(ValueError):
    """Schema or bound violation; exit code 2."""


# ---------------------------------------------------------------------------
# job helpers


def validate_job(job: dict) -> None:
    try:
        jsonschema.validate(job, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise JobError(f"config invalid at {path}: {exc.message}") from None
    cap = int(job.get("cap", DEFAULT_CAP))
    if "N" in job and int(job["N"]) > cap:
        raise JobError(f"N={job['N']} exceeds the hard cap {cap}")


def _i(job: dict, key: str, default=None) -> int:
    if key not in job:
        if default is None:
            raise JobError(f"command {job['command']!r} needs {key!r}")
        return default
    return int(job[key])


def _surface(spec: dict, q: int):
    if "catalog" in spec:
        params = dict(spec.get("params", {}))
        for k, v in list(params.items()):
            if isinstance(v, str) and v.lstrip("-").isdigit():
                params[k] = int(v)
            elif isinstance(v, list):
                params[k] = [int(x) for x in v]
        return catalog(spec["catalog"], q, **params)
    facs = []
    for f in spec["factors"]:
        w, poly = int(f[0]), [int(c) for c in f[1]]
        facs.append((w, poly, int(f[2])) if len(f) > 2 else (w, poly))
    return from_factors(q, facs, name=spec.get("name", "inline"))


def order_from_job(job: dict) -> OrderSpec:
    q, d = _i(job, "q"), _i(job, "d")
    if "preset" in job:
        return nc_plane_preset(job["preset"], d, _i(job, "e"), q, _i(job, "trace", 0))
    if "surface" not in job:
        raise JobError("need a preset or a surface")
    X = _surface(job["surface"], q)
    strata = tuple(RamificationStratum(_surface(s["cover"], q), int(s["e"])) for s in job.get("strata", []))
    return OrderSpec(q, d, X, strata, name=X.name)


# ---------------------------------------------------------------------------
# results


class Result:
    def __init__(self, job: dict):
        self.job = job
        self.series: dict = {}
        self.checks: list = []
        self.tables: dict = {}

    def add_series(self, name: str, s: TruncatedSeries):
        self.series[name] = s

    def check(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, bool(ok), detail))

    def compare(self, name: str, got: TruncatedSeries, want: TruncatedSeries):
        diff = got.first_difference(want)
        if diff is None:
            self.check(name, True, f"equal to t^{min(got.N, want.N)}")
        else:
            k, a, b = diff
            self.check(name, False, f"first difference at t^{k}: {_fmt(a)} vs {_fmt(b)}")

    @property
    def failed(self) -> bool:
        return any(not ok for _, ok, _ in self.checks)

    def to_json(self) -> dict:
        out = {"ozeta": __version__, "config": self.job, "series": {}, "checks": [], "tables": {}}
        for name, s in self.series.items():
            out["series"][name] = {"domain": s.domain, "N": str(s.N), "coefficients": [_enc(a) for a in s.coefficients()]}
        for name, ok, detail in self.checks:
            out["checks"].append({"name": name, "status": "PASS" if ok else "FAIL", "detail": detail})
        for name, table in self.tables.items():
            out["tables"][name] = {str(k): str(v) for k, v in table.items()}
        return out


def _enc(a):
    if isinstance(a, ZPoly):
        return [str(c) for c in a.c]
    return str(a)


def _fmt(a) -> str:
    if isinstance(a, ZPoly):
        return "[" + ", ".join(str(c) for c in a.c) + "]"
    return str(a)


def _decode(entry: dict) -> TruncatedSeries:
    N = int(entry["N"])
    if entry["domain"] == QZ:
        return TruncatedSeries([ZPoly(Fraction(c) for c in z) for z in entry["coefficients"]], N, QZ)
    return TruncatedSeries([Fraction(c) for c in entry["coefficients"]], N)


# ---------------------------------------------------------------------------
# commands


def cmd_local(job: dict) -> Result:
    q, r, m, N, k = _i(job, "q"), _i(job, "r"), _i(job, "m"), _i(job, "N"), _i(job, "k", 1)
    res = Result(job)
    shape = LocalOrderShape(q, r, m)
    if k == 1:
        res.add_series("hey", hey_zeta(shape, N))
        res.add_series("slice", slice_zeta(shape, N))
    else:
        res.add_series("local_factor", local_factor(k, q, r, m, N))
    return res


def cmd_global(job: dict) -> Result:
    N = _i(job, "N")
    spec = order_from_job(job)
    res = Result(job)
    Z = order_zeta(spec, N)
    res.add_series("order_zeta", Z)
    if spec.base is not None:
        res.add_series("ratio_vs_matrix_algebra", Z / azumaya_zeta(spec.base, spec.d, N))
        if spec.ramification_base is not None and spec.flags.get("uniform_ramification_index"):
            e = spec.strata[0].e
            res.compare("ratio_closed_form", res.series["ratio_vs_matrix_algebra"], sklyanin_ratio(spec.ramification_base, spec.d, e, N))
    res.add_series("euler", euler_specialize(poincare_zeta(spec, N)))
    return res


def cmd_poincare(job: dict) -> Result:
    spec = order_from_job(job)
    res = Result(job)
    res.add_series("poincare", poincare_zeta(spec, _i(job, "N")))
    return res


def cmd_euler(job: dict) -> Result:
    spec = order_from_job(job)
    N = _i(job, "N")
    res = Result(job)
    E = euler_specialize(poincare_zeta(spec, N))
    res.add_series("euler", E)
    if job.get("preset") == "sklyanin" and spec.base is not None:
        M = euler_specialize(poincare_zeta(matrix_algebra_spec(spec.base, spec.d), N))
        res.add_series("euler_matrix_algebra", M)
        res.compare("euler_equals_matrix_algebra", E, M)
    return res


def cmd_hecke_verify(job: dict) -> Result:
    q, r, m, N = _i(job, "q"), _i(job, "r"), _i(job, "m"), _i(job, "N")
    sigma = tuple(int(s) for s in job.get("sigma", ()))
    res = Result(job)
    got = slice_from_hecke(q, r, m, N, sigma)
    want = slice_zeta(LocalOrderShape(q, r, m), N)
    res.add_series("hecke", got)
    res.add_series("slice", want)
    res.compare("hecke_equals_slice", got, want)
    chi = ChiSpec.matrix(q, r, m, sigma)
    for j in range(1, m + 1):
        for n in range(6):
            c, mono = Fraction(1), LMonomial.gen(0, j)
            for _ in range(n):
                a, mono = xi(mono, chi)
                c *= a
            wc, wm = xi_power_closed_form(j, n, chi)
            res.check(f"xi^{n}(t_{j})", (c, mono) == (wc, wm), f"{c}*{mono} vs {wc}*{wm}")
    return res


def _counts_series(counts: dict, N: int) -> TruncatedSeries:
    return TruncatedSeries.from_dict({k: v for k, v in counts.items() if k <= N}, N)


def cmd_oracle_verify(job: dict) -> Result:
    from . import oracle

    suite = job.get("suite")
    if suite is None:
        raise JobError("oracle-verify needs --suite")
    res = Result(job)
    q = _i(job, "q", 2)
    n = _i(job, "n", 3)
    try:
        if suite == "hey":
            r = _i(job, "r", 1)
            counts = oracle.count_sublattices(q, r, n // r)
            got = _counts_series(counts, n)
            want = hey_zeta(LocalOrderShape(q, r, 1), n)
            res.tables["counts"] = counts
            _oracle_compare(res, "hey_vs_sublattices", got, want, sorted(k for k in counts if k))
        elif suite == "ideals2d":
            counts = oracle.count_ideals_2d(q, n)
            res.tables["counts"] = counts
            _oracle_compare(res, "slice_vs_ideals2d", _counts_series(counts, n), slice_zeta(LocalOrderShape(q), n), list(range(1, n + 1)))
        elif suite == "symbol":
            alg = oracle.build_symbol(3, 2, -1, "param_u", "param_v", n + 1)
            cen = oracle.count_ideals_algebra(alg, n)
            counts = dict(enumerate(cen.counts))
            res.tables["counts"] = counts
            _oracle_compare(res, "slice_vs_quaternion", _counts_series(counts, n), slice_zeta(LocalOrderShape(3), n), list(range(1, n + 1)))
            rep = oracle.check_slice(alg, n)
            res.check("check_slice", rep.passed, f"ideals checked per colength {rep.checked}")
        elif suite == "tower":
            bound = _i(job, "bound", 3)
            alg = oracle.power_series_2d(q, bound + 1)
            rep = oracle.verify_tower(alg, max(n, 1), bound)
            for name, (ok, count) in rep.checks.items():
                res.check(name, ok, f"{count} instances")
        elif suite == "p2":
            from .weil import projective_space

            got = oracle.subscheme_census_p2(q, 2)
            want = azumaya_zeta(projective_space(q, 2), 1, 2)[2]
            res.tables["census"] = {"pairs": got.rational_pairs, "conjugate": got.conjugate_pairs, "tangent": got.tangent_vectors}
            res.check("azumaya_t2_vs_census", got.total == want, f"{got.total} vs {want}")
        elif suite == "segal":
            D = segal_dirichlet(max(n, 7))
            for p in (2, 3, 5, 7):
                got = oracle.segal_index_p_ideals(p)
                res.check(f"a_{p}", D[p] == got, f"{D[p]} vs {got}")
        elif suite == "delta":
            from .hecke import LSeries, multi_param_zeta

            base = oracle.build_symbol(3, 2, -1, "param_u", "param_v", n + 1)
            alg = oracle.build_delta_l(base, 2, n + 1)
            cen = oracle.count_ideals_algebra(alg, n)
            Zbar = LSeries.from_multivariate({(a, b): 1 for a in range(n + 1) for b in range(n + 1 - a)}, n)
            want = multi_param_zeta(ChiSpec(2, (3, 3), alg.sigma), Zbar, n)
            got = {}
            for cls in cen.classes:
                got.update({k: Fraction(v) for k, v in cls.items()})
            ok = got == {k: v for k, v in want.items()}
            bad = sorted(k for k in set(got) | set(want) if got.get(k, 0) != want.get(k, 0))
            res.check("multi_param_vs_classes", ok, "all classes equal" if ok else f"first differing class {bad[0]}: {got.get(bad[0], 0)} vs {want.get(bad[0], 0)}")
        else:  # pragma: no cover - schema rejects this
            raise JobError(f"unknown suite {suite!r}")
    except oracle.OracleBoundsError as exc:
        raise JobError(str(exc)) from None
    return res


def _oracle_compare(res: Result, name: str, got: TruncatedSeries, want: TruncatedSeries, shown: list):
    diff = got.first_difference(want)
    if diff is None:
        res.check(name, True, "matched counts " + ", ".join(str(got[k]) for k in shown))
    else:
        k, a, b = diff
        res.check(name, False, f"first difference at colength {k}: oracle {a} vs formula {b}")


def cmd_census(job: dict) -> Result:
    from . import oracle

    kind = job.get("kind")
    if kind is None:
        raise JobError("census needs --kind")
    res = Result(job)
    q, n = _i(job, "q", 2), _i(job, "n", 3)
    try:
        if kind == "sublattices":
            r = _i(job, "r", 1)
            res.tables["counts"] = oracle.count_sublattices(q, r, n // r)
        elif kind == "ideals2d":
            res.tables["counts"] = oracle.count_ideals_2d(q, n)
        elif kind in ("quaternion", "delta2"):
            alg = oracle.build_symbol(3, 2, -1, "param_u", "param_v", n + 1)
            if kind == "delta2":
                alg = oracle.build_delta_l(alg, 2, n + 1)
            cen = oracle.count_ideals_algebra(alg, n)
            res.tables["counts"] = dict(enumerate(cen.counts))
            for c, cls in enumerate(cen.classes):
                res.tables[f"classes_{c}"] = {",".join(map(str, k)): v for k, v in sorted(cls.items())}
        elif kind == "p2":
            res.tables["counts"] = {m: oracle.subscheme_census_p2(q, m).total for m in range(min(n, 2) + 1)}
        elif kind == "segal":
            res.tables["counts"] = {p: oracle.segal_index_p_ideals(p) for p in (2, 3, 5, 7)}
    except oracle.OracleBoundsError as exc:
        raise JobError(str(exc)) from None
    return res


DISPATCH = {
    "local": cmd_local,
    "global": cmd_global,
    "poincare": cmd_poincare,
    "euler": cmd_euler,
    "hecke-verify": cmd_hecke_verify,
    "oracle-verify": cmd_oracle_verify,
    "census": cmd_census,
}


def run_job(job: dict) -> Result:
    validate_job(job)
    try:
        return DISPATCH[job["command"]](job)
    except (OrderError, LDataError, SeriesError, ValueError) as exc:
        if isinstance(exc, JobError):
            raise
        raise JobError(str(exc)) from None


# ---------------------------------------------------------------------------
# rendering


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.to_json(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _render_csv(res)
    return _render_text(res)


def _render_text(res: Result) -> str:
    lines = []
    names = list(res.series)
    if names:
        N = max(s.N for s in res.series.values())
        cols = [["degree"] + [str(k) for k in range(N + 1)]]
        for name in names:
            s = res.series[name]
            cols.append([name] + [_fmt(s[k]) if k <= s.N else "" for k in range(N + 1)])
        widths = [max(len(x) for x in col) for col in cols]
        for row in zip(*cols):
            lines.append("  ".join(x.rjust(w) for x, w in zip(row, widths)).rstrip())
    for name, table in res.tables.items():
        lines.append(f"{name}: " + ", ".join(f"{k}: {v}" for k, v in table.items()))
    for name, ok, detail in res.checks:
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
    return "\n".join(lines) + "\n"


def _render_csv(res: Result) -> str:
    """One header; Q[z] series get dense z^i columns, tables and checks follow as tagged rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    width = max((len(a.c) for s in res.series.values() if s.domain == QZ for a in s.coefficients()), default=0)
    value_cols = [f"z^{i}" for i in range(width)] if width else ["coefficient"]
    w.writerow(["name", "degree"] + value_cols)
    pad = len(value_cols)
    for name, s in res.series.items():
        for k, a in enumerate(s.coefficients()):
            vals = [str(c) for c in a.c] if s.domain == QZ else [str(a)]
            w.writerow([name, k] + vals + ["0"] * (pad - len(vals)))
    for name, table in res.tables.items():
        for k, v in table.items():
            w.writerow([f"table:{name}", k, v] + [""] * (pad - 1))
    for name, ok, _ in res.checks:
        w.writerow([f"check:{name}", "", "PASS" if ok else "FAIL"] + [""] * (pad - 1))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# results-verify


def verify_results(path: str, out=None) -> int:
    out = out or sys.stdout
    with open(path) as fh:
        data = json.load(fh)
    job = data.get("config")
    if not isinstance(job, dict):
        raise JobError("results file has no embedded config")
    fresh = run_job(job).to_json()
    status = 0
    for name, entry in sorted(data.get("series", {}).items()):
        if name not in fresh["series"]:
            print(f"FAIL {name}: not produced by the recomputation", file=out)
            status = 1
            continue
        old, new = _decode(entry), _decode(fresh["series"][name])
        diff = old.first_difference(new)
        if diff is None and old.N == new.N:
            print(f"PASS {name}", file=out)
        else:
            status = 1
            if diff is None:
                print(f"FAIL {name}: truncation differs ({old.N} vs {new.N})", file=out)
            else:
                k, a, b = diff
                print(f"FAIL {name}: first difference at t^{k}: stored {_fmt(a)} vs recomputed {_fmt(b)}", file=out)
    for key in ("tables", "checks"):
        if data.get(key, {} if key == "tables" else []) != fresh[key]:
            print(f"FAIL {key}: stored {key} differ from the recomputation", file=out)
            status = 1
        elif fresh[key]:
            print(f"PASS {key}", file=out)
    return status


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["text", "json", "csv"], default=None)
    p.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")
    p.add_argument("--cap", type=int, default=None, help=f"hard cap on N (default {DEFAULT_CAP})")


def _add_order(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=PRESETS)
    g.add_argument("--surface", help="catalog name, or a JSON object as in the config schema")
    p.add_argument("--e", type=int)
    p.add_argument("--trace", type=int)
    p.add_argument("--stratum", action="append", default=[], metavar="COVER:E", help="ramification cover (catalog name) and index")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ozeta", description="Zeta functions of orders: formulas and brute-force checks.")
    ap.add_argument("--version", action="version", version=f"ozeta {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("local", help="Hey and slice local zeta coefficients")
    for f in ("q", "r", "m", "N"):
        p.add_argument(f"--{f}", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="residue degree of the local factor")
    _add_common(p)

    for name, text in (("global", "zeta of a global order"), ("poincare", "Weil-Poincare zeta"), ("euler", "Euler-characteristic specialisation")):
        p = sub.add_parser(name, help=text)
        _add_order(p)
        _add_common(p)

    p = sub.add_parser("hecke-verify", help="symbolic Hecke product versus slice_zeta")
    for f in ("q", "r", "m", "N"):
        p.add_argument(f"--{f}", type=int, required=True)
    p.add_argument("--sigma", type=int, nargs="*", default=None)
    _add_common(p)

    p = sub.add_parser("oracle-verify", help="brute-force counts versus closed forms")
    p.add_argument("--suite", choices=SUITES, required=True)
    for f in ("q", "r", "n", "bound"):
        p.add_argument(f"--{f}", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("census", help="brute-force census tables keyed by colength")
    p.add_argument("--kind", choices=CENSUS_KINDS, required=True)
    for f in ("q", "r", "n"):
        p.add_argument(f"--{f}", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("run", help="run a JSON job file")
    p.add_argument("config")
    _add_common(p)

    p = sub.add_parser("results-verify", help="recompute a JSON results file and compare")
    p.add_argument("results")

    sub.add_parser("schema", help="print the job JSON schema")
    return ap


def job_from_args(args: argparse.Namespace) -> dict:
    job = {"command": args.command}
    for key in ("q", "d", "e", "r", "m", "k", "N", "n", "bound", "trace", "cap"):
        v = getattr(args, key, None)
        if v is not None:
            job[key] = str(v)
    for key in ("preset", "suite", "kind"):
        v = getattr(args, key, None)
        if v is not None:
            job[key] = v
    if getattr(args, "sigma", None):
        job["sigma"] = [str(s) for s in args.sigma]
    surface = getattr(args, "surface", None)
    if surface is not None:
        job["surface"] = json.loads(surface) if surface.lstrip().startswith("{") else {"catalog": surface}
    strata = []
    for item in getattr(args, "stratum", []) or []:
        cover, _, e = item.rpartition(":")
        if not cover or not e:
            raise JobError(f"bad --stratum {item!r}; expected COVER:E")
        strata.append({"cover": {"catalog": cover}, "e": e})
    if strata:
        job["strata"] = strata
    if getattr(args, "format", None):
        job["format"] = args.format
    return job


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "schema":
            sys.stdout.write(json.dumps(JOB_SCHEMA, indent=2, sort_keys=True) + "\n")
            return 0
        if args.command == "results-verify":
            return verify_results(args.results)
        if args.command == "run":
            with open(args.config) as fh:
                job = json.load(fh)
            if args.format:
                job["format"] = args.format
            if args.cap:
                job["cap"] = str(args.cap)
        else:
            job = job_from_args(args)
        res = run_job(job)
        _emit(render(res, job.get("format", "text")), getattr(args, "output", None))
        return 1 if res.failed else 0
    except JobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 failed verification, 2 bad arguments or unknown
function spec, 3 point outside the domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import basischange, hypergeom, moebius, quadrature, sphere, zonal
from .pfm import ExtendedComplex, OmegaPoint, OutsideDomain, eigen_residual, f_pq, f_pq_eval, pfm, pfm_eval

EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 1, 2, 3

DEFAULT_TOL = {
    "gram": 1e-10,
    "eigen": 1e-5,
    "zonal": 1e-10,
    "csh": 1e-10,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    radial_order: int = 64
    angular_order: int = 256
    tol: float | None = None
    max_m: int = 6
    fmt: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.radial_order < 4 or self.angular_order < 4:
            raise UsageError("quadrature orders must be >= 4")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tolerance must be positive")
        if self.max_m < 0:
            raise UsageError("--max-m must be >= 0")

    @property
    def quadrature(self) -> quadrature.SphereQuadrature:
        return quadrature.SphereQuadrature(self.radial_order, self.angular_order)

    def tolerance(self, suite: str) -> float:
        return self.tol if self.tol is not None else DEFAULT_TOL.get(suite, 0.0)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


# ---------------------------------------------------------------------------
# parsing


def parse_number(text: str) -> ExtendedComplex:
    """'re+imi', a plain real, or 'inf'."""
    s = text.strip().lower().replace(" ", "")
    if s in ("inf", "infinity", "∞"):
        return ExtendedComplex(0j, True)
    try:
        return ExtendedComplex(complex(s.replace("i", "j")), False)
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as a complex number") from None


def parse_coords(text: str, count: int | tuple[int, ...]) -> list[ExtendedComplex]:
    parts = [parse_number(p) for p in text.split(",")]
    allowed = (count,) if isinstance(count, int) else count
    if len(parts) not in allowed:
        raise UsageError(f"expected {' or '.join(map(str, allowed))} coordinates in {text!r}")
    return parts


def parse_point(text: str) -> OmegaPoint:
    z, w = parse_coords(text, 2)
    return OmegaPoint(z, w)


def _finite(x: ExtendedComplex, what: str) -> complex:
    if x.infinite:
        raise OutsideDomain(f"{what} must be finite")
    return x.value


def _catalogue_term(name: str) -> Callable:
    kind, _, arg = name.partition(":")
    try:
        nums = [int(a) for a in arg.split(",")] if arg else []
    except ValueError:
        raise UsageError(f"bad indices in {name!r}") from None
    if kind == "pfm" and len(nums) == 2:
        m, n = nums
        if m < 0:
            raise UsageError("pfm degree must be >= 0")
        return lambda z, w: pfm(m, n, z, w)
    if kind == "f" and len(nums) == 2:
        p, q = nums
        if p < 0 or q < 0:
            raise UsageError("f indices must be >= 0")
        return lambda z, w: f_pq(p, q, z, w)
    if kind == "geom" and not nums:
        return lambda z, w: 1 / (1 - z * w)
    if kind == "exp" and len(nums) == 1:
        order = nums[0]
        if order < 0:
            raise UsageError("exp truncation order must be >= 0")
        return lambda z, w: sum(
            (z * w / (1 - z * w)) ** k / math.factorial(k) for k in range(order + 1)
        )
    raise UsageError(f"unknown function spec {name!r}")


def parse_function(spec: str) -> Callable:
    """A '+'-separated sum of catalogue terms, each optionally scaled as 'c*term'.

    Terms: pfm:M,N  f:P,Q  geom (= 1/(1-zw))  exp:K (exp(zw/(1-zw)) truncated
    after K+1 terms).
    """
    terms = []
    for raw in spec.replace(" ", "").split("+"):
        if not raw:
            raise UsageError(f"empty term in {spec!r}")
        coeff, star, body = raw.rpartition("*")
        c = parse_number(coeff).value if star else 1.0
        terms.append((c, _catalogue_term(body)))

    def F(z, w):
        return sum(c * np.asarray(g(z, w), dtype=complex) for c, g in terms)

    return F


# ---------------------------------------------------------------------------
# output


def _num(x: complex) -> dict:
    x = complex(x)
    return {"re": x.real, "im": x.imag}


def _ext(x: ExtendedComplex):
    return "inf" if x.infinite else _num(x.value)


def emit(payload, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv" and isinstance(payload, list) and payload and isinstance(payload[0], dict):
        writer = csv.DictWriter(out, fieldnames=list(payload[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(payload)
    elif fmt == "csv" and isinstance(payload, dict) and set(payload) == {"re", "im"}:
        emit([payload], fmt, out)
    else:
        out.write(json.dumps(payload, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# verification suites; each returns (cases, failures, max_error)


def _suite_cid(cfg: RunConfig):
    cases = failures = 0
    for m in range(cfg.max_m + 1):
        for n in range(m + 1):
            for d in range(n + 1):
                cases += 1
                failures += basischange.cid_sum(m, n, d) != int(n == d)
    return cases, failures, 0.0


def _suite_l1(cfg: RunConfig):
    cases = failures = 0
    for m, n, d, s in hypergeom.l1_tuples(cfg.max_m):
        cases += 1
        ok = hypergeom.verify_L1(m, n, d, s)
        value = hypergeom.t_sum(m, n, d, s)
        if n >= d + s:
            ok = ok and hypergeom.t1_rhs(m, n, d, s) == value
        if n <= d + s:
            ok = ok and hypergeom.t2_rhs(m, n, d, s) == value
        failures += not ok
    return cases, failures, 0.0


def _suite_whipple(cfg: RunConfig):
    cases = failures = 0
    for m in range(cfg.max_m + 1):
        for n in range(m + 1):
            for d in range(n + 1):
                for s in range(n - d + 1):
                    cases += 1
                    failures += not hypergeom.raynal_check(m, n, d, s)
    return cases, failures, 0.0


def _suite_gram(cfg: RunConfig):
    tol = cfg.tolerance("gram")
    gram = quadrature.gram_matrix(cfg.max_m, cfg.quadrature)
    errors = [abs(v - quadrature.gram_closed_form(*a, *b)) for (a, b), v in gram.items()]
    return len(errors), sum(e > tol for e in errors), max(errors)


def _interior_samples(rng: np.random.Generator, count: int, radius: float = 0.8):
    pts = []
    while len(pts) < count:
        z, w = (complex(*rng.uniform(-radius, radius, 2)) for _ in range(2))
        if abs(1 - z * w) > 0.1:
            pts.append((z, w))
    return pts


def _suite_eigen(cfg: RunConfig):
    tol = cfg.tolerance("eigen")
    pts = _interior_samples(cfg.rng(), 20)
    errors = [
        eigen_residual((m, n), pts) for m in range(cfg.max_m + 1) for n in range(-m, m + 1)
    ]
    return len(errors), sum(e > tol for e in errors), max(errors)


def _suite_basis(cfg: RunConfig):
    checks = [basischange.roundtrip_check(cfg.max_m)]
    for m in range(cfg.max_m + 1):
        checks += [basischange.a_bound_check(m), basischange.refined_bound_check(m)]
    return len(checks), checks.count(False), 0.0


def _suite_zonal(cfg: RunConfig):
    tol = cfg.tolerance("zonal")
    rng = cfg.rng()
    errors = []
    for m in range(cfg.max_m + 1):
        Z = zonal.ZonalEvaluator(m)
        for p1, p2 in zip(_interior_samples(rng, 10), _interior_samples(rng, 10)):
            a = Z(p1, p2)
            errors.append(abs(a - zonal.zonal_pullback(m, p1, p2)) / max(1.0, abs(a)))
            errors.append(abs(Z(p1, p1) - (2 * m + 1)))
    return len(errors), sum(e > tol for e in errors), max(errors)


def _suite_csh(cfg: RunConfig):
    tol = cfg.tolerance("csh")
    rng = cfg.rng()
    cases = failures = 0
    worst = 0.0
    pts = [sphere.stereo(p) for p in _interior_samples(rng, 10, radius=1.5)]
    for m in range(cfg.max_m + 1):
        for n in range(-m, m + 1):
            cases += 1
            poly = sphere.harmonic_polynomial(m, n)
            ok = sphere.laplacian_C3(poly) == sphere.TrivariatePoly()
            for s in pts:
                ref = sphere.spfm_eval((m, n), s)
                err = max(
                    abs(complex(sphere.csh_closed_form((m, n), s)) - ref),
                    abs(poly(*s.as_tuple()) - ref),
                ) / max(1.0, abs(ref))
                worst = max(worst, err)
                ok = ok and err <= tol
            failures += not ok
    return cases, failures, worst


SUITES = {
    "cid": _suite_cid,
    "l1": _suite_l1,
    "whipple": _suite_whipple,
    "gram": _suite_gram,
    "eigen": _suite_eigen,
    "basis": _suite_basis,
    "zonal": _suite_zonal,
    "csh": _suite_csh,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    cases, failures, max_error = SUITES[name](cfg)
    return {"suite": name, "cases": cases, "failures": int(failures), "max_error": float(max_error)}


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args, cfg: RunConfig) -> int:
    target = args.target
    if target == "pfm":
        value = pfm_eval((args.m, args.n), parse_point(args.point))
    elif target == "f":
        if args.m < 0 or args.n < 0:
            raise UsageError("f needs non-negative indices (--m is p, --n is q)")
        value = f_pq_eval(args.m, args.n, parse_point(args.point))
    elif target == "csh":
        coords = parse_coords(args.point, (2, 3))
        if len(coords) == 2:
            s = sphere.stereo(OmegaPoint(*coords))
        else:
            s = sphere.SpherePointC(*(_finite(c, "sphere coordinate") for c in coords))
        if abs(args.n) > args.m:
            value = 0j
        else:
            value = complex(sphere.csh_closed_form((args.m, args.n), s))
    else:
        coords = parse_coords(args.point, 4)
        value = zonal.zonal_sum(args.m, OmegaPoint(*coords[:2]), OmegaPoint(*coords[2:]))
    emit(_num(value), cfg.fmt)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        start = time.perf_counter()
        report = run_suite(name, cfg)
        if args.timing:
            report["seconds"] = round(time.perf_counter() - start, 3)
        reports.append(report)
    if args.suite == "all":
        payload = {
            "suite": "all",
            "cases": sum(r["cases"] for r in reports),
            "failures": sum(r["failures"] for r in reports),
            "max_error": max(r["max_error"] for r in reports),
            "suites": reports,
        }
    else:
        payload = reports[0]
    if cfg.fmt == "csv":
        emit([{k: r[k] for k in ("suite", "cases", "failures", "max_error")} for r in reports], "csv")
    else:
        emit(payload, "json")
    return EXIT_FAIL if payload["failures"] else 0


def cmd_decompose(args, cfg: RunConfig) -> int:
    F = parse_function(args.f)
    table = quadrature.decompose(F, cfg.max_m, cfg.quadrature)
    if args.drop_below is not None:
        table.entries = {k: v for k, v in table.entries.items() if abs(v) >= args.drop_below}
    if cfg.fmt == "csv":
        rows = [{"m": m, "n": n, "re": c.real, "im": c.imag} for (m, n), c in sorted(table.entries.items())]
        text = _csv_text(rows, ["m", "n", "re", "im"])
    else:
        text = table.to_json(sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        emit({"residual": table.residual}, "json")
    else:
        sys.stdout.write(text)
    return 0


def _csv_text(rows: list[dict], header: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _fraction_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cmd_table(args, cfg: RunConfig) -> int:
    if args.kind == "gram":
        gram = quadrature.gram_matrix(cfg.max_m, cfg.quadrature)
        rows = [
            {"m": a[0], "n": a[1], "p": b[0], "q": b[1], "re": v.real, "im": v.imag}
            for (a, b), v in sorted(gram.items())
        ]
        header = ["m", "n", "p", "q", "re", "im"]
    else:
        m = cfg.max_m if args.m is None else args.m
        rows = []
        for n in range(-m, m + 1):
            for (p, q), c in basischange.pfm_in_f(m, n).terms:
                rows.append({"direction": "pfm_in_f", "source": f"{m},{n}",
                             "target": f"{p},{q}", "coefficient": _fraction_text(c)})
        for p in range(m + 1):
            for q in range(m + 1):
                if max(p, q) != m:
                    continue
                for (mm, nn), c in basischange.f_in_pfm(p, q).terms:
                    rows.append({"direction": "f_in_pfm", "source": f"{p},{q}",
                                 "target": f"{mm},{nn}", "coefficient": _fraction_text(c)})
        header = ["direction", "source", "target", "coefficient"]
    if cfg.fmt == "csv":
        sys.stdout.write(_csv_text(rows, header))
    else:
        emit(rows, "json")
    return 0


def _restricted_coordinate(text: str) -> ExtendedComplex:
    return parse_coords(text, (1, 2))[0]


def cmd_zonal(args, cfg: RunConfig) -> int:
    if args.restrict == "sphere":
        z, u = _restricted_coordinate(args.p1), _restricted_coordinate(args.p2)
        value = complex(zonal.zonal_sphere(args.m, z, u))
    elif args.restrict == "disk":
        z = _finite(_restricted_coordinate(args.p1), "disk point")
        u = _finite(_restricted_coordinate(args.p2), "disk point")
        value = complex(zonal.zonal_disk(args.m, z, u))
    else:
        value = zonal.zonal_sum(args.m, parse_point(args.p1), parse_point(args.p2))
    emit(_num(value), cfg.fmt)
    return 0


def cmd_transform(args, cfg: RunConfig) -> int:
    entries = [_finite(c, "matrix entry") for c in parse_coords(args.psi, 4)]
    try:
        psi = moebius.SphereMoebius(*entries)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    T = moebius.MoebiusMap(psi, args.family == "swapped")
    image = moebius.apply(T, parse_point(args.point))
    payload = {"z": _ext(image.z), "w": _ext(image.w)}
    if cfg.fmt == "csv":
        flat = {}
        for key in ("z", "w"):
            v = getattr(image, key)
            flat[f"{key}_re"] = "inf" if v.infinite else v.value.real
            flat[f"{key}_im"] = "inf" if v.infinite else v.value.imag
        emit([flat], "csv")
    else:
        emit(payload, "json")
    return 0


# ---------------------------------------------------------------------------
# argument parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radial-order", type=int, default=argparse.SUPPRESS)
    common.add_argument("--angular-order", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--max-m", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="pfmodes", parents=[common],
                                     description="Poisson Fourier modes toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function at a point")
    p.add_argument("target", choices=("pfm", "f", "csh", "zonal"))
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--point", required=True,
                   help="z,w for pfm/f/csh; z1,z2,z3 also for csh; z,w,u,v for zonal")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="Schauder coefficients of a catalogue function")
    p.add_argument("--f", required=True, help="e.g. 'f:1,1', 'pfm:2,1', 'geom', 'exp:6', '0.5*pfm:1,0+geom'")
    p.add_argument("--out")
    p.add_argument("--drop-below", type=float)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("table", parents=[common], help="emit Gram or basis-change tables")
    p.add_argument("kind", choices=("gram", "basis-change"))
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("zonal", parents=[common], help="evaluate the zonal harmonic")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--restrict", choices=("sphere", "disk"))
    p.set_defaults(func=cmd_zonal)

    p = sub.add_parser("transform", parents=[common], help="apply a Moebius map of Omega")
    p.add_argument("--psi", required=True, help="a,b,c,d")
    p.add_argument("--family", choices=("direct", "swapped"), default="direct")
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_transform)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        radial_order=getattr(args, "radial_order", 64),
        angular_order=getattr(args, "angular_order", 256),
        tol=getattr(args, "tol", None),
        max_m=getattr(args, "max_m", 6),
        fmt=getattr(args, "format", "json"),
        seed=getattr(args, "seed", 0),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, _config(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutsideDomain as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: ``logconf <command> [options]``.

Every command builds a :class:`~logconf.reports.SuiteReport` and writes it as
JSON or CSV. The exit status is 0 when every entry passes, 1 when one fails
and 2 on a usage error. ``LOGCONF_THREADS`` caps the number of entries
computed in parallel.
"""

import argparse
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import constants as C
from .corpus import corpus, mixed_harmonic
from .forms import (
    FORM_TOLERANCE,
    a2_profile,
    beckner_check,
    beckner_gap,
    norm_report,
    pitt_check,
    positivity_margin,
    plane_weighted_l2,
)
from .geometry import iota_push, make_rng, random_ball_points, random_sphere_points
from .harmonics import eigentable, zonal_harmonic
from .operators import (
    conformal_law_residual,
    explicit_residuals,
    intertwining_residual,
    naturality_residual,
    q_curvature_check,
    slimit_convergence,
    slimit_errors,
    spectral_residual,
)
from .quadrature import DEFAULT_TOLERANCE, ToleranceConfig
from .reports import ResidualReport, SuiteReport, emit_report
from .yamabe import (
    bubble_field,
    chen_zhou_check,
    constant_field,
    equivalence_check,
    frank_field,
    residual_y1,
    residual_y2,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_QUADRATURE_DIM = 3


class UsageError(Exception):
    """Invalid combination of options, reported with exit status 2."""


def _threads():
    raw = os.environ.get("LOGCONF_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"LOGCONF_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _run_entries(jobs):
    """Evaluate ``(name, tolerance, thunk)`` jobs; exceptions become failed entries."""

    def run(job):
        name, tolerance, thunk = job
        try:
            out = thunk()
        except Exception as exc:  # surfaced in the report rather than as a crash
            return [ResidualReport.failed(name, tolerance, f"{type(exc).__name__}: {exc}")]
        return out if isinstance(out, list) else [out]

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(run, jobs))
    return [entry for group in results for entry in group]


def _quad_tol(args):
    return ToleranceConfig(target_abs_tol=args.quad_tol, max_refinement_level=DEFAULT_TOLERANCE.max_refinement_level)


def _form_tol(args):
    return ToleranceConfig(
        target_abs_tol=max(args.quad_tol, FORM_TOLERANCE.target_abs_tol),
        max_refinement_level=FORM_TOLERANCE.max_refinement_level,
        target_rel_tol=FORM_TOLERANCE.target_rel_tol,
    )


def _check(value, default):
    return default if value is None else value


def _need_quadrature_dim(args):
    if args.dim > MAX_QUADRATURE_DIM:
        raise UsageError(f"quadrature-backed commands support --dim 1..{MAX_QUADRATURE_DIM}")


def _sphere_points(args):
    return random_sphere_points(args.dim, args.points, make_rng(args.seed))


def _plane_points(args, radius):
    return random_ball_points(args.dim, args.points, radius, make_rng(args.seed))


# Commands ----------------------------------------------------------------------


def cmd_constants(args):
    N = args.dim
    values = C.log_constants(N).as_dict()
    formulas = dict(C.FORMULAS)
    values["frank_consistency"] = C.frank_consistency(N)
    formulas["frank_consistency"] = "beckner N kernel_constant"
    if args.order is not None:
        values["frac_kernel_constant"], values["frac_zeroth_order"] = C.frac_constants(N, args.order)
        values["order"] = args.order
    else:
        formulas = {k: v for k, v in formulas.items() if not k.startswith("frac_")}
    rows = [["name", "value", "formula"]] + [[k, v, formulas.get(k, "")] for k, v in values.items()]
    entry = ResidualReport(
        "frank consistency",
        [{"dim": N}],
        [values["frank_consistency"] - 4.0],
        _check(args.tol, 1e-13),
        extra={"values": values, "formulas": formulas},
    )
    return [entry], rows


def cmd_eigentable(args):
    recs = eigentable(args.dim, args.max_degree)
    rows = [["i", "b_i", "c_i", "phi_log"]] + [[r.degree, r.b, r.c, r.phi_log] for r in recs]
    increasing = [max(0.0, a.phi_log - b.phi_log) for a, b in zip(recs, recs[1:])]
    entry = ResidualReport(
        "symbol strictly increasing",
        [{"i": r.degree} for r in recs[1:]],
        increasing,
        0.0,
    )
    return [entry], rows


def cmd_eigencheck(args):
    _need_quadrature_dim(args)
    pts = _sphere_points(args)
    tol, tolerance = _quad_tol(args), _check(args.tol, 1e-5)
    degrees = range(args.max_degree + 1)
    jobs = [
        (f"spectral N={args.dim} i={i}", tolerance, lambda i=i: spectral_residual(args.dim, i, pts, tol, tolerance))
        for i in degrees
    ]
    entries = _run_entries(jobs)
    rows = [["i", "b_i", "c_i", "phi_log", "measured", "rel_error"]]
    for rec, e in zip(eigentable(args.dim, args.max_degree), entries):
        measured = e.extra.get("measured_symbol", math.nan)
        rows.append([rec.degree, rec.b, rec.c, rec.phi_log, measured, e.max_abs if e.error is None else math.nan])
    return entries, rows


def cmd_intertwine(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol, tolerance = _quad_tol(args), _check(args.tol, 1e-4)
    pts = _plane_points(args, 3.0)
    fields = [item.sphere for item in corpus(N, args.seed)]
    pole = random_sphere_points(N, 1, make_rng(args.seed + 1))[0]
    # a field with no symmetry left, to exercise the full rules
    tilted = zonal_harmonic(N, 0) + zonal_harmonic(N, 1, pole) * 0.3 - zonal_harmonic(N, 2, pole) * 0.8
    fields.append(tilted + zonal_harmonic(N, 3, pole[::-1]) * 0.5)
    jobs = [(f"intertwining {u.name}", tolerance, lambda u=u: intertwining_residual(u, pts, tol, tolerance)) for u in fields]
    explicit_pts = _plane_points(args, 5.0)
    jobs.append(("explicit", 1e-5, lambda: explicit_residuals(N, explicit_pts, tol, _check(args.tol, 1e-5))))
    return _run_entries(jobs), None


def cmd_conformal_law(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol, tolerance = _quad_tol(args), _check(args.tol, 1e-4)
    pts = _sphere_points(args)
    e = np.eye(N + 1)
    eta1 = zonal_harmonic(N, 1).apply(lambda t: (1.0 + 0.3 * t) ** 4, name="(1+0.3z)^4")
    eta2 = zonal_harmonic(N, 1, e[0]).apply(lambda t: (1.0 + 0.2 * t) ** 2, name="(1+0.2z1)^2")
    f = zonal_harmonic(N, 1)
    a = 0.4 * random_sphere_points(N, 1, make_rng(args.seed + 1))[0]
    jobs = [
        ("conformal law", tolerance, lambda: conformal_law_residual(eta1, eta2, f, pts, tol, tolerance)),
        ("naturality", tolerance, lambda: naturality_residual(f + zonal_harmonic(N, 2) * 0.5, a, pts, tol, tolerance)),
    ]
    return _run_entries(jobs), None


def cmd_slimit(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol = _quad_tol(args)
    s_list = args.s if args.s else [0.2, 0.1, 0.05]
    if any(b >= a for a, b in zip(s_list, s_list[1:])):
        raise UsageError("--s must be strictly decreasing")
    pts = _sphere_points(args)
    u = mixed_harmonic(N)
    one = zonal_harmonic(N, 0)

    def constant_case():
        errs = slimit_errors(one, s_list, pts, tol)
        exact = [abs((C.frac_zeroth_order(N, s) - 1.0) / s - C.q_curvature(N)) for s in s_list]
        return ResidualReport(
            "s-limit constant vs symbol quotient",
            [{"s": s} for s in s_list],
            np.asarray(errs) - np.asarray(exact),
            _check(args.tol, 1e-10),
            extra={"E": errs, "quotient": exact},
        )

    jobs = [
        ("s-limit", 0.0, lambda: slimit_convergence(u, s_list, pts, tol)),
        ("s-limit constant", 1e-10, constant_case),
    ]
    return _run_entries(jobs), None


def cmd_qcurv(args):
    _need_quadrature_dim(args)
    tolerance = _check(args.tol, 1e-8)
    pts = _sphere_points(args)
    return _run_entries([("q-curvature", tolerance, lambda: q_curvature_check(args.dim, pts, _quad_tol(args), tolerance))]), None


def cmd_norms(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol, tolerance = _form_tol(args), _check(args.tol, 1e-4)
    items = corpus(N, args.seed)

    def one(item):
        rep = norm_report(item.name, item.sphere, item.plane, tol)
        l2 = plane_weighted_l2(item.plane, item.plane, tol=tol).value
        pos = positivity_margin(item.plane, tol)
        return [
            ResidualReport(
                f"isometry {item.name}",
                [item.describe()],
                [rep.isometry_gap],
                tolerance,
                extra={
                    "h_sphere_norm": rep.h_sphere_norm,
                    "d_norm": rep.d_norm,
                    "dlog_norm": rep.dlog_norm,
                    "equivalence_ratio": rep.equivalence_ratio,
                    "kappa": rep.kappa,
                    "l2_squared": l2,
                },
            ),
            ResidualReport(
                f"positivity {item.name}",
                [item.describe()],
                [max(0.0, -pos)],
                1e-6,
                extra={"margin": pos},
            ),
        ]

    jobs = [(f"norms {it.name}", tolerance, lambda it=it: one(it)) for it in items]
    entries = _run_entries(jobs)
    rows = [["item", "h_sphere_norm", "d_norm", "dlog_norm", "isometry_gap", "ratio"]]
    for e in entries:
        if e.name.startswith("isometry") and e.error is None:
            x = e.extra
            rows.append([e.name.split(" ", 1)[1], x["h_sphere_norm"], x["d_norm"], x["dlog_norm"], e.max_abs, x["equivalence_ratio"]])
    return entries, rows


def cmd_pitt(args):
    _need_quadrature_dim(args)
    tol, tolerance = _form_tol(args), _check(args.tol, 1e-6)
    fields = [item.plane for item in corpus(args.dim, args.seed)]
    return _run_entries([("pitt", tolerance, lambda: pitt_check(fields, tol, tolerance))]), None


def cmd_beckner(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol, tolerance = _form_tol(args), _check(args.tol, 1e-6)
    e1 = np.eye(N + 1)[0]
    perturbed = zonal_harmonic(N, 0) + zonal_harmonic(N, 2) * 0.2
    fields = [item.sphere for item in corpus(N, args.seed)] + [perturbed]

    def equality():
        thetas = [0.0, 0.3, 0.6]
        gaps = [beckner_gap(frank_field(t * e1), tol) for t in thetas]
        return ResidualReport(
            "beckner equality",
            [{"theta_1": t} for t in thetas],
            gaps,
            1e-3,
        )

    jobs = [
        ("beckner", tolerance, lambda: beckner_check(fields, tol, tolerance)),
        ("beckner equality", 1e-3, equality),
    ]
    return _run_entries(jobs), None


A2_GRID = np.logspace(-3.0, 6.0, 37)


def cmd_a2_weight(args):
    N = args.dim
    table = a2_profile(N, A2_GRID)
    r = np.array([row[0] for row in table])
    H = np.array([row[1] for row in table])
    NH = np.array([row[2] for row in table])
    finite = ResidualReport(
        "H finite and positive",
        [{"r": x} for x in r],
        [0.0 if (np.isfinite(h) and h > 0) else np.inf for h in H],
        0.0,
        extra={"sup_H": float(np.max(H))},
    )
    large = r >= 1e4
    trend = ResidualReport(
        "N H(r) <= 1.05 for r >= 1e4",
        [{"r": x} for x in r[large]],
        np.maximum(0.0, NH[large] - 1.05),
        0.0,
        extra={"N_H": NH[large]},
    )
    small = ResidualReport(
        "H(1e-3) N^2 close to 1",
        [{"r": r[0]}],
        [H[0] * N * N - 1.0],
        _check(args.tol, 0.01),
    )
    rows = [["r", "H", "N*H"]] + [list(row) for row in table]
    return [finite, trend, small], rows


def cmd_yamabe_residual(args):
    _need_quadrature_dim(args)
    N = args.dim
    tol = _quad_tol(args)
    AN = C.q_curvature(N)
    family = args.family
    mu = args.mu
    if mu is None:
        mu = 0.0 if family == "chenzhou" else AN
    if family == "chenzhou" and mu != 0.0:
        raise UsageError("the chenzhou family solves the equation with --mu 0")
    if family == "frank" and not math.isclose(mu, AN, rel_tol=0.0, abs_tol=1e-12):
        raise UsageError(f"the frank family solves the equation with mu = A_N = {AN!r}")
    tolerance = _check(args.tol, 1e-8 if family == "constant" else 1e-5)

    if args.side == "sphere":
        pts = _sphere_points(args)
        if family == "constant":
            u = constant_field(N, mu)
        elif family == "frank":
            u = frank_field(_vector(args.theta, N + 1, "--theta"))
        else:
            raise UsageError(f"family {family!r} lives on the plane side")
        jobs = [("Y1", tolerance, lambda: residual_y1(u, mu, pts, tol, tolerance))]
        if family == "frank":
            xs = _plane_points(args, 3.0)
            jobs.append(("Y1/Y2 equivalence", tolerance, lambda: equivalence_check(u, mu, xs, tol, tolerance)))
        return _run_entries(jobs), None

    if family == "constant":
        raise UsageError("the constant family lives on the sphere side")
    if family == "chenzhou":
        xs = _plane_points(args, 5.0)
        return _run_entries([("chen-zhou", tolerance, lambda: chen_zhou_check(N, xs, tol, tolerance))]), None
    if family == "frank":
        v = iota_push(frank_field(_vector(args.theta, N + 1, "--theta")))
        xs = _plane_points(args, 3.0)
    else:
        if args.t <= 0:
            raise UsageError("--t must be positive")
        center = _vector(args.center, N, "--center")
        v = bubble_field(N, args.t, center, mu)
        xs = center + _plane_points(args, 5.0 * args.t)
    return _run_entries([("Y2", tolerance, lambda: residual_y2(v, mu, xs, tol, tolerance))]), None


def _vector(values, size, flag):
    if values is None:
        return np.zeros(size)
    if len(values) != size:
        raise UsageError(f"{flag} needs {size} components")
    return np.asarray(values, dtype=float)


COMMANDS = {
    "constants": (cmd_constants, "closed-form constants of one dimension", "json"),
    "eigentable": (cmd_eigentable, "Laplace-Beltrami eigenvalues, multiplicities and log symbols", "csv"),
    "eigencheck": (cmd_eigencheck, "quadrature check of the spectral identity on zonal harmonics", "csv"),
    "intertwine": (cmd_intertwine, "sphere/plane intertwining residuals and explicit identities", "json"),
    "conformal-law": (cmd_conformal_law, "conformal covariance: cocycle and Mobius naturality", "json"),
    "slimit": (cmd_slimit, "first-order convergence of the fractional family as s -> 0", "json"),
    "qcurv": (cmd_qcurv, "log Q-curvature of the round sphere", "json"),
    "norms": (cmd_norms, "isometry between sphere and flat energy norms", "json"),
    "pitt": (cmd_pitt, "logarithmic Pitt inequality margins", "json"),
    "beckner": (cmd_beckner, "sphere log-Sobolev inequality margins and equality cases", "json"),
    "a2-weight": (cmd_a2_weight, "A2 profile of the weight ln(e + |x|^2)", "csv"),
    "yamabe-residual": (cmd_yamabe_residual, "pointwise residuals of the log Yamabe equations", "json"),
}


def _positive_int(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _positive_float(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser():
    parser = argparse.ArgumentParser(prog="logconf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text, default_format) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--dim", type=_positive_int, default=2, help="sphere dimension N (default 2)")
        p.add_argument("--tol", type=_positive_float, default=None, help="pass/fail tolerance (command default if omitted)")
        p.add_argument(
            "--quad-tol",
            type=_positive_float,
            default=DEFAULT_TOLERANCE.target_abs_tol,
            help="absolute target of the adaptive quadrature (default %(default)g)",
        )
        p.add_argument("--seed", type=int, default=0, help="seed of the sample points and corpus (default 0)")
        p.add_argument("--points", type=_positive_int, default=20, help="number of sample points (default 20)")
        p.add_argument("--format", choices=("json", "csv"), default=default_format, help=f"output format (default {default_format})")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        if name in ("eigentable", "eigencheck"):
            p.add_argument("--max-degree", type=int, default=6, help="largest degree (default 6)")
        if name == "constants":
            p.add_argument("--order", type=float, default=None, help="also report the fractional constants of order s in (0, 1)")
        if name == "slimit":
            p.add_argument("--s", type=float, nargs="+", default=None, help="decreasing orders (default 0.2 0.1 0.05)")
        if name == "yamabe-residual":
            p.add_argument("--side", choices=("sphere", "plane"), required=True)
            p.add_argument("--family", choices=("constant", "frank", "bubble", "chenzhou"), required=True)
            p.add_argument("--mu", type=float, default=None, help="Yamabe constant (default A_N, or 0 for chenzhou)")
            p.add_argument("--theta", type=float, nargs="+", default=None, help="frank parameter, N+1 numbers")
            p.add_argument("--t", type=float, default=1.0, help="bubble scale")
            p.add_argument("--center", type=float, nargs="+", default=None, help="bubble centre, N numbers")
    return parser


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k != "command"}
    return {k: cfg[k] for k in sorted(cfg)}


def run_suite(args):
    """Run one command and return its :class:`SuiteReport`."""
    func = COMMANDS[args.command][0]
    if getattr(args, "max_degree", 0) < 0:
        raise UsageError("--max-degree must be non-negative")
    start = time.perf_counter()
    entries, table = func(args)
    return SuiteReport(args.command, _config(args), entries, time.perf_counter() - start, table=table)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        report = run_suite(args)
        data = emit_report(report, args.format)
    except (UsageError, ValueError) as exc:
        print(f"logconf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

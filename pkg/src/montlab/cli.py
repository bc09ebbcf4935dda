"""Command-line interface.

    montlab analyze sphere --gen fibonacci --n 100 --degree 32 --checks montgomery,stolarsky
    montlab analyze torus --gen grid --n 16 --x 4 --checks montgomery-lemma
    montlab sweep sphere --gen uniform --n 60 --sets 50 --degree 8,16,32 --checks theorem2
    montlab calibrate --d 2
    montlab gen sphere --gen fibonacci --n 100 --out pts.txt

Every check produces a record ``{name, relation, lhs, rhs, tolerance, pass,
hard, fittedConstant, runtimeMs}``.  ``pass`` follows from the other fields:

    ">="      lhs >= rhs - tolerance
    "<="      lhs <= rhs + tolerance
    "=="      |lhs - rhs| <= tolerance
    "ratio>0" lhs > 0 and rhs > 0   (fitted-constant records, soft)

The exit code is 0 when every hard record passes, 1 otherwise and 2 for
usage errors.  Soft records only produce warnings.
"""

import argparse
import csv
import io
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from . import discrepancy as disc
from . import sphere, torus
from .errors import CalibrationError, MontlabError, RegimeError
from .gegenbauer import MAX_DEGREE, GegenbauerContext
from .pointsets import RNG_ALGORITHM, GeneratorSpec, generate, load_point_set, make_rng, save_point_set
from .profiles import ProfileFunction

SPHERE_CHECKS = (
    "montgomery", "addition", "kernel-chain", "theorem2", "discrepancy",
    "stolarsky", "generalized-stolarsky", "beck-refined", "energy",
)
DEGREE_FREE = ("stolarsky", "beck-refined")
TORUS_CHECKS = ("montgomery-lemma", "theorem1", "heat-chain", "poisson", "ball-window")
DEFAULT_CHECKS = {"sphere": ("montgomery", "kernel-chain", "theorem2"), "torus": ("montgomery-lemma", "theorem1")}

TORUS_GEN_ALIASES = {"grid": "torus-grid", "random": "torus-random", "uniform": "torus-random"}

DEFAULTS = {
    "c_prime": disc.DEFAULT_C_PRIME,
    "max_degree": 64,
    "mc_samples": 200_000,
    "tau": 0.0,
    "eps": 1e-3,
    "base": "fibonacci",
    "tail_c": torus.DEFAULT_TAIL_C,
}
CSV_COLUMNS = (
    "space", "gen", "n", "d", "seed", "L", "X", "name", "relation", "lhs", "rhs",
    "tolerance", "pass", "hard", "fittedConstant", "runtimeMs",
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- formatting

def _fmt_float(x):
    if x is None or not math.isfinite(x):
        return None
    return format(x, ".17g")


def _to_json(obj, indent=0):
    """JSON with every float written to 17 significant digits (non-finite -> null)."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        s = _fmt_float(float(obj))
        return "null" if s is None else s
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{_to_json(str(k))}: {_to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{inner}{_to_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (float, np.floating)):
        s = _fmt_float(float(v))
        return "" if s is None else s
    return "" if v is None else str(v)


# ---------------------------------------------------------------- records

def _passes(relation, lhs, rhs, tol):
    if lhs is None or rhs is None or not (math.isfinite(lhs) and math.isfinite(rhs)):
        return False
    if relation == ">=":
        return lhs >= rhs - tol
    if relation == "<=":
        return lhs <= rhs + tol
    if relation == "==":
        return abs(lhs - rhs) <= tol
    if relation == "ratio>0":
        return lhs > 0 and rhs > 0
    raise ValueError(relation)


def make_record(name, relation, lhs, rhs, tolerance=0.0, hard=True, fitted=None, runtime_ms=0.0, details=None):
    lhs, rhs = float(lhs), float(rhs)
    if fitted is None and relation == "ratio>0" and rhs != 0:
        fitted = lhs / rhs
    rec = {
        "name": name,
        "relation": relation,
        "lhs": lhs,
        "rhs": rhs,
        "tolerance": float(tolerance),
        "pass": _passes(relation, lhs, rhs, tolerance),
        "hard": hard,
        "fittedConstant": None if fitted is None or not math.isfinite(fitted) else float(fitted),
        "runtimeMs": float(runtime_ms),
    }
    if details:
        rec["details"] = details
    return rec


def record_passes(rec):
    """Recompute ``pass`` from the stored fields (reports are self-verifying)."""
    return _passes(rec["relation"], rec["lhs"], rec["rhs"], rec["tolerance"])


# ---------------------------------------------------------------- checks

def _stolarsky_constant(d, cfg):
    key = f"c_{d}"
    if key not in cfg:
        cal = disc.calibrate_stolarsky_constant(d, samples=int(cfg["mc_samples"]), seed=int(cfg["seed"]), store=False)
        cfg[key] = cal.c
        cfg[key + "_stderr"] = cal.stderr
    return cfg[key], cfg.get(key + "_stderr", 0.0)


def _sphere_checks(ps, name, L, ctx, cfg):
    N = ps.n
    scale = max(float(N) ** 2, float(np.sum(ps.weights)) ** 2)
    if name == "montgomery":
        S = sphere.montgomery_sums(ctx, ps, L)
        yield make_record(name, ">=", S.min(), 0.0, 1e-9 * scale, details={"S": S.tolist()})
    elif name == "addition":
        Lx = min(L, 8)
        gram = sphere.montgomery_sums(ctx, ps, Lx)
        explicit = sphere.explicit_harmonics_sum(ps, Lx)
        yield make_record(name, "<=", float(np.max(np.abs(gram - explicit))), 0.0, 1e-8 * scale, details={"L": Lx})
    elif name == "kernel-chain":
        lhs = sphere.theorem2_lhs(ctx, ps, L)
        g1 = sphere.kernel_lower_bound_sum(ctx, ps, L, 1)
        g2 = sphere.kernel_lower_bound_sum(ctx, ps, L, 2)
        slack = 1e-6 * scale
        yield make_record("kernel-chain-g1", ">=", lhs, g1, slack)
        yield make_record("kernel-chain-g2", ">=", g1, g2, slack)
        yield make_record("kernel-chain-nonneg", ">=", g2, 0.0, slack)
    elif name == "theorem2":
        lhs = sphere.theorem2_lhs(ctx, ps, L)
        yield make_record("theorem2", "ratio>0", lhs, sphere.theorem2_rhs(ps, L), hard=False)
        yield make_record("theorem2-diagonal", "ratio>0", lhs, float(np.sum(ps.weights**2)) * float(L) ** ps.d, hard=False)
    elif name == "discrepancy":
        f = ProfileFunction.cap(float(cfg["tau"]))
        spec = disc.discrepancy_l2(ctx, f, ps, "spectral", L)
        mc = disc.discrepancy_l2(ctx, f, ps, "montecarlo", samples=int(cfg["mc_samples"]), seed=int(cfg["seed"]))
        tol = 3.0 * mc.stderr + spec.truncation_bound
        yield make_record(name, "==", spec.squared, mc.squared, tol, details={"tau": float(cfg["tau"])})
    elif name == "stolarsky":
        c, c_se = _stolarsky_constant(ps.d, cfg)
        d2, se = disc.cap_discrepancy_direct(ps, int(cfg["mc_samples"]), int(cfg["seed"]))
        rhs = disc.distance_integral(ps.d) - disc.mean_pairwise_distance(ps)
        tol = 3.0 * math.hypot(c * se, d2 * c_se)
        yield make_record(name, "==", c * d2, rhs, tol, details={"c_d": c, "c_d_stderr": c_se})
    elif name == "generalized-stolarsky":
        rep = disc.generalized_stolarsky_check(ctx, ProfileFunction.cap(float(cfg["tau"])), ps, L)
        yield make_record(name, "==", rep.lhs, rep.rhs, rep.truncation_bound + 1e-8, details={"tau": float(cfg["tau"])})
    elif name == "beck-refined":
        c, _ = _stolarsky_constant(ps.d, cfg)
        rep = disc.beck_refined_check(ps, c_d=c)
        yield make_record(name, "ratio>0", rep.lhs, rep.rhs, hard=False)
    elif name == "energy":
        rep = disc.energy_gap_report(ctx, disc.distance_profile(), ps, L, float(cfg["c_prime"]))
        tol = 1e-8 * max(1.0, abs(rep.integral_energy))
        yield make_record(name, ">=", rep.difference, 0.0, tol, fitted=rep.fitted_constant,
                          details={"clusteringRHS": rep.clustering_rhs, "degreeCap": rep.degree_cap})
    else:
        raise UsageError(f"unknown sphere check {name!r}")


def _torus_checks(ps, name, X, cfg):
    if name == "montgomery-lemma":
        rep = torus.montgomery_lemma_check(ps, X)
        yield make_record(name, ">=", rep.lhs, rep.rhs, 1e-9 * abs(rep.rhs))
    elif name == "theorem1":
        rep = torus.theorem1_functional(ps, X)
        yield make_record(name, "ratio>0", rep.lhs, rep.rhs_core, hard=False,
                          details={"ratioWithoutLog": rep.ratio_without_log})
    elif name == "heat-chain":
        rep = torus.heat_comparison_diagnostic(ps, X, float(cfg["tail_c"]))
        tol = 1e-10 * max(1.0, abs(rep.heat_form))
        gauss = (4 * math.pi) ** (-ps.d / 2) * rep.heat_diagonal
        links = [
            ("heat-chain:lhs>=damped", ">=", rep.spectral_lhs, rep.damped_lhs),
            ("heat-chain:damped>=heat-tail", ">=", rep.damped_lhs, rep.heat_form - rep.exact_tail_term),
            ("heat-chain:tail<=bound", "<=", rep.exact_tail_term, rep.tail),
            ("heat-chain:heat>=diagonal", ">=", rep.heat_form, rep.heat_diagonal_exact),
            ("heat-chain:diagonal>=gaussian", ">=", rep.heat_diagonal_exact, gauss),
            ("heat-chain:margin", ">=", rep.spectral_lhs, rep.heat_form - rep.tail),
        ]
        for lname, rel, lhs, rhs in links:
            t = tol * max(1.0, abs(rhs)) if lname.endswith("tail<=bound") else tol
            yield make_record(lname, rel, lhs, rhs, t, details={"t": rep.t, "A": rep.A, "c": rep.c})
    elif name == "poisson":
        rng = make_rng(int(cfg["seed"]))
        worst = 0.0
        for _ in range(100):
            x, y = rng.random(ps.d), rng.random(ps.d)
            t = 10.0 ** rng.uniform(-3.0, 0.0)
            a = float(torus.heat_kernel(x, y, t, ps.d))
            b = float(torus.heat_kernel_spectral(x, y, t, ps.d))
            worst = max(worst, abs(a - b))
        yield make_record(name, "<=", worst, 0.0, 1e-12)
    elif name == "ball-window":
        lhs = torus.ball_window_sum(ps, X)
        yield make_record(name, "ratio>0", lhs, torus.clustering_diagnostic_torus(ps, X), hard=False)
    else:
        raise UsageError(f"unknown torus check {name!r}")


def run_checks(ps, checks, cfg, L=None, X=None):
    records = []
    ctx = None
    if ps.space == "sphere":
        if L is None and any(c not in DEGREE_FREE for c in checks):
            raise UsageError("these sphere checks need --degree")
        if L is not None:
            ctx = GegenbauerContext(ps.d, max(L, int(cfg["max_degree"])))
    elif X is None and any(c != "poisson" for c in checks):
        raise UsageError("torus checks need --x")
    for name in checks:
        start = time.perf_counter()
        try:
            gen = _sphere_checks(ps, name, L, ctx, cfg) if ps.space == "sphere" else _torus_checks(ps, name, X, cfg)
            batch = list(gen)
        except RegimeError as exc:
            batch = [{"name": name, "skipped": str(exc)}]
        elapsed = 1e3 * (time.perf_counter() - start)
        for rec in batch:
            rec["runtimeMs"] = elapsed / len(batch)
        records.extend(batch)
    return records


# ---------------------------------------------------------------- argument handling

def read_config(path):
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key in DEFAULTS or key.startswith("c_") and key[2:].isdigit():
                cfg[key] = val if key == "base" else float(val)
            else:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg


def _int_list(text, flag):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}")
    if not vals:
        raise UsageError(f"{flag} range is empty")
    return vals


def _config(args):
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    cfg["seed"] = args.seed
    for key in ("mc_samples", "tau", "eps", "base", "c_prime"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if int(cfg["max_degree"]) > MAX_DEGREE:
        raise UsageError(f"max_degree is limited to {MAX_DEGREE}")
    return cfg


def _generator_spec(args, cfg, n, seed):
    kind = args.gen
    if args.space == "torus":
        kind = TORUS_GEN_ALIASES.get(kind, kind)
    return GeneratorSpec(kind, n, args.space, args.d, seed, str(cfg["base"]), float(cfg["eps"]),
                         weighted=getattr(args, "weighted", False))


def _point_set(args, cfg, n, seed):
    if args.file:
        ps = load_point_set(args.file)
        if ps.space != args.space:
            raise UsageError(f"{args.file} holds a {ps.space} point set")
        return ps, {"file": args.file}
    if not args.gen:
        raise UsageError("one of --gen or --file is required")
    if n is None:
        raise UsageError("--n is required with --gen")
    spec = _generator_spec(args, cfg, n, seed)
    echo = {"gen": spec.kind, "n": spec.n, "d": spec.d, "seed": spec.seed}
    if spec.kind in ("cluster-pairs", "antipodal"):
        echo.update(base=spec.base_kind, eps=spec.eps)
    if spec.weighted:
        echo["weighted"] = True
    return generate(spec), echo


def _checks(args):
    allowed = SPHERE_CHECKS if args.space == "sphere" else TORUS_CHECKS
    if not args.checks:
        return list(DEFAULT_CHECKS[args.space])
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    if not names:
        raise UsageError("--checks is empty")
    bad = [c for c in names if c not in allowed]
    if bad:
        raise UsageError(f"unknown {args.space} checks: {', '.join(bad)} (choose from {', '.join(allowed)})")
    return names


def _environment(cfg, ps, L, X):
    env = {
        "seed": int(cfg["seed"]),
        "rng": RNG_ALGORITHM,
        "cPrime": float(cfg["c_prime"]),
        "mcSamples": int(cfg["mc_samples"]),
    }
    if ps.space == "sphere" and L is not None:
        ctx_degree = max(L, int(cfg["max_degree"]))
        env["quadrature"] = {"maxDegree": ctx_degree, "gaussNodes": ctx_degree + 3}
        env["stolarskyConstants"] = {k: float(v) for k, v in cfg.items() if k.startswith("c_") and k[2:].isdigit()}
    if ps.space == "torus" and X is not None:
        env["tailC"] = float(cfg["tail_c"])
        if X >= 2:
            t, A = torus.time_choice(X, ps.d, float(cfg["tail_c"]))
            env["heatTime"] = t
            env["A"] = A
    return env


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(records):
    hard_fail = [r for r in records if r.get("hard") and not r.get("pass")]
    soft_fail = [r for r in records if "hard" in r and not r["hard"] and not r["pass"]]
    for r in soft_fail:
        print(f"warning: fitted-constant record {r['name']} is not positive", file=sys.stderr)
    for r in records:
        if "skipped" in r:
            print(f"warning: {r['name']} skipped: {r['skipped']}", file=sys.stderr)
    if hard_fail:
        for r in hard_fail:
            print("FAILED " + _to_json(r), file=sys.stderr)
        return 1
    return 0


def cmd_analyze(args):
    cfg = _config(args)
    L = None if args.degree is None else _int_list(args.degree, "--degree")
    X = None if args.x is None else _int_list(args.x, "--x")
    if (L and len(L) > 1) or (X and len(X) > 1):
        raise UsageError("analyze takes a single --degree / --x; use sweep for ranges")
    L = L[0] if L else None
    X = X[0] if X else None
    if L is not None and not 0 <= L <= MAX_DEGREE:
        raise UsageError(f"--degree must lie in [0, {MAX_DEGREE}]")
    checks = _checks(args)
    ps, echo = _point_set(args, cfg, args.n, args.seed)
    records = run_checks(ps, checks, cfg, L, X)
    report = {
        "toolVersion": __version__,
        "space": ps.space,
        "d": ps.d,
        "pointSet": echo,
        "parameters": {"L": L, "X": X},
        "checks": records,
        "environment": _environment(cfg, ps, L, X),
    }
    if args.format == "csv":
        _emit(_records_csv([_row(args, ps, echo, L, X, r) for r in records]), args.out)
    else:
        _emit(_to_json(report) + "\n", args.out)
    return _finish(records)


def _row(args, ps, echo, L, X, rec):
    row = {"space": ps.space, "gen": echo.get("gen", echo.get("file")), "n": ps.n, "d": ps.d,
           "seed": echo.get("seed"), "L": L, "X": X}
    row.update({k: rec.get(k) for k in CSV_COLUMNS if k in rec})
    return row


def _records_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([_csv_cell(row.get(c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def _sweep_job(job):
    args, cfg, n, seed, L, X, checks = job
    ps, echo = _point_set(args, cfg, n, seed)
    return [_row(args, ps, echo, L, X, r) for r in run_checks(ps, checks, dict(cfg), L, X)]


def thread_count():
    try:
        cap = int(os.environ.get("MONTLAB_THREADS", "0"))
    except ValueError:
        cap = 0
    n = os.cpu_count() or 1
    return max(1, min(cap, n) if cap > 0 else n)


def cmd_sweep(args):
    cfg = _config(args)
    checks = _checks(args)
    if args.space == "sphere":
        if args.degree is None:
            raise UsageError("sphere sweeps need --degree")
        params = [(L, None) for L in _int_list(args.degree, "--degree")]
        if max(L for L, _ in params) > MAX_DEGREE:
            raise UsageError(f"--degree must not exceed {MAX_DEGREE}")
    else:
        if args.x is None:
            raise UsageError("torus sweeps need --x")
        params = [(None, X) for X in _int_list(args.x, "--x")]
    ns = [None] if args.file else _int_list(args.n or "", "--n")
    if args.sets < 1:
        raise UsageError("--sets must be >= 1")
    seeds = [args.seed + i for i in range(args.sets)] if not args.file else [args.seed]
    if args.space == "sphere" and any(c in ("stolarsky", "beck-refined") for c in checks):
        for d in {args.d} if not args.file else {load_point_set(args.file).d}:
            _stolarsky_constant(d, cfg)
    jobs = [(args, cfg, n, s, L, X, checks) for n in ns for s in seeds for L, X in params]
    workers = min(thread_count(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_job, jobs))
    else:
        results = [_sweep_job(j) for j in jobs]
    rows = [row for batch in results for row in batch]
    if args.format == "json":
        _emit(_to_json({"toolVersion": __version__, "rows": rows}) + "\n", args.out)
    else:
        _emit(_records_csv(rows), args.out)
    return _finish([r for r in rows if r.get("pass") is not None])


def cmd_calibrate(args):
    cfg = _config(args)
    try:
        cal = disc.calibrate_stolarsky_constant(args.d, N=args.n or 100, samples=int(cfg["mc_samples"]), seed=args.seed)
    except CalibrationError as exc:
        print(f"calibration failed: {exc}", file=sys.stderr)
        return 1
    exact = disc.stolarsky_constant_exact(GegenbauerContext(args.d, 4))
    report = {
        "toolVersion": __version__,
        "d": cal.d,
        "c": cal.c,
        "stderr": cal.stderr,
        "ratios": cal.ratios,
        "ratioStderrs": cal.ratio_stderrs,
        "spread": cal.spread,
        "samples": cal.samples,
        "seed": cal.seed,
        "rng": RNG_ALGORITHM,
        "degreeOneValue": exact,
        "configLine": f"c_{cal.d} = {_fmt_float(cal.c)}",
    }
    _emit(_to_json(report) + "\n", args.out)
    return 0


def cmd_gen(args):
    cfg = _config(args)
    ps, _ = _point_set(args, cfg, args.n, args.seed)
    if args.out:
        save_point_set(ps, args.out)
    else:
        save_point_set(ps, sys.stdout)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed (default 0)")
    common.add_argument("--config", help="key = value file (c_2, c_prime, max_degree, mc_samples, tau, ...)")
    common.add_argument("--out", help="write to this path instead of stdout")
    common.add_argument("--samples", dest="mc_samples", type=int, help="Monte Carlo samples")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("space", nargs="?", choices=("sphere", "torus"), default="sphere")
    source.add_argument("--gen", help="uniform, fibonacci, spiral, cluster-pairs, antipodal, grid, random")
    source.add_argument("--file", help="point-set file")
    source.add_argument("--d", type=int, default=2)
    source.add_argument("--eps", type=float, help="cluster-pairs chordal separation")
    source.add_argument("--base", help="base generator for cluster-pairs / antipodal")
    source.add_argument("--weighted", action="store_true", help="random weights in [0, 1)")

    checks = argparse.ArgumentParser(add_help=False)
    checks.add_argument("--checks", help="comma-separated check names")
    checks.add_argument("--degree", "-L", help="harmonic degree L")
    checks.add_argument("--x", "-X", help="frequency cutoff X")
    checks.add_argument("--tau", type=float, help="cap threshold for discrepancy checks")
    checks.add_argument("--c-prime", dest="c_prime", type=float, help="C' in the energy corollary")
    checks.add_argument("--format", choices=("json", "csv"))

    p = argparse.ArgumentParser(prog="montlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"montlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common, source, checks], help="run checks on one point set")
    a.add_argument("--n", type=int)
    a.set_defaults(func=cmd_analyze, default_format="json")

    s = sub.add_parser("sweep", parents=[common, source, checks], help="run checks over ranges of N, L or X")
    s.add_argument("--n", help="comma-separated list of N")
    s.add_argument("--sets", type=int, default=1, help="number of seeds per configuration")
    s.set_defaults(func=cmd_sweep, default_format="csv")

    c = sub.add_parser("calibrate", parents=[common], help="calibrate the Stolarsky constant c_d")
    c.add_argument("--d", type=int, default=2)
    c.add_argument("--n", type=int, default=100)
    c.set_defaults(func=cmd_calibrate)

    g = sub.add_parser("gen", parents=[common, source], help="write a point-set file")
    g.add_argument("--n", type=int)
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", "x") is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"montlab: error: {exc}", file=sys.stderr)
        return 2
    except (MontlabError, OSError) as exc:
        print(f"montlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

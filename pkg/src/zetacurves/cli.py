"""Command-line surface.

One subcommand per operation family; every output file starts with a
provenance header (tool version + parameter echo).  Exit status 2 marks
parameter validation failures, 1 numeric failures; both write a
machine-readable error record to stderr.

ZETACURVES_THREADS caps the thread count of the numeric backends (it is
exported to the BLAS/OpenMP pools before they start).
"""

import argparse
import json
import os
import sys


def _apply_thread_env():
    n = os.environ.get("ZETACURVES_THREADS")
    if n:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, n)


def _params(args):
    skip = {"func", "out", "out_dir", "format"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}


def _parse_target_id(spec):
    from .jensen import ZETA, ZETA_PRIME, dirichlet_poly

    if spec == "zeta":
        return ZETA
    if spec in ("zeta-prime", "zeta_prime"):
        return ZETA_PRIME
    if spec.startswith("poly:"):
        coeffs = []
        for part in spec[5:].split(","):
            n, _, a = part.partition("=")
            coeffs.append((int(n), complex(a)))
        return dirichlet_poly(coeffs)
    raise ValueError(f"unknown function spec {spec!r}; use zeta, zeta-prime or poly:n=a,...")


def _segment(args):
    from .curvature import VerticalSegment

    return VerticalSegment(args.sigma, args.t_min, args.t_max, args.step)


# ---------------------------------------------------------------- commands

def _cmd_trace(args):
    import numpy as np

    from .engine import EvalConfig, zeta_jets_on_grid
    from .serialization import write_csv
    from .svgplot import write_svg

    seg = _segment(args)
    ts = seg.grid()
    g = zeta_jets_on_grid(seg.sigma, ts[0], seg.step, ts.size,
                          EvalConfig(args.tolerance), want_derivs=False)
    rows = list(zip(ts, g.value.real, g.value.imag))
    if args.format == "svg":
        write_svg(args.out, [(g.value.real.tolist(), g.value.imag.tolist())],
                  title=f"zeta({seg.sigma}+it), {seg.t_min} <= t <= {seg.t_max}",
                  command="trace", params=_params(args))
    else:
        write_csv(args.out, ["t", "re", "im"], rows, "trace", _params(args))
    return 0


def _cmd_curvature(args):
    from .curvature import curvature_profile
    from .engine import EvalConfig
    from .serialization import write_csv

    prof = curvature_profile(_segment(args), EvalConfig(args.tolerance))
    rows = [(p.t, p.kappa, p.re_logderiv, p.speed, p.defined) for p in prof]
    write_csv(args.out, ["t", "kappa", "re_logderiv", "speed", "defined"],
              rows, "curvature", _params(args))
    return 0


def _cmd_signs(args):
    from .curvature import find_sign_changes
    from .engine import EvalConfig
    from .serialization import write_csv, write_structured

    changes = find_sign_changes(_segment(args), EvalConfig(args.tolerance))
    if args.format == "structured-text":
        write_structured(args.out, {"sign_changes": changes}, "signs", _params(args))
    else:
        write_csv(args.out, ["bracket_lo", "bracket_hi", "refined_t"],
                  [(c.bracket_lo, c.bracket_hi, c.refined_t) for c in changes],
                  "signs", _params(args))
    return 0


def _load_target(args, seg):
    import numpy as np

    from .serialization import read_csv
    from .universality import SegmentTarget, zeta_target

    if args.target is None:
        return zeta_target(seg)
    cols, data = read_csv(args.target)
    if cols[:3] != ["t", "re", "im"]:
        raise ValueError("scan target CSV needs columns t,re,im")
    return SegmentTarget(seg, data[:, 0], data[:, 1] + 1j * data[:, 2],
                         label=os.path.basename(args.target))


def _cmd_scan(args):
    from .engine import EvalConfig
    from .serialization import write_structured
    from .universality import scan_shifts

    seg = _segment(args)
    target = _load_target(args, seg)
    report = scan_shifts(target, args.tau_min, args.tau_max, args.tau_step,
                         args.epsilon, EvalConfig(args.tolerance))
    write_structured(args.out, report, "scan", _params(args))
    return 0


def _cmd_joint_scan(args):
    import numpy as np

    from .engine import EvalConfig
    from .serialization import read_csv, write_structured
    from .universality import SegmentTarget, joint_re_im_scan

    seg = _segment(args)
    cols, data = read_csv(args.target)
    if cols[:3] != ["t", "f", "g"]:
        raise ValueError("joint-scan target CSV needs columns t,f,g")
    tf = SegmentTarget(seg, data[:, 0], data[:, 1].astype(complex), "f")
    tg = SegmentTarget(seg, data[:, 0], data[:, 2].astype(complex), "g")
    report = joint_re_im_scan(tf, tg, args.tau_min, args.tau_max, args.tau_step,
                              args.epsilon, EvalConfig(args.tolerance))
    write_structured(args.out, report, "joint-scan", _params(args))
    return 0


def _cmd_frenet(args):
    import numpy as np

    from .frenet import InvariantProfile, reconstruct_plane, reconstruct_space
    from .serialization import read_csv, write_csv

    cols, data = read_csv(args.target)
    if cols[0] != "t" or cols[1] != "kappa":
        raise ValueError("profile CSV needs columns t,kappa[,torsion]")
    torsion = data[:, 2] if len(cols) > 2 and cols[2] == "torsion" else None
    prof = InvariantProfile(data[:, 0], data[:, 1], torsion)
    t0 = args.t0 if args.t0 is not None else float(prof.ts[0])
    t1 = args.t1 if args.t1 is not None else float(prof.ts[-1])
    if torsion is None:
        curve = reconstruct_plane(prof, t0, t1)
        rows = zip(curve.ts, curve.points.real, curve.points.imag)
        write_csv(args.out, ["t", "x", "y"], list(rows), "frenet", _params(args))
    else:
        curve = reconstruct_space(prof, t0, t1)
        rows = zip(curve.ts, curve.points[:, 0], curve.points[:, 1], curve.points[:, 2])
        write_csv(args.out, ["t", "x", "y", "z"], list(rows), "frenet", _params(args))
    return 0


def _cmd_jensen(args):
    import numpy as np

    from .engine import EvalConfig
    from .jensen import jensen_derivative, jensen_mean
    from .serialization import write_csv, write_structured

    target = _parse_target_id(args.f)
    cfg = EvalConfig(args.tolerance)
    if args.sigma_grid:
        lo, hi, step = (float(x) for x in args.sigma_grid.split(":"))
        rows = []
        sig = lo
        while sig <= hi + 1e-12:
            m = jensen_mean(target, sig, args.gamma, args.delta, cfg)
            d = jensen_derivative(target, sig, args.gamma, args.delta, cfg)
            rows.append((sig, m.phi, d.phi_prime, max(m.quad_error, d.quad_error)))
            sig += step
        write_csv(args.out, ["sigma", "phi", "phi_prime", "quad_error"], rows,
                  "jensen", _params(args))
        return 0
    if args.sigma is None:
        raise ValueError("jensen needs --sigma or --sigma-grid")
    out = {}
    if args.what in ("mean", "both"):
        out["mean"] = jensen_mean(target, args.sigma, args.gamma, args.delta, cfg)
    if args.what in ("derivative", "both"):
        out["derivative"] = jensen_derivative(target, args.sigma, args.gamma,
                                              args.delta, cfg)
    write_structured(args.out, out, "jensen", _params(args))
    return 0


def _cmd_zeros(args):
    from .jensen import count_zeros_box
    from .serialization import write_structured

    target = _parse_target_id(args.f)
    zc = count_zeros_box(target, (args.sigma1, args.sigma2, args.t1, args.t2))
    write_structured(args.out, zc, "zeros", _params(args))
    return 0


def _cmd_freq(args):
    from .jensen import zero_frequency
    from .serialization import write_structured

    target = _parse_target_id(args.f)
    val = zero_frequency(target, args.sigma1, args.sigma2, args.T, args.method)
    write_structured(args.out, {"frequency": val, "method": args.method,
                                "T": args.T}, "freq", _params(args))
    return 0


def _cmd_probe(args):
    import numpy as np

    from .serialization import write_csv, write_structured

    if args.kind == "exponent":
        from .density import modulus_exponent_fit

        fit = modulus_exponent_fit(args.sigma, args.t_min, args.t_max)
        write_structured(args.out, fit, "probe", _params(args))
    elif args.kind == "arclength":
        from .density import arc_length

        seg = _segment(args)
        write_structured(args.out, {"arc_length": arc_length(seg)}, "probe",
                         _params(args))
    elif args.kind == "gridvisit":
        from .density import grid_visit_density

        seg = _segment(args)
        rep = grid_visit_density(seg, complex(args.center_re, args.center_im),
                                 args.radius, args.lattice_n)
        write_structured(args.out, rep, "probe", _params(args))
    else:
        raise ValueError(f"unknown probe kind {args.kind!r}")
    return 0


def _cmd_figure(args):
    import numpy as np

    from .engine import EvalConfig, zeta_jets_on_grid
    from .serialization import write_csv
    from .svgplot import write_svg

    os.makedirs(args.out_dir, exist_ok=True)
    params = _params(args)
    cfg = EvalConfig(1e-9)

    def trace(sigma, t0, t1, step, stem, derivquot=False):
        num = int(round((t1 - t0) / step)) + 1
        g = zeta_jets_on_grid(sigma, t0, step, num, cfg)
        zs = g.d2 / g.d1 if derivquot else g.value
        csv_path = os.path.join(args.out_dir, stem + ".csv")
        svg_path = os.path.join(args.out_dir, stem + ".svg")
        write_csv(csv_path, ["t", "re", "im"],
                  list(zip(g.ts, zs.real, zs.imag)), "figure", params)
        write_svg(svg_path, [(zs.real.tolist(), zs.imag.tolist())],
                  title=stem, command="figure", params=params)
        return csv_path, svg_path

    if args.which == 1:
        trace(0.5, 0.0, 40.0, 0.01, "figure1-trace")
        trace(0.5, 0.0, 40.0, 0.01, "figure1-logderiv", derivquot=True)
    elif args.which == 2:
        trace(0.75, 110.0, 120.0, 0.005, "figure2-trace")
        trace(0.75, 111.2, 111.7, 0.001, "figure2-zoom")
        trace(0.75, 111.2, 111.7, 0.001, "figure2-logderiv", derivquot=True)
    elif args.which == 3:
        from .frenet import InvariantProfile
        from .serialization import write_structured
        from .universality import curve_encoding_pipeline

        kappa = args.circle_kappa
        length = 2 * np.pi / kappa
        ts = np.linspace(0.0, length, 257)
        prof = InvariantProfile(ts, np.full(ts.size, kappa))
        report, best, dist = curve_encoding_pipeline(
            prof, 0.75, 0.0, 35.0 - length, args.tau_step, args.epsilon, cfg)
        num = int(round(35.0 / 0.01)) + 1
        g = zeta_jets_on_grid(0.75, 0.0, 0.01, num, cfg, want_derivs=False)
        write_csv(os.path.join(args.out_dir, "figure3-trace.csv"), ["t", "re", "im"],
                  list(zip(g.ts, g.value.real, g.value.imag)), "figure", params)
        write_csv(os.path.join(args.out_dir, "figure3-overlay.csv"), ["t", "re", "im"],
                  list(zip(best.ts, best.points.real, best.points.imag)),
                  "figure", params)
        write_structured(os.path.join(args.out_dir, "figure3-report.txt"),
                         {"report": report, "distance": dist,
                          "exploratory": not report.candidates},
                         "figure", params)
        write_svg(os.path.join(args.out_dir, "figure3.svg"),
                  [(g.value.real.tolist(), g.value.imag.tolist(), "#1f6fb2"),
                   (best.points.real.tolist(), best.points.imag.tolist(), "#e8b518")],
                  title="figure3", command="figure", params=params)
    else:
        raise ValueError("--which must be 1, 2 or 3")
    return 0


# ------------------------------------------------------------------ parser

def build_parser():
    p = argparse.ArgumentParser(prog="zetacurves", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def seg_flags(q, step_default=0.01):
        q.add_argument("--sigma", type=float, required=True)
        q.add_argument("--t-min", type=float, required=True)
        q.add_argument("--t-max", type=float, required=True)
        q.add_argument("--step", type=float, default=step_default)

    def common(q, default_format="csv"):
        q.add_argument("--out", required=True)
        q.add_argument("--format", choices=["csv", "structured-text", "svg"],
                       default=default_format)
        q.add_argument("--tolerance", type=float, default=1e-9,
                       help="target absolute error of the evaluation engine")

    q = sub.add_parser("trace", help="curve zeta(sigma+it) on a segment")
    seg_flags(q); common(q); q.set_defaults(func=_cmd_trace)

    q = sub.add_parser("curvature", help="signed-curvature profile")
    seg_flags(q); common(q); q.set_defaults(func=_cmd_curvature)

    q = sub.add_parser("signs", help="sign changes of Re zeta''/zeta'")
    seg_flags(q); common(q); q.set_defaults(func=_cmd_signs)

    q = sub.add_parser("scan", help="shift scan against a target curve")
    seg_flags(q, 0.05)
    q.add_argument("--tau-min", type=float, required=True)
    q.add_argument("--tau-max", type=float, required=True)
    q.add_argument("--tau-step", type=float, default=0.05)
    q.add_argument("--epsilon", type=float, required=True)
    q.add_argument("--target", help="CSV t,re,im; default: the segment's own zeta curve")
    common(q, "structured-text"); q.set_defaults(func=_cmd_scan)

    q = sub.add_parser("joint-scan", help="joint Re/Im shift scan")
    seg_flags(q, 0.05)
    q.add_argument("--tau-min", type=float, required=True)
    q.add_argument("--tau-max", type=float, required=True)
    q.add_argument("--tau-step", type=float, default=0.05)
    q.add_argument("--epsilon", type=float, required=True)
    q.add_argument("--target", required=True, help="CSV t,f,g")
    common(q, "structured-text"); q.set_defaults(func=_cmd_joint_scan)

    q = sub.add_parser("frenet", help="reconstruct a curve from invariants")
    q.add_argument("--target", required=True, help="CSV t,kappa[,torsion]")
    q.add_argument("--t0", type=float)
    q.add_argument("--t1", type=float)
    common(q); q.set_defaults(func=_cmd_frenet)

    q = sub.add_parser("jensen", help="window Jensen mean / derivative")
    q.add_argument("--f", required=True, help="zeta | zeta-prime | poly:n=a,...")
    q.add_argument("--sigma", type=float)
    q.add_argument("--sigma-grid", help="lo:hi:step sweep, emits CSV")
    q.add_argument("--gamma", type=float, default=0.0)
    q.add_argument("--delta", type=float, required=True)
    q.add_argument("--what", choices=["mean", "derivative", "both"], default="both")
    common(q, "structured-text"); q.set_defaults(func=_cmd_jensen)

    q = sub.add_parser("zeros", help="argument-principle zero count in a box")
    q.add_argument("--f", required=True)
    q.add_argument("--sigma1", type=float, required=True)
    q.add_argument("--sigma2", type=float, required=True)
    q.add_argument("--t1", type=float, required=True)
    q.add_argument("--t2", type=float, required=True)
    common(q, "structured-text"); q.set_defaults(func=_cmd_zeros)

    q = sub.add_parser("freq", help="zero frequency in a strip")
    q.add_argument("--f", required=True)
    q.add_argument("--sigma1", type=float, required=True)
    q.add_argument("--sigma2", type=float, required=True)
    q.add_argument("--T", type=float, required=True)
    q.add_argument("--method", choices=["count", "derivative_diff"], required=True)
    common(q, "structured-text"); q.set_defaults(func=_cmd_freq)

    q = sub.add_parser("probe", help="density probes")
    q.add_argument("--kind", choices=["exponent", "arclength", "gridvisit"],
                   required=True)
    q.add_argument("--sigma", type=float, required=True)
    q.add_argument("--t-min", type=float, required=True)
    q.add_argument("--t-max", type=float, required=True)
    q.add_argument("--step", type=float, default=0.001)
    q.add_argument("--center-re", type=float, default=1.0)
    q.add_argument("--center-im", type=float, default=0.0)
    q.add_argument("--radius", type=float, default=0.5)
    q.add_argument("--lattice-n", type=int, default=10)
    common(q, "structured-text"); q.set_defaults(func=_cmd_probe)

    q = sub.add_parser("figure", help="reproduce the reference figures")
    q.add_argument("--which", type=int, required=True, choices=[1, 2, 3])
    q.add_argument("--out-dir", required=True)
    q.add_argument("--circle-kappa", type=float, default=8.0)
    q.add_argument("--epsilon", type=float, default=0.25)
    q.add_argument("--tau-step", type=float, default=0.02)
    q.set_defaults(func=_cmd_figure)

    return p


def main(argv=None):
    _apply_thread_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    from .errors import DomainError, PoleAt1, ZetacurvesError

    try:
        return args.func(args)
    except (ValueError, ZetacurvesError) as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(record), file=sys.stderr)
        validation = isinstance(exc, (ValueError, DomainError, PoleAt1))
        return 2 if validation else 1


if __name__ == "__main__":
    sys.exit(main())

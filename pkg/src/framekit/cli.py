"""Command-line surface.

Subcommands: gen, analyze, transform, perturb, ubc, prune, repro.  Every
command prints a single JSON report to stdout with the shape

    {"command":, "inputs":, "results":, "tolerances":, "version":}

and floating-point values rendered with 17 significant digits so reports
round-trip and diff cleanly.  Exit codes: 0 on success, 2 on usage
errors (argparse), 3 when a computation rejects its inputs, in which
case the report carries an "error" entry and the message is echoed to
stderr.  Randomised commands take --seed; the FRAMEKIT_SEED environment
variable overrides the default seed 0.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, blocks, frames, perturb, riesz, transforms
from .linalg import Tolerance, rank
from .signscan import available_backends

DEFAULT_MAX_ENUM = 22


# ---------------------------------------------------------------------------
# report rendering: JSON with 17-significant-digit floats


def _render(value, parts: list[str], indent: int) -> None:
    pad = " " * indent
    if isinstance(value, dict):
        if not value:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            parts.append(pad + "  " + json.dumps(str(key)) + ": ")
            _render(item, parts, indent + 2)
            parts.append(",\n" if i < len(value) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            parts.append("[]")
            return
        parts.append("[")
        for i, item in enumerate(items):
            _render(item, parts, indent)
            if i < len(items) - 1:
                parts.append(", ")
        parts.append("]")
    elif isinstance(value, str):
        parts.append(json.dumps(value))
    elif value is None:
        parts.append("null")
    elif isinstance(value, (bool, np.bool_)):
        parts.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        parts.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        x = float(value)
        parts.append(json.dumps(repr(x)) if not math.isfinite(x) else format(x, ".17g"))
    else:
        raise TypeError(f"cannot render {type(value)!r} into a report")


def render_report(report: dict) -> str:
    parts: list[str] = []
    _render(report, parts, 0)
    return "".join(parts)


def make_report(command: str, inputs: dict, results: dict, tol: Tolerance) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "tolerances": {"rank_rel": tol.rank_rel, "eq_abs": tol.eq_abs},
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# shared helpers


def _tol_from(args) -> Tolerance:
    return Tolerance(rank_rel=args.rank_rel, eq_abs=args.eq_abs)


def _resolve_seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("FRAMEKIT_SEED")
    return int(env) if env else 0


def _load_frame(path) -> tuple[frames.Frame, int | None]:
    if str(path).endswith(".csv"):
        return frames.load_frame_csv(path), None
    return frames.load_frame(path)


def _save_frame(path, frame: frames.Frame, blocks_meta: int | None) -> None:
    if str(path).endswith(".csv"):
        frames.save_frame_csv(path, frame)
    else:
        frames.save_frame(path, frame, blocks_meta)


def _vector_payload(v: np.ndarray):
    if np.iscomplexobj(v):
        return [[float(z.real), float(z.imag)] for z in v]
    return [float(x) for x in v]


def _bounds_payload(b: frames.FrameBounds) -> dict:
    return {
        "lower": b.lower,
        "upper": b.upper,
        "spans_whole_space": b.spans_whole_space,
    }


def _verdict_payload(v: riesz.RieszVerdict) -> dict:
    return {
        "is_riesz_sequence": v.is_riesz_sequence,
        "is_riesz_basis_for_space": v.is_riesz_basis_for_space,
        "lower": v.lower,
        "upper": v.upper,
    }


def _certificate_payload(
    cert: perturb.PerturbationCertificate, measured: frames.FrameBounds
) -> dict:
    return {
        "lambda": cert.lam,
        "mu": cert.mu,
        "admissible": cert.admissible,
        "psd_passed": cert.psd_passed,
        "predicted": (
            [cert.predicted_lower, cert.predicted_upper]
            if cert.predicted_lower is not None
            else None
        ),
        "measured": [measured.lower, measured.upper],
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args) -> dict:
    tol = _tol_from(args)
    kind = args.kind
    blocks_meta = None
    if kind == "block":
        if args.blocks is None:
            raise ValueError("gen block requires --blocks")
        indexed = blocks.block_frame(args.blocks)
        frame, blocks_meta = indexed.frame, args.blocks
        params = {"blocks": args.blocks}
    elif kind == "perturbed":
        if args.blocks is None or args.eps is None:
            raise ValueError("gen perturbed requires --blocks and --eps")
        indexed = blocks.perturbed_block_frame(args.blocks, args.eps)
        frame, blocks_meta = indexed.frame, args.blocks
        params = {"blocks": args.blocks, "eps": args.eps}
    elif kind == "lemma5":
        if args.n is None:
            raise ValueError("gen lemma5 requires --n")
        frame = blocks.lemma5_block(args.n)
        params = {"n": args.n}
    elif kind == "onb":
        if args.dim is None:
            raise ValueError("gen onb requires --dim")
        if args.dim < 1:
            raise ValueError("--dim must be at least 1")
        frame = frames.Frame(np.eye(args.dim))
        params = {"dim": args.dim}
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown generator {kind!r}")
    _save_frame(args.out, frame, blocks_meta)
    results = {
        "path": str(args.out),
        "dim": frame.dim,
        "size": frame.size,
        "blocks": blocks_meta,
    }
    return make_report("gen", {"kind": kind, **params, "out": str(args.out)}, results, tol)


def cmd_analyze(args) -> dict:
    tol = _tol_from(args)
    frame, blocks_meta = _load_frame(args.frame)
    bounds = frames.frame_bounds(frame, tol)
    tight = frames.is_tight(frame, tol)
    verdict = riesz.riesz_verdict(frame, tol)
    report = riesz.excess(frame, tol)
    results = {
        "dim": frame.dim,
        "size": frame.size,
        "field": frame.field,
        "blocks": blocks_meta,
        "rank": rank(frame.matrix, tol),
        "bounds": _bounds_payload(bounds),
        "tight": {"is_tight": tight.is_tight, "constant": tight.constant},
        "riesz": _verdict_payload(verdict),
        "excess": report.excess,
        "kernel_dim": report.kernel_dim,
        "riesz_subset_indices": list(report.riesz_subset_indices),
        "certified_lower": report.certified_lower,
    }
    return make_report("analyze", {"frame": str(args.frame)}, results, tol)


def cmd_transform(args) -> dict:
    tol = _tol_from(args)
    frame, _ = _load_frame(args.frame)
    if args.recover is not None:
        if args.matrix_out is None:
            raise ValueError("transform --recover requires --matrix-out")
        target, _ = _load_frame(args.recover)
        u = transforms.recover_transform(frame, target, tol)
        transforms.save_matrix(args.matrix_out, u)
        residual = float(np.linalg.norm(target.matrix - frame.matrix @ u.T))
        results = {
            "matrix_path": str(args.matrix_out),
            "rows": int(u.shape[0]),
            "cols": int(u.shape[1]),
            "fit_residual": residual,
            "note": "least-squares convenience; exact only when the target lies in the source span",
        }
        inputs = {"frame": str(args.frame), "recover": str(args.recover)}
        return make_report("transform", inputs, results, tol)

    if args.matrix is None or args.out is None:
        raise ValueError("transform requires --matrix and --out (or --recover)")
    u = transforms.load_matrix(args.matrix)
    transformed = transforms.transform(frame, u)
    gamma = transforms.frame_criterion_gamma(frame, u, tol)
    criterion = transforms.frame_criterion_verdict(frame, u, tol)
    direct_span = transforms.transform_spans_source(frame, u, tol)
    kernel_check = transforms.kernel_dimension_check(frame, u, tol)
    surjective = transforms.surjectivity_riesz_check(frame, u, tol)
    out_verdict = riesz.riesz_verdict(transformed, tol)
    _save_frame(args.out, transformed, None)
    results = {
        "out": str(args.out),
        "gamma": gamma,
        "is_frame_for_source_span": criterion,
        "direct_span_check": direct_span,
        "criterion_agrees": criterion == direct_span,
        "kernel_identity": {
            "lhs": kernel_check.lhs,
            "rhs_intersection": kernel_check.rhs_intersection,
            "rhs_corange": kernel_check.rhs_corange,
            "agree": kernel_check.agree,
        },
        "surjectivity_riesz": surjective,
        "transformed": {
            "dim": transformed.dim,
            "size": transformed.size,
            "bounds": _bounds_payload(frames.frame_bounds(transformed, tol)),
            "riesz": _verdict_payload(out_verdict),
        },
    }
    inputs = {"frame": str(args.frame), "matrix": str(args.matrix), "out": str(args.out)}
    return make_report("transform", inputs, results, tol)


def cmd_perturb(args) -> dict:
    tol = _tol_from(args)
    f, blocks_f = _load_frame(args.frame)
    g, blocks_g = _load_frame(args.other)
    pair = perturb.perturbation_operator(f, g)
    cert = perturb.check_certificate(pair, args.lam, args.mu, tol)
    comparison = perturb.excess_compare(f, g, tol)
    results = {
        "operator_norm": pair.operator_norm,
        "certificate": _certificate_payload(cert, frames.frame_bounds(g, tol)),
        "excess": {
            "f": comparison.excess_f.excess,
            "g": comparison.excess_g.excess,
            "equal": comparison.equal,
        },
    }
    if blocks_f is not None and blocks_f == blocks_g:
        profile = perturb.tail_profile(pair, blocks.BlockStructure(blocks_f))
        results["tail_profile"] = {
            "cut_points": list(profile.cut_points),
            "tail_norms": list(profile.tail_norms),
        }
    if args.violation_trials > 0:
        witness = perturb.violation_search(
            pair, args.lam, args.mu, trials=args.violation_trials,
            seed=_resolve_seed(args), tol=tol,
        )
        results["violation_witness"] = None if witness is None else _vector_payload(witness)
    inputs = {
        "frame": str(args.frame),
        "other": str(args.other),
        "lambda": args.lam,
        "mu": args.mu,
    }
    return make_report("perturb", inputs, results, tol)


def cmd_ubc(args) -> dict:
    tol = _tol_from(args)
    frame, _ = _load_frame(args.frame)
    mode = args.mode
    if mode == "auto":
        mode = "exact" if frame.size <= args.max_enum else "estimate"
    inputs = {"frame": str(args.frame), "mode": mode}
    try:
        if mode == "exact":
            value = riesz.ubc_exact(frame, tol, max_enum=args.max_enum)
            results = {"mode": "exact", "value": value, "backends": list(available_backends())}
        else:
            seed = _resolve_seed(args)
            value = riesz.ubc_lower_estimate(frame, trials=args.trials, seed=seed, tol=tol)
            results = {
                "mode": "estimate",
                "value": value,
                "trials": args.trials,
                "seed": seed,
                "note": "lower bound only",
            }
    except riesz.DependentFamilyError as exc:
        results = {
            "mode": mode,
            "unbounded": True,
            "kernel_witness": _vector_payload(exc.witness),
        }
        return make_report("ubc", inputs, results, tol)
    results["unbounded"] = False
    return make_report("ubc", inputs, results, tol)


def cmd_prune(args) -> dict:
    tol = _tol_from(args)
    frame, _ = _load_frame(args.frame)
    bounds = frames.frame_bounds(frame, tol)
    inputs = {"frame": str(args.frame), "eps": args.eps}
    try:
        pruned = riesz.prune_to_lower_bound(frame, args.eps, tol)
    except riesz.PruneInfeasibleError as exc:
        results = {
            "feasible": False,
            "best_epsilon": exc.best_epsilon,
            "lower_bound": bounds.lower,
        }
        return make_report("prune", inputs, results, tol)
    target = bounds.lower - args.eps
    results = {
        "feasible": True,
        "lower_bound": bounds.lower,
        "target_lower": target,
        "removed": list(pruned.removed),
        "remaining": list(pruned.remaining),
        "remainder": _verdict_payload(pruned.remainder_verdict),
        "certified": pruned.remainder_verdict.lower >= target - tol.eq_abs,
    }
    return make_report("prune", inputs, results, tol)


# ---------------------------------------------------------------------------
# repro experiments


def _repro_lemma6(args, tol: Tolerance) -> dict:
    max_n = args.max_n
    rows = []
    all_pass = True
    for n in range(2, max_n + 1):
        frame = blocks.lemma5_block(n)
        keep = list(range(n - 1)) + [n]
        subset = frames.Frame(frame.matrix[:, keep])
        bound = math.sqrt(n - 1) - 1.0
        if subset.size <= args.max_enum:
            value = riesz.ubc_exact(subset, tol, max_enum=args.max_enum)
            mode = "exact"
        else:
            value = riesz.ubc_lower_estimate(subset, trials=0, seed=0, tol=tol)
            mode = "estimate"
        ok = value >= bound - tol.eq_abs
        all_pass = all_pass and ok
        rows.append({"n": n, "ubc": value, "growth_bound": bound, "mode": mode, "pass": ok})
    return {"columns": ["n", "ubc", "growth_bound", "mode", "pass"],
            "rows": rows, "all_rows_pass": all_pass}


def _repro_bounds(args, tol: Tolerance) -> dict:
    if args.eps is None:
        raise ValueError("repro bounds requires --eps")
    indexed = blocks.perturbed_block_frame(args.blocks, args.eps)
    measured = frames.frame_bounds(indexed.frame, tol)
    lo, hi = (1.0 - args.eps) ** 2, (1.0 + args.eps) ** 2
    return {
        "blocks": args.blocks,
        "eps": args.eps,
        "measured": [measured.lower, measured.upper],
        "guaranteed": [lo, hi],
        "inside": bool(lo - tol.eq_abs <= measured.lower and measured.upper <= hi + tol.eq_abs),
    }


def _random_planted(rng: np.random.Generator, rows: int, cols: int, rk: int, cplx: bool):
    if rk == 0:
        return np.zeros((rows, cols), dtype=complex if cplx else float)
    a = rng.standard_normal((rows, rk))
    b = rng.standard_normal((rk, cols))
    if cplx:
        a = a + 1j * rng.standard_normal((rows, rk))
        b = b + 1j * rng.standard_normal((rk, cols))
    return a @ b


def _repro_theorem2(args, tol: Tolerance) -> dict:
    rng = np.random.default_rng(_resolve_seed(args))
    rows = []
    agree_count = 0
    for trial in range(args.trials):
        d = int(rng.integers(1, 9))
        m = int(rng.integers(1, 9))
        mp = int(rng.integers(1, 9))
        cplx = bool(rng.integers(0, 2))
        t = _random_planted(rng, d, m, int(rng.integers(0, min(d, m) + 1)), cplx)
        u = _random_planted(rng, mp, m, int(rng.integers(0, min(mp, m) + 1)), cplx)
        if not np.any(t):
            t[0, 0] = 1.0  # frames must be nonzero families
        check = transforms.kernel_dimension_check(frames.Frame(t), u, tol)
        agree_count += check.agree
        rows.append({
            "trial": trial,
            "dim": d, "size": m, "rows_u": mp,
            "complex": cplx,
            "lhs": check.lhs,
            "rhs_intersection": check.rhs_intersection,
            "rhs_corange": check.rhs_corange,
            "agree": check.agree,
        })
    return {
        "trials": args.trials,
        "agree_count": agree_count,
        "all_agree": agree_count == args.trials,
        "rows": rows,
    }


def _repro_counterexample(args, tol: Tolerance) -> dict:
    if args.eps is None:
        raise ValueError("repro counterexample requires --eps")
    rep = perturb.counterexample_report(args.blocks, args.eps, tol)
    g = blocks.perturbed_block_frame(args.blocks, args.eps)
    fwd = _certificate_payload(rep.forward_certificate, frames.frame_bounds(g.frame, tol))
    rev = _certificate_payload(
        rep.reverse_certificate,
        frames.frame_bounds(blocks.block_frame(args.blocks).frame, tol),
    )
    return {
        "blocks": rep.num_blocks,
        "eps": rep.eps,
        "forward_certificate": fwd,
        "reverse_certificate": rev,
        "certificates_pass": rep.certificates_pass,
        "subfamily": _verdict_payload(rep.subfamily_verdict),
        "subfamily_is_riesz_basis": rep.subfamily_is_riesz_basis,
        "subfamily_bound_target": rep.subfamily_bound_target,
        "subfamily_bound_ok": rep.subfamily_verdict.lower >= rep.subfamily_bound_target - tol.eq_abs,
        "block_table": {
            "columns": ["n", "best_spanning_subset_lower", "ubc_growth_bound"],
            "rows": [
                {"n": n, "best_spanning_subset_lower": lo, "ubc_growth_bound": gb}
                for n, lo, gb in zip(rep.block_ns, rep.best_subset_lower, rep.ubc_growth_bound)
            ],
        },
        "strictly_decreasing": rep.strictly_decreasing,
    }


def cmd_repro(args) -> dict:
    tol = _tol_from(args)
    experiment = args.experiment
    runners = {
        "lemma6": _repro_lemma6,
        "bounds": _repro_bounds,
        "theorem2": _repro_theorem2,
        "counterexample": _repro_counterexample,
    }
    results = runners[experiment](args, tol)
    inputs = {"experiment": experiment}
    for key in ("max_n", "blocks", "eps", "trials"):
        value = getattr(args, key, None)
        if value is not None:
            inputs[key] = value
    if experiment == "theorem2":
        inputs["seed"] = _resolve_seed(args)
    return make_report("repro", inputs, results, tol)


# ---------------------------------------------------------------------------
# parser


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank-rel", type=float, default=Tolerance().rank_rel,
                   help="relative singular-value cutoff for rank decisions")
    p.add_argument("--eq-abs", type=float, default=Tolerance().eq_abs,
                   help="absolute threshold for equality comparisons")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framekit",
        description="finite-dimensional frame analysis with verifiable certificates",
    )
    parser.add_argument("--version", action="version", version=f"framekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a frame file")
    p.add_argument("kind", choices=["block", "perturbed", "lemma5", "onb"])
    p.add_argument("--blocks", type=int, help="number of blocks (block, perturbed)")
    p.add_argument("--eps", type=float, help="perturbation size (perturbed)")
    p.add_argument("--n", type=int, help="block dimension (lemma5)")
    p.add_argument("--dim", type=int, help="space dimension (onb)")
    p.add_argument("--out", required=True, help="output frame file (.json or .csv)")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="bounds, tightness, excess, Riesz verdicts")
    p.add_argument("frame", help="frame file (.json or .csv)")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("transform", help="apply a coefficient-space operator")
    p.add_argument("frame", help="source frame file")
    p.add_argument("--matrix", help="transform matrix file (.json or .csv)")
    p.add_argument("--out", help="output frame file")
    p.add_argument("--recover", help="target frame file for least-squares matrix recovery")
    p.add_argument("--matrix-out", help="output matrix file for --recover")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("perturb", help="perturbation certificate between two frame files")
    p.add_argument("frame", help="reference frame file")
    p.add_argument("other", help="perturbed frame file")
    p.add_argument("--lam", type=float, required=True, help="lambda coefficient")
    p.add_argument("--mu", type=float, required=True, help="mu coefficient")
    p.add_argument("--violation-trials", type=int, default=0,
                   help="random coefficient vectors to try as refutation witnesses")
    p.add_argument("--seed", type=int, help="seed for the witness search")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("ubc", help="unconditional basis constant")
    p.add_argument("frame", help="frame file")
    p.add_argument("--mode", choices=["auto", "exact", "estimate"], default="auto")
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM,
                   help="largest family size for exact enumeration")
    p.add_argument("--trials", type=int, default=64, help="random patterns for estimate mode")
    p.add_argument("--seed", type=int, help="seed for estimate mode")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_ubc)

    p = sub.add_parser("prune", help="delete elements to certify lower bound A - eps")
    p.add_argument("frame", help="frame file")
    p.add_argument("--eps", type=float, required=True)
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("repro", help="reproduce a quantitative experiment")
    p.add_argument("experiment", choices=["lemma6", "bounds", "theorem2", "counterexample"])
    p.add_argument("--max-n", type=int, default=14, help="largest block size (lemma6)")
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM)
    p.add_argument("--blocks", type=int, default=8, help="blocks (bounds, counterexample)")
    p.add_argument("--eps", type=float, help="perturbation size (bounds, counterexample)")
    p.add_argument("--trials", type=int, default=200, help="instances (theorem2)")
    p.add_argument("--seed", type=int, help="seed (theorem2)")
    _add_tolerance_flags(p)
    p.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    tol = _tol_from(args)
    try:
        report = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"framekit {args.command}: {exc}", file=sys.stderr)
        error_report = {
            "command": args.command,
            "inputs": {},
            "error": str(exc),
            "tolerances": {"rank_rel": tol.rank_rel, "eq_abs": tol.eq_abs},
            "version": __version__,
        }
        print(render_report(error_report))
        return 3
    print(render_report(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())

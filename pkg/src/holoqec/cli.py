"""Batch front-end: fixtures in, machine-readable JSON verification reports out.

Verbs: distance, correctable, transversal, toric, report-merge.  A run is
fully determined by its flags and --seed; reports are byte-identical across
repeats except for the timestamp field.  Environment variables HOLOQEC_SEED,
HOLOQEC_TOL, HOLOQEC_THREADS, HOLOQEC_OUT mirror the corresponding flags.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import (
    PauliString,
    code_from_json,
    correction_condition,
    distance,
    exponential_path,
    fl_lie_algebra,
    check_projectively_trivial_action,
    five_qubit_code,
    flatness_probe_transversal,
    pauli_generator_path,
    squdit_errors,
    subspace_distance,
    transversal_holonomy,
)
from .errors import GeoLattice, geolocal_errors
from .fivequbit import R3, STABILIZER_LABELS
from . import toric as tt

SCHEMA_VERSION = 1
ENV_PREFIX = "HOLOQEC_"


def _env_default(name: str, cast, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    if raw is None:
        return fallback
    return cast(raw)


def _json_default(obj):
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.complexfloating, complex)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _emit(report: dict, out: str | None) -> None:
    report = dict(report)
    report["schema_version"] = SCHEMA_VERSION
    report["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _summary(line: str) -> None:
    print(line)


def _complex_matrix(m: np.ndarray) -> list:
    return [[[z.real, z.imag] for z in row] for row in m]


# -- code and error-set loading ----------------------------------------------


def _load_code(spec: str):
    if spec == "fivequbit":
        return five_qubit_code(), None
    if spec.startswith("toric:"):
        params = dict(kv.split("=") for kv in spec[len("toric:"):].split(","))
        L = int(params["L"])
        s = int(params.get("s", 0))
        lat = tt.TorusLattice(L)
        primal = tuple()
        dual = tuple()
        tc = tt.build_code(lat, tt.DefectConfig(primal, dual), separation=s)
        return tc.code, tc
    path = Path(spec)
    if path.exists():
        return code_from_json(path.read_text()), None
    raise SystemExit(f"unknown code spec {spec!r}")


def _load_errors(spec: str, code, toric_code):
    if spec.startswith("squdit:"):
        params = dict(kv.split("=") for kv in spec[len("squdit:"):].split(","))
        return squdit_errors(code.n, int(params["s"]))
    if spec.startswith("geolocal:"):
        if toric_code is None:
            raise SystemExit("geolocal error sets need a toric:L=... code")
        params = dict(kv.split("=") for kv in spec[len("geolocal:"):].split(","))
        lat = GeoLattice.toric_edges(toric_code.lat.L)
        return geolocal_errors(lat, int(params["s"]), int(params["t"]))
    raise SystemExit(f"unknown error-set spec {spec!r}")


# -- subcommands ---------------------------------------------------------------


def cmd_distance(args) -> int:
    if args.max_weight < 1:
        print("--max-weight must be at least 1", file=sys.stderr)
        return 2
    code, _ = _load_code(args.code)
    res = distance(code, args.max_weight, tol=args.tol, threads=args.threads)
    found = res.delta is not None
    results = {
        "delta": res.delta,
        "lower_bound": res.lower_bound,
        "witness": res.witness.to_label() if res.witness else None,
    }
    ok = True
    if args.expect is not None:
        ok = found and res.delta == args.expect
    _summary(
        f"distance: {res.delta if found else f'> {args.max_weight}'}"
        + (f" (witness {results['witness']})" if found else "")
        + (f" expect {args.expect}: {'ok' if ok else 'MISMATCH'}" if args.expect is not None else "")
    )
    _emit(
        {
            "command": "distance",
            # --threads is an execution detail: reports must not vary with it
            "parameters": {
                "code": args.code,
                "max_weight": args.max_weight,
                "tol": args.tol,
            },
            "results": results,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


def cmd_correctable(args) -> int:
    code, toric_code = _load_code(args.code)
    es = _load_errors(args.errors, code, toric_code)
    rep = correction_condition(code, es, tol=args.tol)
    results = {
        "correctable": rep.correctable,
        "n_errors": len(es),
        "witness": None,
        "max_deviation": rep.max_deviation,
    }
    if rep.witness is not None:
        a, b = rep.witness
        results["witness"] = {
            "pair": [a, b],
            "labels": [es[a].to_label(), es[b].to_label()],
            "deviation": rep.max_deviation,
        }
    ok = True
    if args.expect is not None:
        ok = rep.correctable == (args.expect == "true")
    _summary(
        f"correctable: {rep.correctable} ({len(es)} errors)"
        + (f", witness {results['witness']['labels']}" if rep.witness else "")
    )
    _emit(
        {
            "command": "correctable",
            "parameters": {"code": args.code, "errors": args.errors, "tol": args.tol},
            "results": results,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


_GATE_BUILDERS = {
    "X": lambda: pauli_generator_path(PauliString.from_label("XXXXX")),
    "Z": lambda: pauli_generator_path(PauliString.from_label("ZZZZZ")),
}


def _transversal_path_for_gate(gate: str):
    import scipy.linalg

    if gate in _GATE_BUILDERS:
        return _GATE_BUILDERS[gate]()
    if gate == "R3":
        h = scipy.linalg.logm(R3)
        h = 0.5 * (h - h.conj().T)  # exact anti-Hermitian part against logm noise
        return exponential_path((2,) * 5, [h] * 5)
    if gate.startswith("stabilizer-"):
        k = int(gate.split("-")[1])
        if not 1 <= k <= 4:
            raise SystemExit("stabilizer index must be 1..4")
        return pauli_generator_path(PauliString.from_label(STABILIZER_LABELS[k - 1]))
    raise SystemExit(f"unknown gate {gate!r}")


def cmd_transversal(args) -> int:
    code = five_qubit_code()
    rng = np.random.default_rng(args.seed)
    ok = True
    if args.subcommand == "lie-dim":
        basis = fl_lie_algebra(code)
        results = {"dimension": basis.dimension}
        if args.expect is not None:
            ok = basis.dimension == args.expect
        _summary(f"logical tangent algebra dimension: {basis.dimension}")
    elif args.subcommand == "trivial-action":
        basis = fl_lie_algebra(code)
        rep = check_projectively_trivial_action(
            code, basis, args.samples, tol=args.tol, rng=rng
        )
        ok = rep.ok
        results = {
            "samples": rep.samples,
            "max_residual": rep.max_residual,
            "tol": rep.tol,
        }
        _summary(
            f"trivial action: max residual {rep.max_residual:.3e} over "
            f"{rep.samples} samples ({'ok' if ok else 'FAIL'})"
        )
    elif args.subcommand == "holonomy":
        path = _transversal_path_for_gate(args.gate)
        res = transversal_holonomy(code, path, tol=args.tol)
        results = {
            "gate": args.gate,
            "classification": res.classification,
            "phase": [res.phase.real, res.phase.imag],
            "logical": _complex_matrix(res.logical),
            "residual": res.residual,
        }
        ok = res.residual < args.tol
        _summary(f"holonomy {args.gate}: {res.classification}, residual {res.residual:.2e}")
    elif args.subcommand == "flatness":
        endpoints = [PauliString.from_label(s) for s in STABILIZER_LABELS] + [
            PauliString.from_label("XXXXX"),
            PauliString.from_label("ZZZZZ"),
        ]
        rep = flatness_probe_transversal(code, endpoints, args.trials, tol=args.tol, rng=rng)
        ok = rep.ok
        results = {
            "trials": rep.trials,
            "max_phase_adjusted_deviation": rep.max_phase_adjusted_deviation,
            "tol": rep.tol,
        }
        _summary(
            f"flatness: max deviation {rep.max_phase_adjusted_deviation:.3e} over "
            f"{rep.trials} trials ({'ok' if ok else 'FAIL'})"
        )
    else:
        raise SystemExit(f"unknown transversal subcommand {args.subcommand!r}")
    _emit(
        {
            "command": f"transversal {args.subcommand}",
            "parameters": {
                "seed": args.seed,
                "tol": args.tol,
                "samples": args.samples,
                "trials": args.trials,
                "gate": args.gate,
            },
            "results": results,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


def _load_toric_config(path: str):
    doc = json.loads(Path(path).read_text())
    lat = tt.TorusLattice(int(doc["L"]))
    cfg = tt.DefectConfig(
        tuple(tuple(v) for v in doc.get("primal", [])),
        tuple(tuple(f) for f in doc.get("dual", [])),
    )
    s = int(doc.get("s", tt.DEFAULT_SEPARATION))
    word = []
    for item in doc.get("braid", []):
        op, a = item["op"], item["args"]
        ref = lambda r: (r[0], int(r[1]))
        if op == "TorusLoop":
            word.append(tt.TorusLoop(ref(a[0]), a[1]))
        elif op == "FullBraid":
            word.append(tt.FullBraid(ref(a[0]), ref(a[1])))
        elif op == "HalfBraid":
            word.append(tt.HalfBraid(ref(a[0]), ref(a[1])))
        elif op == "ContractibleLoop":
            word.append(tt.ContractibleLoop(ref(a[0]), int(a[1])))
        else:
            raise SystemExit(f"unknown braid op {op!r}")
    return lat, cfg, s, word


def _random_braid_words(tc, rng, count):
    """Legal single-generator candidates, sampled into short words."""
    candidates = []
    for kind, sites in (("primal", tc.cfg.primal), ("dual", tc.cfg.dual)):
        for i in range(len(sites)):
            candidates.append(tt.TorusLoop((kind, i), "horizontal"))
            candidates.append(tt.TorusLoop((kind, i), "vertical"))
            candidates.append(tt.ContractibleLoop((kind, i), 1))
        for i in range(len(sites)):
            for j in range(i + 1, len(sites)):
                candidates.append(tt.HalfBraid((kind, i), (kind, j)))
    for i in range(len(tc.cfg.primal)):
        for j in range(len(tc.cfg.dual)):
            candidates.append(tt.FullBraid(("primal", i), ("dual", j)))
            candidates.append(tt.FullBraid(("dual", j), ("primal", i)))
    words = []
    guard = 0
    while len(words) < count and guard < 50 * count:
        guard += 1
        length = int(rng.integers(1, 3))
        word = [candidates[int(rng.integers(0, len(candidates)))] for _ in range(length)]
        try:
            tt.compile_braid(tc.lat, tc.cfg, word, tc.separation, 0)
            tt.compile_braid(tc.lat, tc.cfg, word, tc.separation, 1)
        except tt.RoutingError:
            continue
        words.append(word)
    if len(words) < count:
        raise SystemExit("could not sample enough routable braid words")
    return words


def cmd_toric(args) -> int:
    ok = True
    if args.subcommand == "face-checks":
        lat = tt.TorusLattice(args.L)
        results = _face_checks(lat, tol=args.tol)
        ok = results["ok"]
        _summary(
            f"face-checks L={args.L}: winding {results['max_winding']:.2e}, "
            f"coeffs {results['max_coeff_deviation']:.2e}, "
            f"frames {results['max_frame_deviation'] if results['max_frame_deviation'] is not None else 'n/a'}"
            f" ({'ok' if ok else 'FAIL'})"
        )
        _emit(
            {
                "command": "toric face-checks",
                "parameters": {"L": args.L, "tol": args.tol},
                "results": results,
                "ok": ok,
            },
            args.out,
        )
        return 0 if ok else 1

    lat, cfg, s, word = _load_toric_config(args.config)
    tc = tt.build_code(lat, cfg, separation=s)
    if args.subcommand == "build":
        results = {
            "L": lat.L,
            "K": tc.code.K,
            "N": tc.code.N,
            "n_primal": cfg.n_primal,
            "n_dual": cfg.n_dual,
            "separation": s,
        }
        ok = tc.code.K == 4
        _summary(f"build L={lat.L} defects {cfg.n_primal}+{cfg.n_dual}: K = {tc.code.K}")
    elif args.subcommand == "braid":
        res, transcript = tt.monodromy(tc, word, variant=0, tol=args.tol)
        results = {
            "classification": res.classification,
            "phase": [res.phase.real, res.phase.imag],
            "logical": _complex_matrix(res.logical),
            "residual": res.residual,
            "transcript": transcript,
        }
        ok = res.residual < args.tol
        _summary(
            f"braid: {res.classification}, phase {res.phase:.6f}, residual {res.residual:.2e}"
        )
    elif args.subcommand == "flatness":
        rng = np.random.default_rng(args.seed)
        words = _random_braid_words(tc, rng, args.trials)
        worst = 0.0
        for w in words:
            devs = []
            ev0, _ = tt.compile_braid(lat, cfg, w, s, 0)
            ev1, _ = tt.compile_braid(lat, cfg, w, s, 1)
            f0, _ = tt.transport_along(tc, tt.ConfigPath.from_evolution(ev0))
            f1, _ = tt.transport_along(tc, tt.ConfigPath.from_evolution(ev1))
            m0 = tc.frame.data.conj().T @ f0.data
            m1 = tc.frame.data.conj().T @ f1.data
            t = np.trace(m1.conj().T @ m0)
            xi = t / abs(t) if abs(t) > 1e-12 else 1.0
            worst = max(worst, float(np.max(np.abs(f0.data - xi * f1.data))))
        ok = worst < args.tol
        results = {"trials": len(words), "max_deviation": worst, "tol": args.tol}
        _summary(
            f"toric flatness: max deviation {worst:.3e} over {len(words)} braid words "
            f"({'ok' if ok else 'FAIL'})"
        )
    else:
        raise SystemExit(f"unknown toric subcommand {args.subcommand!r}")
    _emit(
        {
            "command": f"toric {args.subcommand}",
            "parameters": {
                "config": args.config,
                "seed": args.seed,
                "tol": args.tol,
                "trials": args.trials,
            },
            "results": results,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


def _face_checks(lat: tt.TorusLattice, tol: float) -> dict:
    """Criterion-style face diagnostics: winding, coefficients, frame checks."""
    from .pauli import alpha, beta

    max_winding = max(
        abs(tt.det_winding_check(lat, f)) for f in lat.faces()
    )
    worst_coeff = 0.0
    for k in range(21):
        u = k / 20
        a, c, d = tt.lower_coeffs(u, 0.0)  # edge CD
        worst_coeff = max(worst_coeff, abs(a), abs(c - alpha(u)), abs(d - beta(u)))
        a, c, d = tt.lower_coeffs(0.0, u)  # edge CA
        worst_coeff = max(worst_coeff, abs(a - beta(u)), abs(c - alpha(u)), abs(d))
        a, b, d = tt.upper_coeffs(u, 1.0)  # edge AB
        worst_coeff = max(worst_coeff, abs(a - alpha(u)), abs(b - beta(u)), abs(d))
        a, b, d = tt.upper_coeffs(1.0, u)  # edge DB
        worst_coeff = max(worst_coeff, abs(a), abs(b - beta(u)), abs(d - alpha(u)))
        # diagonal agreement between the two triangles
        a, c, d = tt.lower_coeffs(u, 1.0 - u)
        ap, bp, dp = tt.upper_coeffs(u, 1.0 - u)
        worst_coeff = max(worst_coeff, abs(a - ap), abs(bp), abs(c), abs(d - dp))
    # normalization on a 20-point grid
    for kx in range(21):
        for ky in range(21):
            x, y = kx / 20, ky / 20
            if x + y <= 1:
                a, c, d = tt.lower_coeffs(x, y)
                worst_coeff = max(worst_coeff, abs(abs(a) ** 2 + abs(c) ** 2 + abs(d) ** 2 - 1))
            if x + y >= 1:
                a, b, d = tt.upper_coeffs(x, y)
                worst_coeff = max(worst_coeff, abs(abs(a) ** 2 + abs(b) ** 2 + abs(d) ** 2 - 1))
    max_frame = None
    if lat.L >= 3:
        cfg = tt.DefectConfig(((0, 0), (2, 2)), ())
        tc = tt.build_code(lat, cfg, separation=1)
        max_frame = 0.0
        for k in range(1, 20):
            u = k / 20
            fb = tt.face_code(tc, "primal", (0, 0), (u, 0.0))
            fe = tt.edge_code(tc, "primal", tt.Edge(0, 0, "h"), u)
            max_frame = max(max_frame, subspace_distance(fb, fe))
            fb = tt.face_code(tc, "primal", (0, 0), (0.0, u))
            fe = tt.edge_code(tc, "primal", tt.Edge(0, 0, "v"), u)
            max_frame = max(max_frame, subspace_distance(fb, fe))
    ok = max_winding < 1e-9 and worst_coeff < 1e-12 and (
        max_frame is None or max_frame < tol
    )
    return {
        "max_winding": max_winding,
        "max_coeff_deviation": worst_coeff,
        "max_frame_deviation": max_frame,
        "ok": ok,
    }


def cmd_report_merge(args) -> int:
    reports = [json.loads(Path(p).read_text()) for p in args.reports]
    _emit(
        {
            "command": "report-merge",
            "parameters": {"inputs": list(args.reports)},
            "results": {"reports": reports},
            "ok": all(r.get("ok", False) for r in reports),
        },
        args.out,
    )
    _summary(f"merged {len(reports)} reports")
    return 0


# -- argument plumbing ---------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=_env_default("seed", int, 0))
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--threads", type=int, default=_env_default("threads", int, 1))
    p.add_argument("--out", default=_env_default("out", str, None))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="holoqec", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("distance", help="brute-force code distance")
    p.add_argument("--code", required=True)
    p.add_argument("--max-weight", type=int, required=True, dest="max_weight")
    p.add_argument("--expect", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_distance, default_tol=1e-8)

    p = sub.add_parser("correctable", help="correction-condition check")
    p.add_argument("--code", required=True)
    p.add_argument("--errors", required=True)
    p.add_argument("--expect", choices=["true", "false"], default=None)
    _add_common(p)
    p.set_defaults(func=cmd_correctable, default_tol=1e-9)

    p = sub.add_parser("transversal", help="transversal-gate suite")
    p.add_argument("subcommand", choices=["lie-dim", "trivial-action", "holonomy", "flatness"])
    p.add_argument("--gate", default="X")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--expect", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_transversal, default_tol=1e-8)

    p = sub.add_parser("toric", help="toric-code suite")
    p.add_argument("subcommand", choices=["build", "braid", "flatness", "face-checks"])
    p.add_argument("--config", default=None)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--trials", type=int, default=25)
    _add_common(p)
    p.set_defaults(func=cmd_toric, default_tol=1e-8)

    p = sub.add_parser("report-merge", help="merge JSON reports")
    p.add_argument("reports", nargs="+")
    _add_common(p)
    p.set_defaults(func=cmd_report_merge, default_tol=1e-9)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.tol is None:
        args.tol = _env_default("tol", float, args.default_tol)
    if not hasattr(args, "samples"):
        args.samples = None
    if not hasattr(args, "trials"):
        args.trials = None
    if not hasattr(args, "gate"):
        args.gate = None
    try:
        return args.func(args)
    except (tt.RoutingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

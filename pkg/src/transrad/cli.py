"""Command-line front end: read matrix files, run a computation, emit a JSON report.

Matrix files hold ``{"n": 2, "entries": [[[re, im], ...], ...]}`` (UTF-8).
Exit codes: 0 all checks pass, 1 a check failed, 2 precondition violated,
3 parse or I/O error.  See README.md for the report schema.
"""
import argparse
import csv
import hashlib
import json
import logging
import math
import sys
import time

import numpy as np

from . import __version__
from .deviation import Variant
from .errors import DegenerateMaximizer, NumericalFailure, NumericalRangeZero, PreconditionError
from .georange import (
    chain_check, enclosing_circle, sample_generalized_range, wrange_scan,
)
from .opcore import ToleranceSet, unit_vector, validate_pair
from .radii import DEFAULT_STARTS, OracleConfig, oracle_radius, radius, radius_tilde
from .states import state_supremum
from .stationary import (
    adjoint_coefficient, adjoint_duality_check, decomposition_scale, find_stationary,
    selfadjoint_decomposition, stationarity_certificate,
)
from .translation import minimal_translation, translation_radius_equality

EXIT_OK, EXIT_CHECKS, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2, 3

# tolerances of the reported checks
STATIONARY_TOL = 1e-6
EQUALITY_TOL = 1e-5
DUALITY_TOL = 1e-5
STATES_TOL = 1e-4
ORACLE_TOL = 5e-3
DECOMP_EIGEN_TOL = 1e-8
DECOMP_RECON_TOL = 1e-10

log = logging.getLogger("transrad")


class ParseError(Exception):
    pass


# --------------------------------------------------------------------------
# input / output


def read_matrix(path):
    """Parse a matrix file; returns ``(matrix, sha256 hex digest)``."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: not a UTF-8 JSON document ({exc})") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ParseError(f"{path}: expected an object with fields 'n' and 'entries'")
    n, rows = doc["n"], doc["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"{path}: 'n' must be a positive integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{path}: 'entries' must hold {n} rows")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{path}: row {i} must hold {n} entries")
        for j, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)):
                raise ParseError(f"{path}: entry ({i}, {j}) must be a [re, im] pair of numbers")
            M[i, j] = complex(z[0], z[1])
    return M, digest


def write_matrix(path, M):
    M = np.asarray(M, dtype=complex)
    doc = {"n": M.shape[0], "entries": [[[z.real, z.imag] for z in row] for row in M]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def parse_vector(text):
    """``--start`` value: JSON list of numbers or of ``[re, im]`` pairs."""
    try:
        items = json.loads(text)
        return np.array([complex(*z) if isinstance(z, list) else complex(z) for z in items])
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise ParseError(f"--start: cannot parse {text!r} ({exc})") from None


def to_json(x):
    """Numbers, complex numbers, arrays and containers to plain JSON values."""
    if isinstance(x, dict):
        return {k: to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if isinstance(x, np.ndarray):
        return [to_json(v) for v in x.tolist()]
    if isinstance(x, (complex, np.complexfloating)):
        return [to_json(float(x.real)), to_json(float(x.imag))]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


class Report:
    def __init__(self, command, inputs, parameters):
        self.command = command
        self.inputs = inputs
        self.parameters = parameters
        self.results = {}
        self.checks = []
        self.headline = None

    def check(self, name, gap, tol):
        """Record ``gap <= tol``."""
        self.checks.append({"name": name, "status": "pass" if gap <= tol else "fail",
                            "gap": gap, "tolerance": tol})

    def skip(self, name, reason):
        self.checks.append({"name": name, "status": "skipped", "gap": None, "tolerance": None,
                            "reason": reason})

    @property
    def passed(self):
        return all(c["status"] != "fail" for c in self.checks)

    def as_dict(self, elapsed):
        return to_json({"command": self.command, "version": __version__, "inputs": self.inputs,
                        "parameters": self.parameters, "results": self.results,
                        "checks": self.checks, "passed": self.passed,
                        "elapsed_seconds": elapsed})


# --------------------------------------------------------------------------
# commands


def _radius_block(rep, pair, args):
    rad = radius(pair, starts=args.starts, seed=args.seed)
    h2 = rad.report.value ** 2
    rep.results["radius"] = {
        "value": rad.value, "maximizer": rad.maximizer, "lambda": rad.report.lam,
        "h_norm": rad.report.value, "stationary_residual": rad.stationary_residual,
        "duality_gap": rad.duality_gap, "starts_used": rad.starts_used,
        "converged_starts": rad.converged_starts}
    rep.check("stationarity", rad.stationary_residual, STATIONARY_TOL * max(1.0, h2))
    rep.check("radius_duality_gap", rad.duality_gap, 10 * pair.tol.opt_tol * max(1.0, rad.value))
    if args.oracle:
        _oracle_block(rep, pair, args, Variant.STANDARD, rad.value)
    rep.headline = rad.value
    return rad


def _oracle_block(rep, pair, args, variant, value):
    name = "oracle" if variant is Variant.STANDARD else "oracle_tilde"
    if pair.n != 2:
        rep.skip(name, f"UnsupportedDimension: the grid oracle needs n = 2, got n = {pair.n}")
        return
    cfg = OracleConfig(args.oracle_steps, args.oracle_steps, args.seed)
    ov = oracle_radius(pair, variant, cfg)
    rep.results[name] = {"value": ov, "gap": abs(value - ov), "steps": args.oracle_steps}
    rep.check(name, abs(value - ov), ORACLE_TOL)


def cmd_radius(rep, pair, args):
    _radius_block(rep, pair, args)


def cmd_translate(rep, pair, args):
    tr = minimal_translation(pair, seed=args.seed)
    rep.results["translation"] = {"lambda0": tr.lambda0, "min_norm": tr.min_norm,
                                  "probe_gap": tr.probe_gap, "evaluations": tr.iterations}
    rep.check("probe_optimality", tr.probe_gap, pair.tol.identity_tol * max(1.0, tr.min_norm))
    rep.headline = tr.min_norm
    return tr


def _start_vector(pair, args):
    if args.start is not None:
        v = parse_vector(args.start)
        if v.size != pair.n:
            raise ParseError(f"--start has {v.size} components, the matrices are {pair.n}x{pair.n}")
        return unit_vector(v)
    rng = np.random.default_rng(args.seed)
    return unit_vector(rng.standard_normal(pair.n) + 1j * rng.standard_normal(pair.n))


def cmd_stationary(rep, pair, args):
    start = _start_vector(pair, args)
    cert = find_stationary(pair, start)
    rep.results["stationary"] = {"start": start, "f": cert.f, "lambda": cert.lam,
                                 "h_norm": cert.h_norm, "residual": cert.residual,
                                 "is_stationary": cert.is_stationary,
                                 "iterations": cert.iterations}
    rep.check("stationarity", cert.residual, STATIONARY_TOL * max(1.0, cert.h_norm ** 2))
    rep.headline = cert.h_norm
    return cert


def cmd_decompose(rep, pair, args):
    cert = cmd_stationary(rep, pair, args)
    dec = selfadjoint_decomposition(pair, cert)
    scale = decomposition_scale(pair, dec)
    rep.results["decomposition"] = {"g1": dec.g1, "g2": dec.g2, "lambda": dec.lam,
                                    "h_norm": dec.h_norm, "eigen_residuals": dec.eigen_residuals,
                                    "reconstruction_error": dec.reconstruction_error}
    rep.check("eigen_relation_plus", dec.eigen_residuals[0], DECOMP_EIGEN_TOL * scale)
    rep.check("eigen_relation_minus", dec.eigen_residuals[1], DECOMP_EIGEN_TOL * scale)
    rep.check("reconstruction", dec.reconstruction_error, DECOMP_RECON_TOL)
    rep.headline = dec.h_norm


def cmd_states(rep, pair, args):
    rad = radius(pair, starts=args.starts, seed=args.seed)
    sup = state_supremum(pair, starts=args.starts, seed=args.seed, rad=rad)
    r2 = rad.value ** 2
    rep.results["states"] = {"supremum": sup.value, "radius_squared": r2, "rho": sup.rho.rho,
                             "denominator": sup.denominator}
    rep.check("state_supremum", abs(sup.value - r2), STATES_TOL * max(1.0, r2))
    rep.headline = sup.value


def cmd_wrange(rep, pair, args):
    scan = wrange_scan(pair.A, args.theta_steps)
    rep.results["wrange"] = {"distance": scan.distance, "support_value": scan.raw,
                             "theta": scan.theta, "theta_steps": args.theta_steps}
    rep.headline = scan.distance
    if not pair.invertible:
        rep.skip("generalized_range", "SingularDirection: A is not invertible")
        return
    cloud = sample_generalized_range(pair, args.samples, args.seed)
    circ = enclosing_circle(cloud, args.seed)
    rep.results["generalized_range"] = {"samples": int(cloud.points.size), "center": circ.center,
                                        "radius": circ.radius, "support": circ.support}
    rep.check("circle_contains_cloud",
              float(np.max(np.abs(cloud.points - circ.center))) - circ.radius,
              1e-9 * max(1.0, circ.radius))
    if args.dump:
        try:
            with open(args.dump, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh)
                w.writerow(["re", "im"])
                w.writerows((repr(z.real), repr(z.imag)) for z in cloud.points)
        except OSError as exc:
            raise ParseError(f"--dump: {exc.strerror or exc}") from None
        rep.results["generalized_range"]["dump"] = args.dump


def cmd_chain(rep, pair, args):
    ch = chain_check(pair, samples=args.samples, seed=args.seed, starts=args.starts)
    rep.results["chain"] = {"tilde": ch.tilde, "standard": ch.standard, "lower": ch.lower,
                            "gaps": ch.gaps()}
    tol = 10 * pair.tol.opt_tol * max(1.0, ch.standard)
    rep.check("standard_vs_lower", -ch.gaps()["standard_vs_lower"], tol)
    if ch.tilde is None:
        rep.skip("tilde_vs_standard", ch.skip_reason)
    else:
        rep.check("tilde_vs_standard", -ch.gaps()["tilde_vs_standard"], tol)
    rep.headline = ch.standard
    return ch


def cmd_suite(rep, pair, args):
    pair.require_invertible()
    rad = _radius_block(rep, pair, args)
    v = rad.value
    tr = cmd_translate(rep, pair, args)
    rep.check("translation_equality", translation_radius_equality(pair, rad, tr),
              EQUALITY_TOL * max(1.0, v))
    cert = stationarity_certificate(pair, rad.maximizer)
    rep.results["certificate"] = {"residual": cert.residual, "is_stationary": cert.is_stationary}

    try:
        gap = adjoint_duality_check(pair, rad, starts=args.starts, seed=args.seed)
        lam_adj = adjoint_coefficient(pair, rad)
        rep.results["adjoint"] = {"gap": gap, "coefficient": lam_adj}
        rep.check("adjoint_duality", gap, DUALITY_TOL)
        rep.check("adjoint_coefficient", abs(lam_adj - np.conj(rad.report.lam)),
                  DUALITY_TOL * max(1.0, abs(rad.report.lam)))
    except DegenerateMaximizer as exc:
        rep.skip("adjoint_duality", f"DegenerateMaximizer: {exc}")
        rep.skip("adjoint_coefficient", f"DegenerateMaximizer: {exc}")

    try:
        tl = radius_tilde(pair, starts=args.starts, seed=args.seed,
                          extra_starts=[rad.maximizer])
        rep.results["radius_tilde"] = {"value": tl.value, "maximizer": tl.maximizer,
                                       "lambda": tl.report.lam}
        rep.check("tilde_dominates", v - tl.value, 10 * pair.tol.opt_tol * max(1.0, v))
        if np.linalg.norm(pair.A - np.eye(pair.n), 2) <= pair.tol.identity_tol:
            rep.check("tilde_equals_standard", abs(tl.value - v), STATIONARY_TOL * max(1.0, v))
        if args.oracle:
            _oracle_block(rep, pair, args, Variant.TILDE, tl.value)
    except NumericalRangeZero as exc:
        rep.skip("tilde_dominates", f"NumericalRangeZero: {exc}")
        if args.oracle:
            rep.skip("oracle_tilde", f"NumericalRangeZero: {exc}")

    ch = chain_check(pair, samples=args.samples, seed=args.seed, starts=args.starts)
    rep.results["chain"] = {"tilde": ch.tilde, "standard": ch.standard, "lower": ch.lower}
    rep.check("chain_standard_vs_lower", -ch.gaps()["standard_vs_lower"],
              10 * pair.tol.opt_tol * max(1.0, v))

    sup = state_supremum(pair, starts=args.starts, seed=args.seed, rad=rad)
    rep.results["states"] = {"supremum": sup.value, "radius_squared": v ** 2}
    rep.check("state_supremum", abs(sup.value - v ** 2), STATES_TOL * max(1.0, v ** 2))
    rep.headline = v


COMMANDS = {
    "radius": (cmd_radius, "largest deviation over the unit sphere"),
    "suite": (cmd_suite, "all computations and their cross-checks"),
    "translate": (cmd_translate, "minimal-norm translation lambda0"),
    "stationary": (cmd_stationary, "stationary distance vector from a start"),
    "decompose": (cmd_decompose, "split a stationary vector of a selfadjoint pair"),
    "states": (cmd_states, "supremum of the state functional"),
    "wrange": (cmd_wrange, "distance of 0 to W(A) and the sampled generalized range"),
    "chain": (cmd_chain, "tilde radius >= radius >= m_T(A) sigma_min(A)"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("T", help="matrix file for T")
    common.add_argument("A", help="matrix file for A")
    common.add_argument("--tol-identity", type=float, default=ToleranceSet.identity_tol)
    common.add_argument("--tol-opt", type=float, default=ToleranceSet.opt_tol)
    common.add_argument("--starts", type=int, default=DEFAULT_STARTS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle", action="store_true", help="cross-check with the n = 2 grid")
    common.add_argument("--oracle-steps", type=int, default=OracleConfig.alpha_steps)
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--theta-steps", type=int, default=512)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="print only the headline value")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="transrad", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name in ("stationary", "decompose"):
            p.add_argument("--start", help="start vector, e.g. '[[1,0],[0,1]]' or '[1,1]'")
        if name == "wrange":
            p.add_argument("--dump", help="CSV file for the sampled generalized range")
    return parser


def _emit(doc, args):
    text = json.dumps(doc, indent=2, allow_nan=False)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if args.quiet:
        head = doc.get("headline")
        print("null" if head is None else repr(head))
    elif not args.output:
        print(text)


def _error_doc(args, kind, exc, code):
    return {"command": args.command, "error": {"type": kind, "message": str(exc)},
            "exit_code": code}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.perf_counter()
    try:
        try:
            T, dT = read_matrix(args.T)
            A, dA = read_matrix(args.A)
            tol = ToleranceSet(identity_tol=args.tol_identity, opt_tol=args.tol_opt)
            for flag in ("starts", "samples", "theta_steps", "oracle_steps"):
                if getattr(args, flag) < 1:
                    raise ParseError(f"--{flag.replace('_', '-')} must be positive")
            if args.oracle_steps < 8:
                raise ParseError("--oracle-steps must be at least 8")
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        params = {"identity_tol": tol.identity_tol, "opt_tol": tol.opt_tol,
                  "rank_tol": tol.rank_tol, "starts": args.starts, "seed": args.seed,
                  "oracle": args.oracle, "oracle_steps": args.oracle_steps,
                  "samples": args.samples, "theta_steps": args.theta_steps}
        if getattr(args, "start", None) is not None:
            params["start"] = args.start
        rep = Report(args.command,
                     {"T": {"path": args.T, "sha256": dT}, "A": {"path": args.A, "sha256": dA}},
                     params)
        pair = validate_pair(T, A, tol)
        COMMANDS[args.command][0](rep, pair, args)
        doc = rep.as_dict(time.perf_counter() - t0)
        doc["headline"] = to_json(rep.headline)
        code = EXIT_OK if rep.passed else EXIT_CHECKS
    except ParseError as exc:
        doc, code = _error_doc(args, "ParseError", exc, EXIT_PARSE), EXIT_PARSE
    except PreconditionError as exc:
        doc = _error_doc(args, type(exc).__name__, exc, EXIT_PRECONDITION)
        code = EXIT_PRECONDITION
    except NumericalFailure as exc:
        doc, code = _error_doc(args, type(exc).__name__, exc, EXIT_CHECKS), EXIT_CHECKS
    try:
        _emit(doc, args)
    except OSError as exc:
        print(json.dumps(_error_doc(args, "ParseError", exc, EXIT_PARSE)), file=sys.stderr)
        return EXIT_PARSE
    return code


if __name__ == "__main__":
    sys.exit(main())

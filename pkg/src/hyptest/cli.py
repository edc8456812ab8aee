"""Command-line interface: ``hyptest <command> [options]``.

Matrices and parameters are read from JSON files; results go to stdout
or ``--out`` as CSV (default) or JSON. Exit status is 0 on success, 1 on
bad input and 2 when a verification step fails.
"""
import argparse
import json
import math
import sys

import numpy as np

from . import composite, discrimination, oracle
from .errors import HyptestError, ParseError
from .jsonio import _load, matrix_from_json, matrix_to_obj, read_matrix, read_params

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


class VerificationFailed(Exception):
    """Raised by a command whose checks ran to completion but did not all pass."""

    def __init__(self, result):
        super().__init__("verification failed")
        self.result = result


def fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % x
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (float, np.floating)):
        x = float(x)
        # keep JSON strict: non-finite values become strings
        return x if math.isfinite(x) else fmt(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


def parse_n(text):
    """``"10,20,40"`` or ``"start:stop[:step]"`` (inclusive) to a sorted list."""
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = parts[:2]
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise ValueError
            ns = list(range(start, stop + 1, step))
        else:
            ns = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"cannot parse n range {text!r}") from None
    if not ns or min(ns) < 1:
        raise ParseError(f"n range {text!r} must be non-empty with n >= 1")
    return sorted(set(ns))


def read_matrices(paths):
    """Matrices from files holding either one matrix object or a list of them."""
    out = []
    for path in paths:
        with open(path) as fh:
            obj = _load(fh.read())
        out.extend(matrix_from_json(o) for o in (obj if isinstance(obj, list) else [obj]))
    return out


def read_family(path):
    """``{"P": matrix, "Q": matrix, "psi": {"re": [...], "im": [...]}}`` to a family."""
    with open(path) as fh:
        obj = _load(fh.read())
    try:
        psi = np.array(obj["psi"]["re"], dtype=float).astype(complex)
        if obj["psi"].get("im") is not None:
            psi += 1j * np.array(obj["psi"]["im"], dtype=float)
        return composite.SpecialFamily(matrix_from_json(obj["P"]), matrix_from_json(obj["Q"]), psi)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HyptestError):
            raise
        raise ParseError(f"malformed family file: {exc}") from None


# -- commands -------------------------------------------------------------
# each returns (rows, extra) where rows is a list of flat dicts for CSV and
# extra holds additional JSON-only fields

def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ParseError(f"--{name} is required for {args.command}")


def cmd_helstrom(args):
    _require(args, "a", "b")
    a, b = read_matrix(args.a), read_matrix(args.b)
    value, test = discrimination.binary_optimal_error(a, b)
    sup = discrimination.hybrid_sup_binary(a, b)
    row = {"error": value, "success": float(np.trace(a + b).real) - value,
           "sup_trace": float(np.trace(sup).real)}
    return [row], {"test": matrix_to_obj(test[0]), "sup": matrix_to_obj(sup)}


def cmd_classical(args):
    _require(args, "states")
    states = read_matrices(args.states)
    value, povm, sup = discrimination.classical_optimal(states)
    winners = [int(np.argmax([np.diag(m).real[k] for m in povm])) for k in range(sup.shape[0])]
    row = {"success": value, "error": sum(np.trace(s).real for s in states) - value}
    extra = {"sup_diag": np.diag(sup).real, "ml_assignment": winners}
    return [row], extra


def cmd_chernoff(args):
    _require(args, "a", "b")
    a, b = read_matrix(args.a), read_matrix(args.b)
    res = discrimination.chernoff_divergence(a, b, tol=args.tol or 1e-10)
    row = {"chernoff": res.value, "alpha_star": res.alpha_star,
           "objective": res.objective_at_alpha}
    if args.grid:
        row["chernoff_grid"] = oracle.chernoff_bruteforce(a, b, args.grid)
    return [row], {}


def cmd_params(args):
    if args.family is not None:
        family = read_family(args.family)
        violated = composite.validate_assumptions(family)
        params = composite.extract_params(family)
    else:
        _require(args, "params")
        params, violated = read_params(args.params), []
    row = params.as_dict() | {"kind": params.kind, "branch": params.branch,
                              "conjectured": composite.conjectured_exponent(params)}
    extra = {"violated_assumptions": violated,
             "block_sizes": list(composite.block_sizes(params))}
    if violated:
        raise VerificationFailed(([row], extra))
    return [row], extra


def cmd_reduce(args):
    _require(args, "params", "n")
    params = read_params(args.params)
    rows, blocks = [], []
    for n in parse_n(args.n):
        m = composite.reduced_matrix(params, n)
        eig = composite.reduced_eigen(params, n)
        for i in range(m.shape[0]):
            rows.append({"n": n, "kind": params.kind, "row": i}
                        | {f"c{j}": m[i, j] for j in range(m.shape[1])}
                        | {"eigenvalue": eig.eigenvalues[i]})
        blocks.append({"n": n, "matrix": matrix_to_obj(m), "eigenvalues": eig.eigenvalues,
                       "charpoly_coeffs": eig.coeffs, "precision_loss": eig.precision_loss})
    return rows, {"blocks": blocks}


def cmd_exponent(args):
    _require(args, "params")
    params = read_params(args.params)
    ns = parse_n(args.n or "1:60")
    series = composite.series_at(params, ns, step=1, jobs=args.jobs)
    rows = [{"n": e.n, "log_error": e.log_error, "one_over_n_log": e.one_over_n_log,
             "slope": e.slope, "precision_flag": e.precision_loss,
             "conjectured": series.conjectured} for e in series.entries]
    return rows, {"estimate": series.estimate}


def cmd_verify(args):
    _require(args, "params")
    params = read_params(args.params)
    report = composite.verify_theorem(params, parse_n(args.n or "10,20,40,80"),
                                      oracle=args.oracle, tol=args.tol or 1e-9)
    rows = [{"n": pr.n, "lower_rate": pr.lower_rate, "upper_rate": pr.upper_rate,
             "slope": pr.slope, "remainder_ratio": pr.remainder_ratio,
             "sandwich_ok": pr.sandwich_ok, "oracle_gap": pr.oracle_gap}
            for pr in report.probes]
    extra = {"branch": report.branch, "conjectured": report.conjectured,
             "remainder_decreasing": report.remainder_decreasing,
             "final_gap": report.final_gap, "passed": report.passed}
    if not report.passed:
        raise VerificationFailed((rows, extra))
    return rows, extra


def cmd_oracle(args):
    _require(args, "params")
    params = read_params(args.params)
    tol = args.tol or 1e-9
    budget = oracle.OracleBudget.from_env()
    family = composite.canonical_realization(params)
    rotated = oracle.rotated_realization(family, np.random.default_rng(args.seed))
    rows = []
    for n in parse_n(args.n or "1:3"):
        exact = composite.composite_error(params, n).value
        brute = oracle.tensor_error_bruteforce(family, n, budget)
        brute_rot = oracle.tensor_error_bruteforce(rotated, n, budget)
        gap = max(abs(brute - exact), abs(brute_rot - exact))
        rows.append({"n": n, "reduced": exact, "bruteforce": brute,
                     "bruteforce_rotated": brute_rot, "max_gap": gap, "ok": gap <= tol})
    extra = {"seed": args.seed, "max_dim": budget.max_dim}
    if not all(r["ok"] for r in rows):
        raise VerificationFailed((rows, extra))
    return rows, extra


COMMANDS = {
    "helstrom": (cmd_helstrom, "optimal binary error and hybrid supremum of two operators"),
    "classical": (cmd_classical, "optimal success for diagonal generalized states"),
    "chernoff": (cmd_chernoff, "Chernoff divergence of two PSD operators"),
    "params": (cmd_params, "validate family parameters or extract them from a family file"),
    "reduce": (cmd_reduce, "reduced block matrices and their spectra"),
    "exponent": (cmd_exponent, "log-error series and slope estimates"),
    "verify": (cmd_verify, "numerical check of the composite exponent"),
    "oracle": (cmd_oracle, "compare reduced and brute-force composite errors"),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="hyptest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--a", help="matrix JSON file")
        p.add_argument("--b", help="matrix JSON file")
        p.add_argument("--states", nargs="+", help="matrix JSON files (each one matrix or a list)")
        p.add_argument("--params", help="family parameter JSON file")
        p.add_argument("--family", help="family JSON file with P, Q and psi")
        p.add_argument("--n", help="comma list or start:stop[:step]")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--tol", type=float, help="tolerance override")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--grid", type=int, help="also evaluate the brute-force grid (chernoff)")
        p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle (verify)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def render(rows, extra, form):
    if form == "json":
        return json.dumps(_jsonable({"rows": rows} | extra), indent=2) + "\n"
    if not rows:
        return ""
    header = list(rows[0])
    lines = [",".join(header)] + [",".join(fmt(r[k]) for k in header) for r in rows]
    return "\n".join(lines) + "\n"


def run(argv=None):
    args = build_parser().parse_args(argv)
    if args.tol is not None and args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    handler = COMMANDS[args.command][0]
    code = EXIT_OK
    try:
        rows, extra = handler(args)
    except VerificationFailed as exc:
        rows, extra = exc.result
        code = EXIT_VERIFY
        print(f"error: {args.command}: verification failed", file=sys.stderr)
    except (HyptestError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = render(rows, extra, args.format)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))

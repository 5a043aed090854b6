"""Command-line front end.

One problem per invocation (or a JSON array for batch mode), JSON in and
JSON out. Rationals travel as canonical strings like "-3/4" so nothing is
lost to floats; a float rendering rides alongside under a ``_float`` key.
Output keys are sorted and the encoding is compact, so identical inputs
produce byte-identical outputs.

Exit codes: 0 success, 2 infeasible or no result (singular systems,
degenerate configurations, non-convergence), 3 input error (bad JSON,
bad shapes, bad values), 4 capacity exceeded. The environment variable
BOXALG_CAP overrides the permutation-enumeration caps.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction

from .core import nary_boxplus, smile
from .eigen import (
    DEFAULT_CHAR_CAP,
    char_monomials,
    charpoly_eval,
    eigen_region,
)
from .errors import (
    BoxAlgError,
    CapacityError,
    ConvergenceError,
    DegenerateConfigurationError,
    DomainError,
)
from .geom import hyperplane_contains, hyperplane_through
from .linalg import DEFAULT_DET_CAP, BoxMatrix, det_inf, det_inf_reg, det_p
from .oracle import DEFAULT_P_MAX, DEFAULT_TOL, sweep
from .signedlog import SignedLog
from .solve import (
    LimitSystem,
    TwoSidedSystem,
    cramer_limit_solve,
    kaykobad_check,
    kaykobad_p_check,
    maxsys_candidate,
    maxsys_existence_permutation,
    maxsys_solve,
    twosided_solve,
)
from .sym import s_det, s_embed_matrix, s_pair, v_identity_check, v_map

RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

KINDS = ("det", "solve", "maxsolve", "twosided", "hyperplane", "charpoly",
         "eigen", "oracle", "sym")

OK, INFEASIBLE, INPUT_ERROR, CAPACITY = 0, 2, 3, 4


# --- JSON <-> exact values ----------------------------------------------------


def _scalar_in(v) -> Fraction:
    if isinstance(v, bool):
        raise DomainError(f"not a scalar: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(str(v))
    if isinstance(v, str):
        if not RATIONAL_RE.match(v):
            raise DomainError(f"not a rational string: {v!r}")
        return Fraction(v)
    raise DomainError(f"not a scalar: {v!r}")


def _vector_in(v) -> tuple[Fraction, ...]:
    if not isinstance(v, list) or not v:
        raise DomainError("expected a nonempty array of scalars")
    return tuple(_scalar_in(x) for x in v)


def _matrix_in(v) -> BoxMatrix:
    if not isinstance(v, list) or not v:
        raise DomainError("expected a nonempty array of rows")
    return BoxMatrix([_vector_in(r) for r in v])


def _float_out(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _vec(v) -> list[str]:
    return [_rat(x) for x in v]


def _vec_float(v) -> list:
    return [_float_out(float(x)) for x in v]


def _mat(M: BoxMatrix) -> list[list[str]]:
    return [[_rat(x) for x in row] for row in M.to_rows()]


def _slog(z: SignedLog) -> dict:
    return {
        "sign": z.sign,
        "logmag": _float_out(z.logmag),
        "float": _float_out(z.to_float()),
        "exact": None if z.exact is None else _rat(z.exact),
    }


def _region_value(x):
    return _rat(x) if isinstance(x, Fraction) else _float_out(float(x))


def _rows_out(rows) -> list[dict]:
    return [
        {
            "lower": _rat(r.lower),
            "lower_float": _float_out(float(r.lower)),
            "upper": _rat(r.upper),
            "upper_float": _float_out(float(r.upper)),
            "satisfied": r.satisfied,
        }
        for r in rows
    ]


# --- option plumbing ----------------------------------------------------------


def _caps() -> tuple[int, int]:
    raw = os.environ.get("BOXALG_CAP")
    if raw is None:
        return DEFAULT_DET_CAP, DEFAULT_CHAR_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"BOXALG_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise DomainError(f"BOXALG_CAP must be positive, got {cap}")
    return cap, cap


def _merge_opts(data: dict, args) -> dict:
    opts = dict(data.get("options", {}))
    if args.p is not None:
        opts["p"] = args.p
    if args.pmax is not None:
        opts["p_max"] = args.pmax
    if args.tol is not None:
        opts["tol"] = args.tol
    if args.mode is not None:
        opts["mode"] = args.mode
    return opts


def _opt_p(opts) -> int | None:
    p = opts.get("p")
    if p is None:
        return None
    if not isinstance(p, int) or isinstance(p, bool) or p < 0:
        raise DomainError(f"p must be a nonnegative integer, got {p!r}")
    return p


# --- handlers (each returns (exit_code, json_object)) -------------------------


def _do_det(data: dict, opts: dict) -> tuple[int, dict]:
    det_cap, _ = _caps()
    A = _matrix_in(data["A"])
    d = det_inf(A, det_cap)
    out = {"det_inf": _rat(d), "det_inf_float": _float_out(float(d))}
    mode = opts.get("mode")
    if mode in ("lower", "upper"):
        r = det_inf_reg(A, mode, det_cap)
        out[f"det_{mode}"] = _rat(r)
        out[f"det_{mode}_float"] = _float_out(float(r))
    elif mode not in (None, "exact"):
        raise DomainError(f"mode must be lower, upper or exact, got {mode!r}")
    p = _opt_p(opts)
    if p is not None:
        out["det_p"] = _slog(det_p(A, p, det_cap))
        out["p"] = p
    return OK, out


def _do_solve(data: dict, opts: dict) -> tuple[int, dict]:
    det_cap, _ = _caps()
    system = LimitSystem(_matrix_in(data["A"]), _vector_in(data["b"]))
    report = cramer_limit_solve(system, det_cap)
    if report.solution is None:
        return INFEASIBLE, {"det_inf": "0", "det_inf_float": 0.0}
    return OK, {
        "det_inf": _rat(report.det),
        "det_inf_float": _float_out(float(report.det)),
        "x": _vec(report.solution),
        "x_float": _vec_float(report.solution),
        "rows": _rows_out(report.per_row),
        "satisfied": all(r.satisfied for r in report.per_row),
        "regular": report.regular,
    }


def _do_maxsolve(data: dict, opts: dict) -> tuple[int, dict]:
    A = _matrix_in(data["A"])
    b = _vector_in(data["b"])
    out: dict = {}
    try:
        cand = maxsys_candidate(A, b)
        out["candidate"] = _vec(cand)
        out["candidate_float"] = _vec_float(cand)
    except DomainError as exc:
        out["candidate"] = None
        out["candidate_error"] = str(exc)
    x = maxsys_solve(A, b)
    out["feasible"] = x is not None
    if x is not None:
        out["x"] = _vec(x)
        out["x_float"] = _vec_float(x)
    if A.is_square:
        found = maxsys_existence_permutation(A, b)
        out["sigma"] = None if found is None else list(found[0])
        out["strict"] = None if found is None else found[1]
        if all(A.entry(i, i) > 0 for i in range(1, A.rows + 1)):
            out["kaykobad"] = kaykobad_check(A, b)
        else:
            out["kaykobad"] = None
        p = _opt_p(opts)
        if p is not None and found is not None:
            out["kaykobad_p"] = kaykobad_p_check(A, b, found[0], p)
            out["p"] = p
    return (OK if x is not None else INFEASIBLE), out


def _do_twosided(data: dict, opts: dict) -> tuple[int, dict]:
    det_cap, _ = _caps()
    system = TwoSidedSystem(
        _matrix_in(data["A"]), _matrix_in(data["C"]),
        _vector_in(data["b"]), _vector_in(data["d"]),
    )
    report = twosided_solve(system, det_cap)
    if report.solution is None:
        return INFEASIBLE, {"det_inf": "0", "det_inf_float": 0.0}
    return OK, {
        "det_inf": _rat(report.det),
        "det_inf_float": _float_out(float(report.det)),
        "x": _vec(report.solution),
        "x_float": _vec_float(report.solution),
        "rows": _rows_out(report.per_row),
        "satisfied": all(r.satisfied for r in report.per_row),
        "regular": report.regular,
    }


def _do_hyperplane(data: dict, opts: dict) -> tuple[int, dict]:
    det_cap, _ = _caps()
    points = data["points"]
    if not isinstance(points, list):
        raise DomainError("points must be an array of points")
    H = hyperplane_through([_vector_in(p) for p in points], det_cap)
    out = {
        "coeffs": _vec(H.coeffs),
        "coeffs_float": _vec_float(H.coeffs),
        "rhs": _rat(H.rhs),
        "rhs_float": _float_out(float(H.rhs)),
    }
    queries = data.get("queries")
    if queries is not None:
        if not isinstance(queries, list):
            raise DomainError("queries must be an array of points")
        out["members"] = [
            hyperplane_contains(H, _vector_in(q)) for q in queries
        ]
    return OK, out


def _do_charpoly(data: dict, opts: dict) -> tuple[int, dict]:
    _, char_cap = _caps()
    A = _matrix_in(data["A"])
    ms = char_monomials(A, char_cap)
    out: dict = {
        "count": len(ms),
        "monomials": [[_rat(m.coeff), m.degree] for m in ms],
    }
    lam = data.get("lam")
    if lam is not None:
        lam = _scalar_in(lam)
        out["lam"] = _rat(lam)
        for mode in ("limit", "lower", "upper"):
            v = charpoly_eval(ms, lam, mode)
            out[f"eval_{mode}"] = _rat(v)
            out[f"eval_{mode}_float"] = _float_out(float(v))
        p = _opt_p(opts)
        if p is not None:
            out["eval_p"] = _slog(charpoly_eval(ms, lam, "p", p=p))
            out["p"] = p
    return OK, out


def _do_eigen(data: dict, opts: dict) -> tuple[int, dict]:
    _, char_cap = _caps()
    A = _matrix_in(data["A"])
    region = eigen_region(A, cap=char_cap)
    out: dict = {
        "region": [_region_value(x) for x in region],
        "region_float": [_float_out(float(x)) for x in region],
    }
    positive = all(
        A.entry(i, j) > 0
        for i in range(1, A.rows + 1)
        for j in range(1, A.cols + 1)
    )
    if positive and region:
        p_max = opts.get("p_max", DEFAULT_P_MAX)
        tol = opts.get("tol", DEFAULT_TOL)
        rep = sweep("perron", {"A": A.to_rows()}, p_max=p_max, tol=tol)
        out["perron"] = {
            "limit_float": _float_out(float(rep.limit)),
            "final_rel_gap": _float_out(rep.final_rel_gap),
            "converged": rep.converged,
            "p_max": p_max,
        }
    return OK, out


def _do_oracle(data: dict, opts: dict) -> tuple[int, dict]:
    quantity = data.get("quantity")
    if not isinstance(quantity, str):
        raise DomainError("oracle problems need a 'quantity' string")
    inputs = {k: v for k, v in data.items()
              if k not in ("quantity", "kind", "options")}
    p_max = opts.get("p_max", DEFAULT_P_MAX)
    tol = opts.get("tol", DEFAULT_TOL)
    rep = sweep(quantity, inputs, p_max=p_max, tol=tol)
    if isinstance(rep.limit, tuple):
        limit = _vec(rep.limit)
        limit_float = _vec_float(rep.limit)
    elif isinstance(rep.limit, Fraction):
        limit = _rat(rep.limit)
        limit_float = _float_out(float(rep.limit))
    else:
        limit = _float_out(float(rep.limit))
        limit_float = limit
    values = []
    for v in rep.values:
        if v is None:
            values.append(None)
        elif isinstance(v, tuple):
            values.append([_float_out(z.to_float()) for z in v])
        else:
            values.append(_float_out(v.to_float()))
    return OK, {
        "quantity": rep.quantity,
        "p_values": list(rep.p_values),
        "values": values,
        "limit": limit,
        "limit_float": limit_float,
        "abs_gaps": [_float_out(g) for g in rep.abs_gaps],
        "rel_gaps": [_float_out(g) for g in rep.rel_gaps],
        "final_gap": _float_out(rep.final_gap),
        "final_rel_gap": _float_out(rep.final_rel_gap),
        "converged": rep.converged,
        "near_tie": rep.near_tie,
    }


def _do_sym(data: dict, opts: dict) -> tuple[int, dict]:
    det_cap, _ = _caps()
    out: dict = {}
    if "A" in data:
        A = _matrix_in(data["A"])
        d = s_det(s_embed_matrix(A), det_cap)
        out["s_det"] = [_rat(d.plus), _rat(d.minus)]
        out["s_det_float"] = [_float_out(float(d.plus)), _float_out(float(d.minus))]
        out["balanced_with_zero"] = d.plus == d.minus
        di = det_inf(A, det_cap)
        out["det_inf"] = _rat(di)
        out["det_inf_float"] = _float_out(float(di))
    if "pairs" in data:
        raw = data["pairs"]
        if not isinstance(raw, list) or not raw:
            raise DomainError("pairs must be a nonempty array of [plus, minus]")
        pairs = []
        for item in raw:
            if not isinstance(item, list) or len(item) != 2:
                raise DomainError(f"not a pair: {item!r}")
            pairs.append(s_pair(_scalar_in(item[0]), _scalar_in(item[1])))
        values = [v_map(x) for x in pairs]
        out["v_values"] = _vec(values)
        out["v_values_float"] = _vec_float(values)
        out["v_identity"] = v_identity_check(pairs)
    if not out:
        raise DomainError("sym problems need 'A' (pair determinant) or 'pairs'")
    return OK, out


HANDLERS = {
    "det": _do_det,
    "solve": _do_solve,
    "maxsolve": _do_maxsolve,
    "twosided": _do_twosided,
    "hyperplane": _do_hyperplane,
    "charpoly": _do_charpoly,
    "eigen": _do_eigen,
    "oracle": _do_oracle,
    "sym": _do_sym,
}


def _run_one(kind: str, data, args) -> tuple[int, dict]:
    if not isinstance(data, dict):
        raise DomainError("each problem must be a JSON object")
    item_kind = data.get("kind", kind)
    if item_kind not in KINDS:
        raise DomainError(f"unknown kind {item_kind!r}")
    opts = _merge_opts(data, args)
    return HANDLERS[item_kind](data, opts)


def _guarded(kind: str, data, args) -> tuple[int, dict]:
    try:
        return _run_one(kind, data, args)
    except KeyError as exc:
        return INPUT_ERROR, {"error": f"missing field {exc.args[0]!r}"}
    except CapacityError as exc:
        return CAPACITY, {"error": str(exc)}
    except (DegenerateConfigurationError, ConvergenceError) as exc:
        return INFEASIBLE, {"error": str(exc)}
    except DomainError as exc:
        return INPUT_ERROR, {"error": str(exc)}
    except BoxAlgError as exc:
        return INPUT_ERROR, {"error": str(exc)}


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def run(argv) -> int:
    parser = argparse.ArgumentParser(
        prog="boxalg",
        description="Exact limit-algebra computations over JSON problems.",
    )
    sub = parser.add_subparsers(dest="kind")
    for kind in KINDS:
        sp = sub.add_parser(kind)
        sp.add_argument("--json", dest="json_text")
        sp.add_argument("--file", dest="json_file")
        sp.add_argument("--p", type=int, default=None)
        sp.add_argument("--pmax", type=int, default=None)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--mode", choices=("lower", "upper", "exact"),
                        default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else INPUT_ERROR

    if args.kind is None:
        _emit({"error": f"missing subcommand; pick from {', '.join(KINDS)}"})
        return INPUT_ERROR
    if (args.json_text is None) == (args.json_file is None):
        _emit({"error": "exactly one of --json or --file is required"})
        return INPUT_ERROR

    if args.json_file is not None:
        if args.json_file == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.json_file, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                _emit({"error": f"cannot read {args.json_file}: {exc}"})
                return INPUT_ERROR
    else:
        text = args.json_text

    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        _emit({
            "error": f"malformed JSON at line {exc.lineno} column {exc.colno} "
                     f"(char {exc.pos}): {exc.msg}"
        })
        return INPUT_ERROR

    if isinstance(payload, list):
        results = []
        code = OK
        for item in payload:
            item_code, obj = _guarded(args.kind, item, args)
            results.append({"code": item_code, "result": obj})
            if code == OK and item_code != OK:
                code = item_code
        _emit(results)
        return code

    code, obj = _guarded(args.kind, payload, args)
    _emit(obj)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

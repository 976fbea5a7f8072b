"""Batch front end: JSON instances in, machine-readable certificates out.

Instance file schema:

    {"field": "Q" | {"Fp": p},
     "matrix": [["1", "1/2"], ["0", "1"]],
     "gram":   optional, same shape}

Exit codes: 0 computed (even when the answer is "no form exists"),
1 verification failure, 2 input error, 3 capability error (degree limit,
rationals unsupported, small characteristic, group too large).
All errors are also reported as {"error": {"kind", "detail"}} on stdout.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .certificates import (INFINITESIMAL, INVARIANT, SETTINGS, SKEW,
                           SYMMETRIC, verify_gram)
from .construction import (construct_infinitesimal_form,
                           construct_invariant_form)
from .corpus import DEFAULT_FIELDS, corpus
from .decision import (decide_infinitesimal_form, decide_invariant_form,
                       decide_real)
from .errors import (CAPABILITY_ERRORS, BilinvError, InputError,
                     UnverifiedForm)
from .fields import PrimeField, QQ, is_prime
from .isometry import level_analysis, orthogonal_decomposition
from .linalg import Matrix
from .oracle import DEFAULT_TRIALS, find_nondegenerate, solve_form_space


def _parse_field(spec):
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        p = spec["Fp"]
        if not (isinstance(p, int) and is_prime(p)):
            raise InputError(f"modulus {p!r} is not a prime integer")
        return PrimeField(p)
    raise InputError(f'field must be "Q" or {{"Fp": p}}, got {spec!r}')


def _parse_matrix(field, rows, what):
    if not isinstance(rows, list) or not rows or \
            any(not isinstance(r, list) for r in rows):
        raise InputError(f"{what} must be a non-empty array of arrays")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError(f"{what} must be square")
    try:
        return Matrix(field, [[field.parse(str(e)) for e in r] for r in rows])
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar in {what}: {exc}") from exc


def load_instance(path, need_gram=False):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc
    if "field" not in data or "matrix" not in data:
        raise InputError('instance needs "field" and "matrix"')
    field = _parse_field(data["field"])
    T = _parse_matrix(field, data["matrix"], "matrix")
    gram = None
    if data.get("gram") is not None:
        gram = _parse_matrix(field, data["gram"], "gram")
        if gram.nrows != T.nrows:
            raise InputError("gram and matrix sizes differ")
    if need_gram and gram is None:
        raise InputError('this subcommand requires a "gram" entry')
    return field, T, gram


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _error_exit(exc) -> int:
    payload = {"error": {"kind": type(exc).__name__, "detail": str(exc)}}
    _emit(payload)
    if isinstance(exc, CAPABILITY_ERRORS):
        return 3
    if isinstance(exc, UnverifiedForm):
        return 1
    return 2


# --- subcommand bodies ----------------------------------------------------------

def _cmd_decide(args) -> int:
    _, T, _ = load_instance(args.instance)
    report = decide_invariant_form(T, args.symmetry, seed=args.seed,
                                   degree_limit=args.degree_limit)
    _emit(report.to_json())
    return 0


def _cmd_construct(args) -> int:
    _, T, _ = load_instance(args.instance)
    report = decide_invariant_form(T, args.symmetry, seed=args.seed,
                                   degree_limit=args.degree_limit)
    if report.exists:
        report.witness = construct_invariant_form(T, args.symmetry)
    _emit(report.to_json())
    return 0


def _cmd_infinitesimal(args) -> int:
    _, S, _ = load_instance(args.instance)
    report = decide_infinitesimal_form(S, args.symmetry, seed=args.seed,
                                       degree_limit=args.degree_limit)
    if args.construct and report.exists:
        report.witness = construct_infinitesimal_form(S, args.symmetry)
    _emit(report.to_json())
    return 0


def _cmd_verify(args) -> int:
    _, T, gram = load_instance(args.instance, need_gram=True)
    checks = verify_gram(T, gram, args.symmetry, args.setting)
    ok = all(checks.values())
    _emit({"verified": ok, "checks": checks})
    return 0 if ok else 1


def _cmd_real(args) -> int:
    _, T, _ = load_instance(args.instance)
    report = decide_real(T, seed=args.seed, degree_limit=args.degree_limit)
    _emit(report.to_json())
    return 0


def _cmd_decompose(args) -> int:
    _, T, gram = load_instance(args.instance, need_gram=True)
    report = orthogonal_decomposition(T, gram)
    _emit(report.to_json())
    return 0


def _cmd_level(args) -> int:
    _, T, gram = load_instance(args.instance, need_gram=True)
    report = level_analysis(T, gram)
    _emit(report.to_json())
    return 0


def _cmd_oracle(args) -> int:
    field, M, _ = load_instance(args.instance)
    space = solve_form_space(M, args.symmetry, args.setting)
    witness = find_nondegenerate(space, seed=args.seed, trials=args.trials)
    payload = {
        "dimension": space.dimension,
        "symmetry": args.symmetry,
        "setting": args.setting,
        "seed": args.seed,
        "witness": witness.to_str_rows() if witness is not None else None,
    }
    _emit(payload)
    return 0


# --- selftest --------------------------------------------------------------------

def _selftest_worker(payload):
    index, kind, prime, rows, seed, trials = payload
    field = PrimeField(prime)
    T = Matrix(field, [[int(e) for e in r] for r in rows], coerce=False)
    rec = {"index": index, "kind": kind, "field": f"F{prime}",
           "dim": T.nrows, "results": {}}
    for symmetry in (SYMMETRIC, SKEW):
        if kind == "invariant":
            exists = decide_invariant_form(T, symmetry).exists
        else:
            exists = decide_infinitesimal_form(T, symmetry).exists
        setting = INVARIANT if kind == "invariant" else INFINITESIMAL
        witness = find_nondegenerate(
            solve_form_space(T, symmetry, setting), seed=seed, trials=trials)
        certificate = None
        if exists:
            if kind == "invariant":
                cert = construct_invariant_form(T, symmetry)
            else:
                cert = construct_infinitesimal_form(T, symmetry)
            certificate = all(cert.checks.values())
        rec["results"][symmetry] = {
            "exists": exists,
            "oracle": witness is not None,
            "agree": exists == (witness is not None),
            "certificate": certificate,
        }
    return rec


def _cmd_selftest(args) -> int:
    primes = tuple(int(p) for p in args.fields.split(","))
    half = args.count // 2
    pools = (("invariant", args.seed, args.count - half),
             ("infinitesimal", args.seed + 1, half))
    payloads = []
    index = 0
    for kind, seed, cnt in pools:
        for field, T in corpus(seed, cnt, kind, primes, args.max_dim):
            payloads.append((index, kind, field.p,
                             [[str(e) for e in row] for row in T.rows],
                             args.seed * 1000003 + index, args.trials))
            index += 1
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_selftest_worker, payloads))
    else:
        records = [_selftest_worker(p) for p in payloads]
    checks = [r["results"][s] for r in records for s in (SYMMETRIC, SKEW)]
    summary = {
        "instances": len(records),
        "checks": len(checks),
        "agreements": sum(1 for c in checks if c["agree"]),
        "certificates": sum(1 for c in checks if c["certificate"]),
        "failed_certificates": sum(
            1 for c in checks if c["certificate"] is False),
        "all_agree": all(c["agree"] for c in checks),
    }
    _emit({"seed": args.seed, "summary": summary, "records": records})
    return 0 if summary["all_agree"] else 1


# --- argument parsing --------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bilinv",
        description="Invariant bilinear form decisions, witnesses and "
                    "unipotent isometry analysis over Q and F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gram=False, symmetry=False, setting=False):
        p.add_argument("instance", help="path to a JSON instance file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--degree-limit", type=int, default=24)
        if symmetry:
            p.add_argument("--symmetry", choices=(SYMMETRIC, SKEW),
                           required=True)
        if setting:
            p.add_argument("--setting", choices=SETTINGS, required=True)

    common(sub.add_parser("decide", help="invariant-form existence"),
           symmetry=True)
    common(sub.add_parser("construct",
                          help="existence plus a verified witness"),
           symmetry=True)
    p = sub.add_parser("infinitesimal",
                       help="infinitesimally invariant form existence")
    common(p, symmetry=True)
    p.add_argument("--construct", action="store_true")
    common(sub.add_parser("verify", help="re-check a provided witness"),
           symmetry=True, setting=True)
    common(sub.add_parser("real", help="conjugacy to the inverse"))
    common(sub.add_parser("decompose",
                          help="orthogonal decomposition (needs gram)"))
    common(sub.add_parser("level", help="unipotent level bounds (needs gram)"))
    p = sub.add_parser("oracle", help="solve the invariance equations")
    p.add_argument("instance")
    p.add_argument("--symmetry", choices=(SYMMETRIC, SKEW), required=True)
    p.add_argument("--setting", choices=SETTINGS, default=INVARIANT)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p = sub.add_parser("selftest", help="run the seeded agreement corpus")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--max-dim", type=int, default=6)
    p.add_argument("--fields", default=",".join(str(p) for p in DEFAULT_FIELDS))
    return parser


_COMMANDS = {
    "decide": _cmd_decide,
    "construct": _cmd_construct,
    "infinitesimal": _cmd_infinitesimal,
    "verify": _cmd_verify,
    "real": _cmd_real,
    "decompose": _cmd_decompose,
    "level": _cmd_level,
    "oracle": _cmd_oracle,
    "selftest": _cmd_selftest,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except BilinvError as exc:
        return _error_exit(exc)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

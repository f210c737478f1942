"""Command-line front end.

Every command reads one instance file and writes one result document to
stdout.  Failures write a single JSON error record to stderr and exit with a
code that identifies the failure class (see ``EXIT_*``).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import fileformat
from .core import InvalidInputError, ResourceLimitError, committee_key, committees
from .distribution import WelfareDistribution, sw_dist
from .generate import gen_random
from .models import DEFAULT_PROFILE_CAP, DEFAULT_UNCERTAIN_CAP
from .necessity import exists_nec_swm, is_nec_swm, is_poss_swm
from .optimize import RobustnessQuery, expected_sw, gen_unrobust_instance, max_exp_sw, max_swm, robust_check
from .oracle import (
    oracle_exists_nec_swm,
    oracle_expected_sw,
    oracle_is_nec_swm,
    oracle_is_poss_swm,
    oracle_max_swm,
    oracle_sw_dist,
    oracle_swm_prob,
)
from .swmprob import swm_prob

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4
EXIT_MISMATCH = 5

COMMITTEE_COMMANDS = ("check-poss", "check-nec", "dist", "prob", "expected", "robust")
VERIFIABLE = ("prob", "dist", "check-poss", "check-nec", "expected", "exists-nec", "maxswm")


def _prob(x: Fraction) -> dict:
    return {"fraction": fileformat.fraction_str(x), "decimal": fileformat.decimal_str(x)}


def _committee_out(w) -> list[int] | None:
    return None if w is None else sorted(w)


def _dist_out(dist: WelfareDistribution) -> dict:
    return {str(t): _prob(p) for t, p in dist.items()}


def parse_committee(text: str) -> list[int]:
    try:
        members = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise InvalidInputError(f"committee must be comma-separated integers, got {text!r}") from exc
    if not members:
        raise InvalidInputError("committee is empty")
    return members


def _caps(args) -> tuple[int, int]:
    return args.cap_profiles, args.cap_uncertain


def _fast(command: str, model, w, args):
    """Run one fast-path command; returns (payload, method, work)."""
    cap, ucap = _caps(args)
    if command == "check-poss":
        return {"possibly_swm": is_poss_swm(model, w, cap, ucap)}, "is_poss_swm", None
    if command == "check-nec":
        return {"necessarily_swm": is_nec_swm(model, w)}, "is_nec_swm", None
    if command == "exists-nec":
        return {"committee": _committee_out(exists_nec_swm(model))}, "exists_nec_swm", None
    if command == "dist":
        dist = sw_dist(model, w)
        if args.tau is not None:
            return {"tau": args.tau, "probability": _prob(dist[args.tau])}, "sw_dist", None
        return {"distribution": _dist_out(dist)}, "sw_dist", None
    if command == "prob":
        report = swm_prob(model, w, cap, ucap)
        return {"probability": _prob(report.probability)}, report.method, report.work
    if command == "expected":
        return {"expected": _prob(expected_sw(model, w))}, "closed-form", None
    if command in ("maxswm", "maxexpsw"):
        res = max_swm(model, cap, ucap) if command == "maxswm" else max_exp_sw(model)
        payload = {
            "committee": sorted(res.committee),
            "objective": _prob(res.objective),
            "co_optima": [sorted(c) for c in res.co_optima],
        }
        return payload, res.method, len(res.co_optima)
    if command == "robust":
        query = RobustnessQuery(args.alpha, args.beta)
        ok, p = robust_check(model, w, query, cap, ucap)
        payload = {
            "robust": ok,
            "probability": _prob(p),
            "alpha": fileformat.fraction_str(query.alpha),
            "beta": fileformat.fraction_str(query.beta),
        }
        return payload, "profile-enumeration", None
    raise InvalidInputError(f"unknown command '{command}'")


def _fast_value(quantity: str, model, w, cap: int, ucap: int):
    if quantity == "prob":
        return swm_prob(model, w, cap, ucap).probability
    if quantity == "dist":
        return sw_dist(model, w)
    if quantity == "check-poss":
        return is_poss_swm(model, w, cap, ucap)
    if quantity == "check-nec":
        return is_nec_swm(model, w)
    if quantity == "expected":
        return expected_sw(model, w)
    if quantity == "exists-nec":
        return exists_nec_swm(model)
    if quantity == "maxswm":
        res = max_swm(model, cap, ucap)
        return res.committee, res.objective
    raise InvalidInputError(f"oracle-verify does not support '{quantity}'")


def _oracle_value(quantity: str, model, w, cap: int, ucap: int):
    if quantity == "prob":
        return oracle_swm_prob(model, w, cap, ucap)
    if quantity == "dist":
        return oracle_sw_dist(model, w, cap, ucap)
    if quantity == "check-poss":
        return oracle_is_poss_swm(model, w, cap, ucap)
    if quantity == "check-nec":
        return oracle_is_nec_swm(model, w, cap, ucap)
    if quantity == "expected":
        return oracle_expected_sw(model, w, cap, ucap)
    if quantity == "exists-nec":
        return oracle_exists_nec_swm(model, cap, ucap)
    if quantity == "maxswm":
        return oracle_max_swm(model, cap, ucap)
    raise InvalidInputError(f"oracle-verify does not support '{quantity}'")


def _agree(quantity: str, model, fast, slow, cap: int, ucap: int) -> bool:
    if quantity == "exists-nec":
        # several committees may be necessarily SWM; any one of them is a correct answer
        if fast is None or slow is None:
            return fast is None and slow is None
        return oracle_is_nec_swm(model, fast, cap, ucap)
    return fast == slow


def oracle_verify(model, quantity: str, committee, cap: int, ucap: int) -> list[dict]:
    """Compare fast path and oracle; one row per checked committee."""
    inst = model.instance
    quantities = VERIFIABLE if quantity == "all" else (quantity,)
    rows = []
    for q in quantities:
        if q in COMMITTEE_COMMANDS:
            targets = [frozenset(committee)] if committee else sorted(committees(inst.m, inst.k), key=committee_key)
        else:
            targets = [None]
        for w in targets:
            fast = _fast_value(q, model, w, cap, ucap)
            slow = _oracle_value(q, model, w, cap, ucap)
            rows.append({
                "quantity": q,
                "committee": _committee_out(w),
                "verdict": "EQUAL" if _agree(q, model, fast, slow, cap, ucap) else "MISMATCH",
            })
    return rows


def _format_text(doc: dict) -> str:
    lines = []

    def walk(prefix: str, value):
        if isinstance(value, dict) and set(value) == {"fraction", "decimal"}:
            lines.append(f"{prefix}: {value['fraction']} ({value['decimal']})")
        elif isinstance(value, dict):
            for key, sub in value.items():
                walk(f"{prefix}.{key}" if prefix else str(key), sub)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for j, sub in enumerate(value):
                walk(f"{prefix}[{j}]", sub)
        else:
            lines.append(f"{prefix}: {json.dumps(value)}")

    walk("", doc)
    return "\n".join(lines)


def emit(doc: dict, fmt: str) -> None:
    print(json.dumps(doc, indent=1) if fmt == "json" else _format_text(doc))


def _error(kind: str, message: str, code: int, **extra) -> int:
    record = {"error": kind, "exit_code": code, "message": message}
    record.update(extra)
    print(json.dumps(record), file=sys.stderr)
    return code


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-profiles", type=_positive_int, default=DEFAULT_PROFILE_CAP)
    common.add_argument("--cap-uncertain", type=_positive_int, default=DEFAULT_UNCERTAIN_CAP)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = _Parser(prog="abcwelfare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, help_text, committee=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance", help="instance file (JSON)")
        p.add_argument("--committee", required=committee, help="comma-separated candidate indices, e.g. 3,4")
        return p

    instance_cmd("check-poss", "is the committee possibly SWM", committee=True)
    instance_cmd("check-nec", "is the committee necessarily SWM", committee=True)
    instance_cmd("exists-nec", "find a necessarily SWM committee")
    instance_cmd("dist", "welfare distribution of a committee", committee=True).add_argument(
        "--tau", type=int, help="report only Pr[SW = tau]"
    )
    instance_cmd("prob", "probability that the committee is SWM", committee=True)
    instance_cmd("maxswm", "committee most likely to be SWM")
    instance_cmd("maxexpsw", "committee with the highest expected welfare")
    instance_cmd("expected", "expected welfare of a committee", committee=True)
    p = instance_cmd("robust", "(alpha, beta)-robustness check", committee=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)

    p = sub.add_parser("oracle-verify", parents=[common], help="compare a fast path against brute force")
    p.add_argument("quantity", choices=VERIFIABLE + ("all",))
    p.add_argument("instance", help="instance file (JSON)")
    p.add_argument("--committee", help="check only this committee instead of all of them")

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("--kind", choices=fileformat.MODEL_KINDS, default="candidate_prob")
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--m", type=_positive_int, default=4)
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--support", type=_positive_int, default=3)
    p.add_argument("--menu", help="comma-separated probability menu for candidate_prob")
    p.add_argument("--unrobust", action="store_true", help="single-voter family with no robust committee")
    p.add_argument("--p", default="1/10", help="approval probability for --unrobust")
    p.add_argument("--beta", default="1/2", help="robustness threshold for --unrobust")
    p.add_argument("--out", help="write the instance here instead of stdout")

    p = sub.add_parser("bench", parents=[common], help="time fast paths and the oracle over a directory")
    p.add_argument("directory")
    p.add_argument("--repeat", type=_positive_int, default=1)
    return parser


def _run_gen(args) -> dict | str:
    if args.unrobust:
        family = gen_unrobust_instance(args.m, args.p, args.beta)
        if not family.feasible:
            return {
                "command": "gen",
                "result": {"feasible": False, "value": _prob(family.value)},
                "method": "closed-form",
            }
        model = family.model
    else:
        menu = args.menu.split(",") if args.menu else None
        model = gen_random(args.kind, args.n, args.m, args.k, args.seed, args.support, menu)
    text = fileformat.dumps(model)
    if args.out:
        Path(args.out).write_text(text)
        return {"command": "gen", "result": {"path": args.out, "model": model.kind}, "method": "seeded"}
    return text


BENCH_QUANTITIES = ("dist", "prob", "check-poss", "check-nec", "expected", "exists-nec", "maxswm")


def _run_bench(args) -> dict:
    rows = []
    cap, ucap = _caps(args)
    for path in sorted(Path(args.directory).glob("*.json")):
        model = fileformat.load(path)
        w = next(committees(model.instance.m, model.instance.k))
        for quantity in BENCH_QUANTITIES:
            for side, fn in (("fast", _fast_value), ("oracle", _oracle_value)):
                status = "ok"
                start = time.perf_counter()
                try:
                    for _ in range(args.repeat):
                        fn(quantity, model, w, cap, ucap)
                except ResourceLimitError:
                    status = "cap"
                rows.append({
                    "instance": path.name,
                    "quantity": quantity,
                    "side": side,
                    "status": status,
                    "seconds": round((time.perf_counter() - start) / args.repeat, 6),
                })
    return {"command": "bench", "result": {"rows": rows}, "method": "wall-clock"}


def run(args) -> tuple[dict | str, int]:
    start = time.perf_counter()
    if args.command == "gen":
        return _run_gen(args), EXIT_OK
    if args.command == "bench":
        return _run_bench(args), EXIT_OK
    model = fileformat.load(args.instance)
    committee = parse_committee(args.committee) if args.committee else None
    echo = {"command": args.command, "instance": str(args.instance)}
    if committee is not None:
        echo["committee"] = sorted(committee)
    code = EXIT_OK
    if args.command == "oracle-verify":
        rows = oracle_verify(model, args.quantity, committee, *_caps(args))
        ok = all(r["verdict"] == "EQUAL" for r in rows)
        payload = {"verdict": "EQUAL" if ok else "MISMATCH", "checks": rows}
        method, work = "fast-vs-oracle", len(rows)
        code = EXIT_OK if ok else EXIT_MISMATCH
    else:
        payload, method, work = _fast(args.command, model, committee, args)
    doc = {**echo, "result": payload, "method": method}
    if work is not None:
        doc["work"] = work
    doc["wall_time_s"] = round(time.perf_counter() - start, 6)
    return doc, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        out, code = run(args)
    except InvalidInputError as exc:
        return _error("validation", str(exc), EXIT_VALIDATION)
    except ResourceLimitError as exc:
        return _error("resource-limit", str(exc), EXIT_RESOURCE, required=exc.required, cap=exc.cap)
    except (OSError, json.JSONDecodeError) as exc:
        return _error("validation", str(exc), EXIT_VALIDATION)
    except Exception as exc:  # noqa: BLE001 - report, don't traceback
        return _error("internal", f"{type(exc).__name__}: {exc}", EXIT_INTERNAL)
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        emit(out, args.format)
    if code == EXIT_MISMATCH:
        _error("mismatch", "fast path and oracle disagree", EXIT_MISMATCH)
    return code


if __name__ == "__main__":
    sys.exit(main())

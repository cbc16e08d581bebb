"""Command-line front end: ``qlat classify|factorize|verify|enumerate``.

Exit codes: 0 ran (and, for verify, every check held); 1 a requested
factorization does not exist or a property check failed; 2 bad input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import oracle, suites
from .io import (
    InputError,
    factorization_to_json,
    function_to_json,
    load_function,
    parse_lattice_arg,
)
from .lattice import LatticeError, SizeGuardError
from .polyfn import FunctionTable, is_median_decomposable, is_polynomial, is_sugeno, polynomial_property_report
from .quasipoly import (
    NotQuasiPolynomialError,
    NotTransformedError,
    canonical_factorization,
    enumerate_factorizations,
    hat,
    is_quasi_idempotent,
    is_quasi_polynomial,
    is_transformed_polynomial,
    quasi_idempotency_check,
    quasi_property_report,
    quasi_sugeno_factorization,
    transformed_factorization,
)


@dataclass
class RunReport:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, Any] = field(default_factory=dict)
    exit_status: int = 0
    timing: float | None = None

    def to_json(self) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts,
               "exit_status": self.exit_status}
        if self.timing is not None:
            out["timing_seconds"] = self.timing
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "RunReport":
        return cls(obj["command"], obj["inputs"], obj["verdicts"], obj["exit_status"],
                   obj.get("timing_seconds"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _relabeling(f: FunctionTable) -> dict:
    out = {}
    for name, L in (("domain", f.domain), ("codomain", f.codomain)):
        if L.relabeling is not None and list(L.relabeling) != list(range(L.size)):
            out[name] = list(L.relabeling)
    return out


def _classify(f: FunctionTable) -> dict:
    square = f.domain == f.codomain
    v: dict[str, Any] = {}
    if square:
        v.update(is_polynomial(f).to_json())
        v["sugeno"] = is_sugeno(f)
        v.update(is_median_decomposable(f).to_json())
        v["polynomial_properties"] = polynomial_property_report(f).to_json()
    else:
        v["polynomial"] = v["sugeno"] = v["median_decomposable"] = None
    qp = is_quasi_polynomial(f)
    v.update(qp.to_json())
    if qp.factorization is not None:
        v["canonical_factorization"] = factorization_to_json(qp.factorization)
    v["quasi_idempotent"] = is_quasi_idempotent(f)
    qi = quasi_idempotency_check(f)
    if qi.witness is not None:
        v["quasi_idempotent_witness"] = [list(qi.witness[0]), qi.witness[1]]
    try:
        tp = is_transformed_polynomial(f)
        v["transformed_polynomial"] = tp.holds
        v["transformed_oracle_decided"] = tp.oracle_decided
    except oracle.BudgetExceeded as e:
        v["transformed_polynomial"] = None
        v["transformed_error"] = str(e)
    v["hat_dnf"] = list(hat(f, "dnf"))
    v["hat_cnf"] = list(hat(f, "cnf"))
    v["quasi_properties"] = quasi_property_report(f).to_json()
    v["diagonal"] = f.diagonal().table.tolist()
    return v


def cmd_classify(args) -> RunReport:
    f = load_function(args.file)
    rep = RunReport(["classify", "-f", args.file], {args.file: _digest(args.file)})
    rep.verdicts = _classify(f)
    relabel = _relabeling(f)
    if relabel:
        rep.verdicts["relabeling"] = relabel
    return rep


def cmd_factorize(args) -> RunReport:
    f = load_function(args.file)
    rep = RunReport(["factorize", "-f", args.file, "--mode", args.mode],
                    {args.file: _digest(args.file)})
    try:
        if args.mode == "all":
            facs = enumerate_factorizations(f, oracle.EnumerationBudget())
            rep.verdicts["count"] = len(facs)
            payload: Any = [factorization_to_json(x) for x in facs]
            rep.verdicts["factorizations"] = payload
            if not facs:
                rep.verdicts["witness"] = _quasi_witness(f)
                rep.exit_status = 1
        else:
            fn = {"canonical": canonical_factorization, "sugeno": quasi_sugeno_factorization,
                  "transformed": transformed_factorization}[args.mode]
            fac = fn(f)
            payload = factorization_to_json(fac)
            rep.verdicts["factorization"] = payload
            rep.verdicts["verified"] = fac.verified
    except NotQuasiPolynomialError as e:
        rep.verdicts["error"] = "not quasi-polynomial"
        rep.verdicts["witness"] = [list(e.witness[0]), e.witness[1]]
        rep.exit_status = 1
        return rep
    except NotTransformedError as e:
        rep.verdicts["error"] = str(e)
        wit = _quasi_witness(f)
        if wit is not None:
            rep.verdicts["witness"] = wit
        rep.exit_status = 1
        return rep
    if args.output and rep.exit_status == 0:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return rep


def _quasi_witness(f: FunctionTable):
    w = is_quasi_polynomial(f).witness
    return None if w is None else [list(w[0]), w[1]]


def cmd_verify(args) -> RunReport:
    if args.max_elems < 2 or args.max_elems > 4 or args.max_arity < 1 or args.max_arity > 3:
        raise InputError("--max-elems must be in 2..4 and --max-arity in 1..3")
    rep = RunReport(["verify", "--suite", args.suite, "--max-elems", str(args.max_elems),
                     "--max-arity", str(args.max_arity), "--seed", str(args.seed)])
    progress = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
    results = suites.run_suite(args.suite, args.max_elems, args.max_arity, args.seed, progress)
    rep.verdicts = {r.name: r.to_json() for r in results}
    rep.exit_status = 0 if all(r.passed for r in results) else 1
    return rep


def cmd_enumerate(args) -> RunReport:
    X = parse_lattice_arg(args.domain)
    Y = parse_lattice_arg(args.codomain)
    n = args.arity
    if n < 1:
        raise InputError("--arity must be positive")
    X.check_tuple_space(n)
    Y.check_tuple_space(n)
    rep = RunReport(["enumerate", "--arity", str(n), "--domain", args.domain,
                     "--codomain", args.codomain, "--class", args.cls]
                    + (["--count-only"] if args.count_only else []))
    budget = oracle.EnumerationBudget()
    if args.cls in ("polynomial", "sugeno"):
        if X != Y:
            raise InputError("polynomial and sugeno classes need --domain equal to --codomain")
        tables = [p.table for p in oracle.enumerate_polynomials(n, Y, budget)]
        if args.cls == "sugeno":
            tables = [t for t in tables if t.at_bottom() == Y.bottom and t.at_top() == Y.top]
        keys = [t.values for t in tables]
    elif args.cls == "quasi":
        keys = [np.frombuffer(k, dtype=np.int32) for k in oracle.quasi_image(n, X, Y, budget)]
    else:
        keys = [np.frombuffer(k, dtype=np.int32) for k in oracle.transformed_image(n, X, Y, budget)]
    members = sorted(k.tolist() for k in keys)
    rep.verdicts["count"] = len(members)
    if not args.count_only:
        rep.verdicts["members"] = [
            function_to_json(FunctionTable(n, X, Y, m)) for m in members
        ]
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qlat", description=__doc__.splitlines()[0])
    ap.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="run every recognizer on a function file")
    p.add_argument("-f", "--file", required=True)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("factorize", help="factor a function file")
    p.add_argument("-f", "--file", required=True)
    p.add_argument("--mode", choices=["canonical", "sugeno", "transformed", "all"], default="canonical")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_factorize)

    p = sub.add_parser("verify", help="run the recognizer-vs-oracle equivalence batteries")
    p.add_argument("--suite", choices=list(suites.SUITES), default="all")
    p.add_argument("--max-elems", type=int, default=3)
    p.add_argument("--max-arity", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate a function class by brute force")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--domain", required=True)
    p.add_argument("--codomain", required=True)
    p.add_argument("--class", dest="cls", required=True,
                   choices=["polynomial", "sugeno", "quasi", "transformed"])
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(run=cmd_enumerate)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    t0 = time.perf_counter()
    try:
        rep = args.run(args)
    except (InputError, LatticeError, SizeGuardError, oracle.BudgetExceeded) as e:
        print(f"qlat: error: {e}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.timing:
        rep.timing = round(elapsed, 3)
    print(rep.dumps())
    print(f"qlat: {args.command} finished in {elapsed:.2f}s", file=sys.stderr)
    return rep.exit_status


if __name__ == "__main__":
    sys.exit(main())

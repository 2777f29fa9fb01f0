"""Batch driver: one verification per subcommand, a JSON report, exit code 0/1/2."""

from __future__ import annotations

import argparse
import json
import sys
import time
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bottklw, deform, nestcore, srcomplex
from .exactpoly import Field, ParseError, PolyRing
from .groebner import Budget, BudgetExceeded, colength

SCHEMA = "1"
EXIT = {"pass": 0, "fail": 1, "budget-exceeded": 2, "error": 2}


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    field: str = "QQ"
    seed: int = 0
    samples: int = 1000
    threads: int = 1
    out: str | None = None
    budget_pairs: int = 10**6
    budget_degree: int = 60
    payload: list = dataclasses.field(default_factory=list)

    @property
    def budget(self) -> Budget:
        return Budget(self.budget_pairs, self.budget_degree)

    def params(self) -> dict:
        out = {"n": self.n, "field": self.field, "seed": self.seed, "samples": self.samples,
               "threads": self.threads, "budget_pairs": self.budget_pairs, "budget_degree": self.budget_degree}
        if self.payload:
            out["payload"] = self.payload
        return out


@dataclass
class Outcome:
    passed: bool
    values: dict
    witnesses: list = dataclasses.field(default_factory=list)


def jsonable(obj):
    """Exact values as strings, tuples as lists, dict keys as strings."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return "inf" if obj == float("inf") else repr(obj)
    if isinstance(obj, dict):
        return {_key(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "to_string"):
        return obj.to_string()
    return str(obj)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _field(cfg: RunConfig) -> Field:
    return Field.parse(cfg.field)


def _need_n(cfg: RunConfig, default: int) -> int:
    return default if cfg.n is None else cfg.n


def _parse_ideal(ring: PolyRing, text: str) -> list:
    return [ring.parse(part) for part in text.split(",") if part.strip()]


def _payload_ideals(cfg: RunConfig, ring: PolyRing) -> list[list]:
    """Payload items are ideals (comma-separated generators); ';' also separates ideals."""
    chunks = []
    for item in cfg.payload:
        chunks.extend(c for c in item.split(";") if c.strip())
    return [_parse_ideal(ring, c) for c in chunks]


def _mono_strings(ring: PolyRing, monos) -> list[str]:
    return [ring.monomial(m).to_string() for m in monos]


# ---------------------------------------------------------------- commands


def cmd_ideal(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 2)
    setup = nestcore.build_setup(n, _field(cfg))
    division = nestcore.ideal_I_division(setup)
    closed = nestcore.ideal_I_closed_form(setup)
    L = nestcore.ideal_L(setup)
    diffs = [f"f_{i + 1}" for i, (a, b) in enumerate(zip(division.f, closed.f)) if a != b]
    diffs += [f"F_{i + 1}" for i, (a, b) in enumerate(zip(division.F, closed.F)) if a != b]
    values = {"f": [p.to_string() for p in division.f], "F": [p.to_string() for p in division.F],
              "g": [p.to_string() for p in L.g], "G": [p.to_string() for p in L.G],
              "routes_agree": not diffs}
    return Outcome(not diffs, values, [{"differs": diffs}] if diffs else [])


def cmd_verify_gb(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 4)
    setup = nestcore.build_setup(n, _field(cfg))
    rep = nestcore.verify_claimed_gb(setup, cfg.budget)
    lm = nestcore.check_leading_monomials(setup)
    values = {"basis_size": rep.size, "pairs_checked": rep.pairs_checked, "s_pair_criterion": rep.groebner,
              "leading_monomials_generate_K": rep.lm_ideal_is_K, "leading_monomial_checks": lm.checked}
    witnesses = []
    if rep.failing_pair is not None:
        witnesses.append({"failing_pair": list(rep.failing_pair)})
    witnesses += lm.mismatches
    ok = rep.ok and lm.ok
    if not ok and not witnesses:
        witnesses.append({"leading_monomials_generate_K": rep.lm_ideal_is_K})
    return Outcome(ok, values, witnesses)


def cmd_verify_initial(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 2)
    setup = nestcore.build_setup(n, _field(cfg))
    rep = nestcore.verify_initial(setup, cfg.budget)
    hil = nestcore.hilbert_comparison(setup, budget=cfg.budget)
    ring = setup.ring_A
    values = {"initial": _mono_strings(ring, rep.initial), "K": _mono_strings(ring, rep.K),
              "gb_size": rep.basis_size, "initial_equals_K": rep.equal, "hilbert_J": hil["J"],
              "hilbert_K": hil["K"], "hilbert_equal": hil["equal"], "multiplicity_K": hil["multiplicity_K"]}
    ok = rep.equal and hil["equal"]
    witnesses = []
    if not ok:
        extra = sorted(set(values["initial"]) ^ set(values["K"]))
        witnesses.append({"symmetric_difference": extra, "hilbert_J": hil["J"], "hilbert_K": hil["K"]})
    return Outcome(ok, values, witnesses)


def cmd_verify_intermediate(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 2)
    setup = nestcore.build_setup(n, _field(cfg))
    L = nestcore.ideal_L(setup)
    values, witnesses = {}, []
    for j in (1, 2, 3, 4):
        rep = nestcore.intermediate_initial_check(setup, j, L, cfg.budget)
        values[f"j={j}"] = {"homogeneous": rep.homogeneous, "initial_equals_K": rep.initial == rep.K,
                            "generators": len(rep.initial)}
        if not rep.ok:
            witnesses.append({"j": j, "initial": [list(m) for m in rep.initial], "K": [list(m) for m in rep.K]})
    return Outcome(not witnesses, values, witnesses)


def cmd_fiber_check(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 4)
    fld = _field(cfg)
    if fld.char == 0:
        fld = Field(32003)
    sweep = nestcore.oracle_sweep(n, cfg.samples, cfg.seed, fld)
    values = {"field": str(fld), "samples": sweep.samples, "agree": sweep.agree, "on_fiber": sweep.true_count}
    witnesses = list(sweep.mismatches[:5])
    ok = sweep.ok
    if n == 4:
        f2 = nestcore.jordan_sweep_f2(4)
        gen = nestcore.jordan_sweep_generic(4, fld, cfg.seed)
        values["jordan_f2"] = {"cases": f2.samples, "mismatches": len(f2.mismatches)}
        values["jordan_generic"] = {"cases": gen.samples, "mismatches": len(gen.mismatches)}
        witnesses += f2.mismatches[:5] + gen.mismatches[:5]
        ok = ok and f2.ok and gen.ok
    return Outcome(ok, values, witnesses)


TANGENT_BATTERY = [
    ("x^2, y^2", "x, y^2", "==", 8),
    ("x, y^3", "x, y^2", "==", 6),
    ("x, y^4", "x, y^2", "==", 8),
    ("x, y^5", "x, y^2", "==", 10),
    ("x^2, x*y, y^2", "x, y", ">", 6),
]


def cmd_tangent(cfg: RunConfig) -> Outcome:
    ring = PolyRing(["x", "y"], _field(cfg))
    ideals = _payload_ideals(cfg, ring)
    if ideals:
        if len(ideals) != 2:
            raise ValueError("tangent expects two ideals: larger subscheme, then smaller")
        d = nestcore.tangent_dim(ideals[0], ideals[1])
        return Outcome(True, {"tangent_dim": d, "colengths": [colength(ideals[0]), colength(ideals[1])]})
    values, witnesses = {}, []
    for big, small, rel, target in TANGENT_BATTERY:
        d = nestcore.tangent_dim(_parse_ideal(ring, big), _parse_ideal(ring, small))
        label = f"({big}) in ({small})"
        values[label] = d
        if not (d == target if rel == "==" else d > target):
            witnesses.append({"pair": label, "found": d, "expected": f"{rel} {target}"})
    return Outcome(not witnesses, values, witnesses)


def cmd_complex_facets(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 5)
    rep = srcomplex.verify_counts(n)
    ok = rep.pop("ok")
    witnesses = [] if ok else [{k: v for k, v in rep.items()}]
    return Outcome(ok, rep, witnesses)


def cmd_complex_homology(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 2)
    cx = srcomplex.delta_complex(n)
    if cfg.field.upper() in ("ZZ", "Z"):
        hom = srcomplex.reduced_homology(cx, "ZZ")
        values = {"coefficients": "ZZ", "betti": hom.betti, "torsion": hom.torsion, "f_vector": hom.f_vector}
        return Outcome(True, values)
    char = _field(cfg).char
    hom = srcomplex.reduced_homology(cx, char)
    reis = srcomplex.reisner_check(cx, char)
    values = {"coefficients": hom.coefficients, "betti": hom.betti, "f_vector": hom.f_vector,
              "links_checked": reis["links_checked"], "cohen_macaulay": reis["cohen_macaulay"],
              "checked_against_expectation": char == 0}
    if char == 0:
        return Outcome(reis["cohen_macaulay"], values, reis["failures"][:5])
    # positive characteristic: reported, no claim to check
    return Outcome(True, values, reis["failures"][:5])


def cmd_bott_table(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 4)
    table = bottklw.cohomology_tables(n)
    computed = table.certified()
    expected = bottklw.expected_table(n)
    tagged = table.tagged()
    values = {"table": table.to_json(), "tagged": sorted(tagged), "pairs": table.pairs}
    witnesses = []
    for pq in sorted(set(computed) | set(expected)):
        if computed.get(pq, 0) != expected.get(pq, 0):
            witnesses.append({"entry": list(pq), "computed": computed.get(pq, 0), "expected": expected.get(pq, 0)})
    if tagged != bottklw.expected_pairs(n):
        witnesses.append({"tagged": sorted(tagged), "expected": sorted(bottklw.expected_pairs(n))})
    return Outcome(not witnesses, values, witnesses)


def cmd_bott_degree(cfg: RunConfig) -> Outcome:
    n = _need_n(cfg, 4)
    degree = bottklw.klw_degree(n)
    formula = bottklw.degree_formula(n)
    facets = srcomplex.multiplicity_from_facets(n)
    values = {"degree": degree, "formula": formula, "c_facets": facets, "formula_match": degree == formula}
    ok = degree == formula == facets
    return Outcome(ok, values, [] if ok else [values])


def cmd_deform_cleave(cfg: RunConfig) -> Outcome:
    ring = deform.plane_ring(_field(cfg))
    ideals = _payload_ideals(cfg, ring)
    if ideals:
        if len(ideals) != 2:
            raise ValueError("deform-cleave expects two ideals I ⊆ J")
        pair = deform.cleave_pair(ideals[0], ideals[1], cfg.seed, budget=cfg.budget)
        values = _pair_values(pair)
        return Outcome(pair.ok, values, [] if pair.ok else [values])
    x, y = ring.gens()
    values, witnesses = {}, []
    for r in range(2, 6):
        fam = deform.cleave_family([x, y ** r], x, y, budget=cfg.budget)
        values[f"(x, y^{r})"] = {"family": fam.to_strings(), "checks": fam.checks}
        if not fam.ok:
            witnesses.append({"r": r, "checks": fam.checks})
    for I, J in (([x, y ** 3], [x, y ** 2]), ([x ** 2, x * y, y ** 2], [x, y ** 2])):
        pair = deform.cleave_pair(I, J, cfg.seed, budget=cfg.budget)
        label = f"({', '.join(g.to_string() for g in I)}) in ({', '.join(g.to_string() for g in J)})"
        values[label] = _pair_values(pair)
        if not pair.ok:
            witnesses.append({"pair": label})
    return Outcome(not witnesses, values, witnesses)


def _pair_values(pair: deform.CleavedPair) -> dict:
    return {"case": pair.case, "trace": pair.trace, "I_t": pair.larger.to_strings(),
            "J_t": pair.smaller.to_strings(), "inclusion": pair.inclusion,
            "I_checks": pair.larger.checks, "J_checks": pair.smaller.checks}


def cmd_deform_gin(cfg: RunConfig) -> Outcome:
    ring = deform.plane_ring(_field(cfg))
    ideals = _payload_ideals(cfg, ring) or [_parse_ideal(ring, "y - x^2, x^3")]
    values = {}
    for I in ideals:
        label = ", ".join(g.to_string() for g in I)
        values[f"({label})"] = _mono_strings(ring, deform.gin(I, cfg.seed, budget=cfg.budget))
    return Outcome(True, values)


def cmd_search_reducible(cfg: RunConfig) -> Outcome:
    d = _need_n(cfg, 5)
    w = deform.reducible_search(d)
    values = w.to_json()
    ok = w.dim_grassmannians > w.bound
    return Outcome(ok, values, [] if ok else [values])


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "ideal": cmd_ideal,
    "verify-gb": cmd_verify_gb,
    "verify-initial": cmd_verify_initial,
    "verify-intermediate": cmd_verify_intermediate,
    "fiber-check": cmd_fiber_check,
    "tangent": cmd_tangent,
    "complex-facets": cmd_complex_facets,
    "complex-homology": cmd_complex_homology,
    "bott-table": cmd_bott_table,
    "bott-degree": cmd_bott_degree,
    "deform-cleave": cmd_deform_cleave,
    "deform-gin": cmd_deform_gin,
    "search-reducible": cmd_search_reducible,
}


# ---------------------------------------------------------------- driver


def run(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.command not in COMMANDS:
        raise SystemExit(f"unknown subcommand {cfg.command!r}")
    start = time.perf_counter()
    try:
        outcome = COMMANDS[cfg.command](cfg)
        status = "pass" if outcome.passed else "fail"
        values, witnesses = outcome.values, outcome.witnesses
        if status == "fail" and not witnesses:
            witnesses = [{"values": values}]
    except BudgetExceeded as exc:
        status, values, witnesses = "budget-exceeded", {}, [{"limit": exc.what, "value": exc.limit}]
    except ParseError as exc:
        status, values, witnesses = "error", {}, [{"parse_error": str(exc), "position": exc.position}]
    except (ValueError, ArithmeticError) as exc:
        status, values, witnesses = "error", {}, [{"error": f"{type(exc).__name__}: {exc}"}]
    report = {
        "schema": SCHEMA,
        "command": cfg.command,
        "params": cfg.params(),
        "status": status,
        "values": jsonable(values),
        "witnesses": jsonable(witnesses),
        "timing-ms": round((time.perf_counter() - start) * 1000, 3),
    }
    return report, EXIT[status]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nestedhilb", description=__doc__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("payload", nargs="*",
                        help="ideals as comma-separated generators; '-' reads them from stdin, one per line")
    parser.add_argument("--n", type=int, default=None)
    parser.add_argument("--field", default="QQ", help="QQ, a prime p, GF(p), or ZZ for complex-homology")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--threads", type=int, default=1, help="worker cap; the current build runs one worker")
    parser.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    parser.add_argument("--budget-pairs", type=int, default=10**6)
    parser.add_argument("--budget-degree", type=int, default=60)
    return parser


def config_from_args(argv: list[str] | None = None, stdin=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    payload = []
    for item in args.payload:
        if item == "-":
            text = (stdin or sys.stdin).read()
            payload.extend(line.strip() for line in text.splitlines() if line.strip())
        else:
            payload.append(item)
    return RunConfig(args.command, args.n, args.field, args.seed, args.samples, args.threads, args.out,
                     args.budget_pairs, args.budget_degree, payload)


def summary_line(report: dict) -> str:
    return f"{report['command']} [{report['status']}] {report['timing-ms']} ms"


def main(argv: list[str] | None = None) -> int:
    cfg = config_from_args(argv)
    report, code = run(cfg)
    text = json.dumps(report, indent=2, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
        print(summary_line(report))
    else:
        print(text)
        print(summary_line(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())

"""Seeded verification suites and machine-readable reports.

A :class:`SuiteConfig` enumerates what to check (polygon relations, rank
tables, the distinguished cocycles, the dethad identity, the
characteristic-p lift) over which polygon ranks, fields and seeds.
:func:`run_suite` executes every combination — optionally fanning the
independent tasks out to a process pool — and assembles a :class:`Report`
that serializes to JSON or markdown deterministically: identical configs
give byte-identical JSON once timings are excluded.

Rank checks over the rationals are compared against the expected tables;
over a prime field they are recorded with the verdict "exploratory", since
the expected values are statements about characteristic zero.
"""

from __future__ import annotations

import concurrent.futures
import json
import time
from dataclasses import dataclass, field as dc_field, asdict
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cohomology import (bockstein_lift, complex_ranks, dethad,
                         face_cocycle_spans_kernel, heptagon_cocycle,
                         edge_scalar_product, nontriviality_check,
                         normalize_first_three_columns, sym2_matrix,
                         coboundary_matrix)
from .coloring import faces
from .fields import QQ, field_from_name
from .linalg import Matrix, det
from .polygon import (ParameterMatrix, sample_generic_parameters,
                      slot_scheme, verify_polygon_relation)

CHECK_NAMES = ("relation", "cocycle4", "ranks", "cocycle5", "dethad",
               "bockstein")

# Expected quadratic complex data per polygon rank over the rationals:
# (dim low, dim middle, dim high), rank of the low and high coboundaries,
# middle cohomology dimension.
EXPECTED_TABLES = {
    2: ((10, 15, 6), 9, 6, 0),
    3: ((21, 42, 21), 20, 21, 1),
    4: ((36, 90, 55), 35, 55, 0),
    5: ((55, 165, 120), 54, 111, 0),
}


@dataclass(frozen=True)
class SuiteConfig:
    """What to run: polygon ranks, fields, seeds and enabled checks."""

    ns: Tuple[int, ...] = (3,)
    field_names: Tuple[str, ...] = ("Q",)
    seeds: Tuple[int, ...] = (0, 1, 2, 3, 4)
    bound: int = 10
    trials: int = 50
    checks: Tuple[str, ...] = CHECK_NAMES
    bockstein_prime: int = 3
    bockstein_k: int = 1
    bockstein_l: int = 1
    tamper: bool = False
    params_json: Optional[str] = None
    jobs: int = 1

    def validate(self) -> None:
        if not self.checks:
            raise ValueError("at least one check must be enabled")
        unknown = set(self.checks) - set(CHECK_NAMES)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        for name in self.field_names:
            field_from_name(name)  # raises on bad names / q = 2
        if not self.ns:
            raise ValueError("at least one polygon rank is required")
        if self.bockstein_prime == 2:
            raise ValueError("the lift prime must be odd")


@dataclass(frozen=True)
class CheckResult:
    name: str
    n: int
    field: str
    seed: Optional[int]
    verdict: str            # "holds" | "fails" | "exploratory"
    details: dict

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class Report:
    meta: dict
    checks: List[CheckResult]
    rank_tables: List[dict]
    timings: Dict[str, float] = dc_field(default_factory=dict, compare=False)

    @property
    def all_pass(self) -> bool:
        return all(c.verdict != "fails" for c in self.checks)


def _parameters(task: dict) -> ParameterMatrix:
    if task.get("params_json"):
        return ParameterMatrix.from_json(task["params_json"])
    fld = field_from_name(task["field"])
    return sample_generic_parameters(task["n"], fld, seed=task["seed"],
                                     bound=task["bound"])


def _fmt(fld, value) -> str:
    return fld.format(value)


def _run_task(task: dict) -> dict:
    """Execute one (check, n, field, seed) combination; returns a plain
    dict so the result survives a process boundary."""
    name = task["check"]
    t0 = time.perf_counter()
    M = _parameters(task)
    scheme = slot_scheme(M.n)
    fld = M.field
    verdict = "holds"
    details: dict = {}
    table = None

    if name == "relation":
        tamper = (1, 0, 0, 1) if task.get("tamper") else None
        res = verify_polygon_relation(M, scheme, tamper=tamper)
        verdict = "holds" if res.holds else "fails"
        if res.witness is not None:
            r, c, lv, rv = res.witness
            details["witness"] = {"row": r, "col": c,
                                  "lhs": _fmt(fld, lv), "rhs": _fmt(fld, rv)}

    elif name == "ranks":
        rt = complex_ranks(M, scheme)
        table = {"n": M.n, "field": task["field"], "seed": task["seed"],
                 "dims": list(rt.dims), "rank_low": rt.rank_low,
                 "rank_high": rt.rank_high,
                 "middle_cohomology_dim": rt.middle_cohomology_dim}
        if task["field"] == "Q":
            dims, rl, rh, mid = EXPECTED_TABLES[M.n]
            ok = (rt.dims == dims and rt.rank_low == rl
                  and rt.rank_high == rh
                  and rt.middle_cohomology_dim == mid)
            verdict = "holds" if ok else "fails"
            if not ok:
                details["expected"] = {"dims": list(dims), "rank_low": rl,
                                       "rank_high": rh, "middle": mid}
        else:
            verdict = "exploratory"
        details["table"] = table

    elif name == "cocycle4":
        spans, ker_dim = face_cocycle_spans_kernel(M, scheme)
        details["kernel_dim"] = ker_dim
        if task["field"] == "Q":
            verdict = "holds" if spans else "fails"
        else:
            verdict = "exploratory"
            details["spans"] = spans

    elif name == "cocycle5":
        vec = heptagon_cocycle(M, scheme).flatten()
        high = coboundary_matrix(M, scheme, "high")
        in_kernel = all(v == fld.zero for v in high.matvec(vec))
        nt = nontriviality_check(M, scheme)
        verdict = "holds" if (in_kernel and nt.nontrivial) else "fails"
        details["in_kernel_high"] = in_kernel
        details["nontrivial"] = nt.nontrivial
        if nt.witness_products:
            details["witness_products"] = [
                _fmt(fld, v) for v in nt.witness_products]

    elif name == "dethad":
        Mn = normalize_first_three_columns(M)
        block = Matrix([[Mn.entries[r][c] for c in range(3, 6)]
                        for r in range(3)], fld)
        lhs = det(sym2_matrix(Mn, 7))
        rhs = -dethad(block)
        verdict = "holds" if lhs == rhs else "fails"
        if verdict == "fails":
            details["lhs"] = _fmt(fld, lhs)
            details["rhs"] = _fmt(fld, rhs)

    elif name == "bockstein":
        res = bockstein_lift(M, scheme, prime=task["prime"], k=task["k"],
                             l=task["l"], trials=task["trials"],
                             seed=task["seed"] or 0)
        ok = res.divisible and res.cocycle_mod_p
        verdict = "holds" if ok else "fails"
        details.update({"prime": res.prime, "k": res.k, "l": res.l,
                        "trials": res.trials,
                        "nonzero_mod_p": res.nonzero_mod_p})
        if res.counterexample is not None:
            trial, p, value = res.counterexample
            details["counterexample"] = {"trial": trial, "simplex": p,
                                         "value_mod_p": value}
    else:
        raise ValueError(f"unknown check {name!r}")

    return {
        "name": name, "n": M.n, "field": task["field"],
        "seed": task["seed"], "verdict": verdict, "details": details,
        "table": table, "elapsed": time.perf_counter() - t0,
        "key": task["key"],
    }


def _build_tasks(cfg: SuiteConfig) -> List[dict]:
    tasks = []

    def add(check, n, field_name, seed, **extra):
        key = f"{check}/n{n}/{field_name}/s{seed}"
        tasks.append({"check": check, "n": n, "field": field_name,
                      "seed": seed, "bound": cfg.bound,
                      "params_json": cfg.params_json, "key": key, **extra})

    for n in cfg.ns:
        for fname in cfg.field_names:
            for seed in cfg.seeds:
                if "relation" in cfg.checks:
                    add("relation", n, fname, seed, tamper=cfg.tamper)
        if "ranks" in cfg.checks:
            for fname in cfg.field_names:
                add("ranks", n, fname, cfg.seeds[0])
        if "cocycle4" in cfg.checks:
            add("cocycle4", n, "Q", cfg.seeds[0])
        if n == 3 and "cocycle5" in cfg.checks:
            add("cocycle5", n, "Q", cfg.seeds[0])
        if n == 3 and "dethad" in cfg.checks:
            for seed in cfg.seeds:
                add("dethad", n, "Q", seed)
        if n == 3 and "bockstein" in cfg.checks:
            add("bockstein", n, "Q", cfg.seeds[0], prime=cfg.bockstein_prime,
                k=cfg.bockstein_k, l=cfg.bockstein_l, trials=cfg.trials)
    return tasks


def run_suite(cfg: SuiteConfig) -> Report:
    """Run every enabled check over all (n, field, seed) combinations.

    Identical configs produce identical reports apart from timings.
    """
    cfg.validate()
    tasks = _build_tasks(cfg)
    if cfg.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(cfg.jobs) as pool:
            raw = list(pool.map(_run_task, tasks))
    else:
        raw = [_run_task(t) for t in tasks]

    checks = []
    tables = []
    timings = {}
    for r in raw:
        checks.append(CheckResult(name=r["name"], n=r["n"], field=r["field"],
                                  seed=r["seed"], verdict=r["verdict"],
                                  details=r["details"]))
        if r["table"] is not None:
            tables.append(r["table"])
        timings[r["key"]] = r["elapsed"]

    meta = {
        "artifact": "polycoh",
        "version": __version__,
        "config": {
            "ns": list(cfg.ns), "fields": list(cfg.field_names),
            "seeds": list(cfg.seeds), "bound": cfg.bound,
            "trials": cfg.trials, "checks": list(cfg.checks),
            "bockstein": {"prime": cfg.bockstein_prime,
                          "k": cfg.bockstein_k, "l": cfg.bockstein_l},
            "tamper": cfg.tamper,
        },
    }
    return Report(meta=meta, checks=checks, rank_tables=tables,
                  timings=timings)


def emit_report(report: Report, fmt: str = "json",
                include_timings: bool = False) -> str:
    """Serialize a report as canonical JSON or as markdown tables."""
    if fmt == "json":
        payload = {
            "meta": report.meta,
            "checks": [c.to_dict() for c in report.checks],
            "rank_tables": report.rank_tables,
        }
        if include_timings:
            payload["timings"] = report.timings
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str) -> Report:
    """Parse a JSON report back into an equal Report value."""
    data = json.loads(text)
    checks = [CheckResult(**c) for c in data["checks"]]
    return Report(meta=data["meta"], checks=checks,
                  rank_tables=data["rank_tables"],
                  timings=data.get("timings", {}))


def _markdown(report: Report) -> str:
    lines = ["# polycoh verification report", ""]
    cfg = report.meta.get("config", {})
    lines.append(f"polygon ranks: {cfg.get('ns')}; fields: "
                 f"{cfg.get('fields')}; seeds: {cfg.get('seeds')}")
    lines.append("")
    if report.rank_tables:
        lines.append("## Rank tables")
        lines.append("")
        lines.append("| n | field | complex | ranks | middle cohomology |")
        lines.append("|---|-------|---------|-------|-------------------|")
        for t in report.rank_tables:
            d = t["dims"]
            lines.append(
                f"| {t['n']} | {t['field']} "
                f"| {d[0]} → {d[1]} → {d[2]} "
                f"| {t['rank_low']}/{t['rank_high']} "
                f"| H = {t['middle_cohomology_dim']} |")
        lines.append("")
    lines.append("## Checks")
    lines.append("")
    lines.append("| check | n | field | seed | verdict |")
    lines.append("|-------|---|-------|------|---------|")
    for c in report.checks:
        lines.append(f"| {c.name} | {c.n} | {c.field} | {c.seed} "
                     f"| {c.verdict} |")
    lines.append("")
    lines.append(f"overall: {'PASS' if report.all_pass else 'FAIL'}")
    return "\n".join(lines) + "\n"

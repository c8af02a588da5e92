"""One-call classification over all detectors, independent witness
re-validation, and the empirical dichotomy scanner."""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Sequence

from . import ip, op, sop, talagrand
from .core import Epsilon, EvalTable, ThresholdPair, serialize, transpose
from .errors import DividingLinesError, SearchBudgetExceeded
from .generators import GeneratorConfig, generate
from .op import AlternationWitness, LadderWitness
from .ip import ShatterWitness
from .sop import ChainWitness

SCHEMA = "dl-report/1"

Witness = LadderWitness | AlternationWitness | ShatterWitness | ChainWitness


@dataclass(frozen=True)
class ClassifyParams:
    """Thresholds, separation, cutoffs, and budgets for a classification run."""

    s: float = 0.0
    r: float = 1.0
    eps: float = 1.0
    min_ladder: int = 4
    min_ip_dim: int = 2
    min_chain: int = 3
    exact_limit: int = op.DEFAULT_EXACT_LIMIT
    k_max: int = 2
    distinct_coords: bool = True
    tuple_budget: int = talagrand.DEFAULT_TUPLE_BUDGET

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "r": self.r,
            "eps": self.eps,
            "min_ladder": self.min_ladder,
            "min_ip_dim": self.min_ip_dim,
            "min_chain": self.min_chain,
            "exact_limit": self.exact_limit,
            "k_max": self.k_max,
            "distinct_coords": self.distinct_coords,
            "tuple_budget": self.tuple_budget,
        }


def validate_witness(t: EvalTable, w: Witness):
    """Re-check a witness's defining inequalities directly from the table.

    Returns (ok, first_violation) where first_violation is None or a
    (location, description) pair.
    """
    violation = w.first_violation(t)
    return violation is None, violation


def witness_from_dict(d: dict) -> Witness:
    kind = d.get("kind")
    if kind == "ladder":
        return LadderWitness.from_dict(d)
    if kind == "alternation":
        return AlternationWitness.from_dict(d)
    if kind == "shatter":
        return ShatterWitness.from_dict(d)
    if kind == "chain":
        return ChainWitness.from_dict(d)
    raise ValueError(f"unknown witness kind {kind!r}")


def table_digest(t: EvalTable) -> str:
    return hashlib.sha256(serialize(t).encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class ClassificationReport:
    table_digest: str
    parameters: ClassifyParams
    sections: dict
    errors: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "table_digest": self.table_digest,
            "parameters": self.parameters.to_dict(),
            **self.sections,
            "errors": [list(e) for e in self.errors],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _checked_witness(t: EvalTable, w: Witness | None) -> dict | None:
    if w is None:
        return None
    ok, violation = validate_witness(t, w)
    if not ok:
        raise DividingLinesError(f"emitted witness failed re-validation: {violation}")
    return w.to_dict()


def classify(t: EvalTable, params: ClassifyParams = ClassifyParams()) -> ClassificationReport:
    """Run every detector, re-validate all witnesses, assemble the report.

    A failing component contributes an explicit error entry instead of a
    silently missing section.
    """
    th = ThresholdPair(params.s, params.r)
    eps = Epsilon(params.eps)
    sections: dict = {}
    errors: list[tuple[str, str]] = []

    def run(name: str, fn):
        try:
            sections[name] = fn()
        except DividingLinesError as exc:
            sections[name] = None
            errors.append((name, f"{type(exc).__name__}: {exc}"))

    def run_ladder():
        res = op.max_ladder(t, th, params.exact_limit)
        return {
            "length": res.length,
            "exact": res.exact,
            "witness": _checked_witness(t, res.witness),
        }

    def run_alt(variant):
        def go():
            res = op.alternation_rank(t, eps, variant, params.exact_limit)
            return {
                "rank": res.rank,
                "exact": res.exact,
                "witness": _checked_witness(t, res.witness),
            }

        return go

    def run_shatter(table):
        def go():
            res = ip.shattering_dimension(table, th, params.exact_limit)
            return {
                "dim": res.dim,
                "exact": res.exact,
                "witness": _checked_witness(table, res.witness),
            }

        return go

    def run_chain():
        res = sop.strict_chain(t, eps)
        return {"m": res.m, "cols": list(res.cols), "step_rows": list(res.step_rows),
                "exact": True}

    def run_sop_literal():
        try:
            w = sop.sop_witness(t, eps, max(2, params.min_chain), params.exact_limit)
        except SearchBudgetExceeded:
            return {"status": "budget_exceeded", "witness": None}
        if w is None:
            return {"status": "none", "witness": None}
        return {"status": "found", "witness": _checked_witness(t, w)}

    def run_talagrand():
        k_min, reports = talagrand.almost_nip_scan(
            t, range(t.n_rows), th, params.k_max,
            distinct_coords=params.distinct_coords, budget=params.tuple_budget,
        )
        return {"k_min": k_min, "reports": [r.to_dict() for r in reports]}

    run("ladder", run_ladder)
    run("alternation_ii", run_alt("ii"))
    run("alternation_iii", run_alt("iii"))
    run("shattering_primal", run_shatter(t))
    run("shattering_dual", run_shatter(transpose(t)))
    run("strict_chain", run_chain)
    run("sop_literal", run_sop_literal)
    run("talagrand", run_talagrand)

    ladder_len = sections["ladder"]["length"] if sections.get("ladder") else 0
    ip_dim = sections["shattering_primal"]["dim"] if sections.get("shattering_primal") else 0
    chain_m = sections["strict_chain"]["m"] if sections.get("strict_chain") else 0
    sections["verdicts"] = {
        "op_detected": ladder_len >= params.min_ladder,
        "op_trigger": {"ladder_length": ladder_len, "cutoff": params.min_ladder},
        "ip_detected": ip_dim >= params.min_ip_dim,
        "ip_trigger": {"shattering_dim": ip_dim, "cutoff": params.min_ip_dim},
        "sop_detected": chain_m >= params.min_chain,
        "sop_trigger": {"strict_chain": chain_m, "cutoff": params.min_chain},
    }
    return ClassificationReport(table_digest(t), params, sections, tuple(errors))


def _worker_count() -> int:
    # DL_THREADS controls parallelism only; results never depend on it
    try:
        return max(1, int(os.environ.get("DL_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ScanSummary:
    trials: int
    seed: int
    long_ladder_count: int
    explained_count: int
    exception_count: int
    exceptions: tuple[dict, ...]
    trial_digests: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "trials": self.trials,
            "seed": self.seed,
            "long_ladder_count": self.long_ladder_count,
            "explained_count": self.explained_count,
            "exception_count": self.exception_count,
            "exceptions": [dict(e) for e in self.exceptions],
            "trial_digests": list(self.trial_digests),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def dichotomy_scan(
    gen: GeneratorConfig,
    trials: int,
    seed: int,
    params: ClassifyParams = ClassifyParams(),
    exception_cap: int = 25,
) -> ScanSummary:
    """Empirical stable <=> NIP + NSOP scan over seeded generated tables.

    Tabulates tables with ladder >= min_ladder and, among those, how many
    show IP (dim >= min_ip_dim) or SOP (chain >= min_chain).  Tables with a
    long ladder but neither explanation are serialized in full (capped);
    at finite scale they are expected data, not failures.
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")

    def one_trial(i: int):
        cfg_seed = [seed, i] if gen.kind == "random_table" else gen.seed
        table = generate(
            GeneratorConfig(**{**gen.__dict__, "seed": cfg_seed})
        )
        report = classify(table, params)
        return table, report

    results = []
    workers = _worker_count()
    if workers > 1 and trials > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_trial, range(trials)))
    else:
        results = [one_trial(i) for i in range(trials)]

    long_ladder = 0
    explained = 0
    exceptions: list[dict] = []
    digests = []
    for i, (table, report) in enumerate(results):
        v = report.sections["verdicts"]
        digests.append(
            f"trial={i} digest={report.table_digest[:16]} "
            f"op={v['op_detected']} ip={v['ip_detected']} sop={v['sop_detected']}"
        )
        if v["op_detected"]:
            long_ladder += 1
            if v["ip_detected"] or v["sop_detected"]:
                explained += 1
            elif len(exceptions) < exception_cap:
                exceptions.append(
                    {"trial": i, "table": table.to_dict(), "report": report.to_dict()}
                )
    exception_count = long_ladder - explained
    return ScanSummary(
        trials=trials,
        seed=seed,
        long_ladder_count=long_ladder,
        explained_count=explained,
        exception_count=exception_count,
        exceptions=tuple(exceptions),
        trial_digests=tuple(digests),
    )

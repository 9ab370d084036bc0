"""Check the cactus and wheel claims against brute force, instance by instance.

Each :class:`TheoremId` pairs a sweep (a deterministic list of
:class:`~gpcactus.families.FamilySpec`) with a predicate. Every instance
yields one :class:`AuditRecord` holding the full edge list, so any record
can be replayed through the ``gp`` command.

Claims quantified over *every* gp-set are decided by enumerating all
maximum general position sets, which is only done up to
``EXHAUSTIVE_LIMIT`` vertices (rim vertices for wheels). Beyond that the
solver's single witness is inspected: a violation is still a genuine
counterexample, but a clean witness only earns ``Ambiguous``.
"""

from __future__ import annotations

import enum
import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from gpcactus.cactus import CactusProfile, bound_report, cactus_profile, cycle_gp, is_b0_shape, tree_gp, wheel_gp
from gpcactus.families import Family, FamilySpec
from gpcactus.graph import Graph
from gpcactus.solver import (
    NAIVE_LIMIT,
    GpCertificate,
    SolverTimeout,
    gp_number_exact,
    gp_number_naive,
    maximum_gp_sets,
)

EXHAUSTIVE_LIMIT = 10


class TheoremId(str, enum.Enum):
    TREE_LEAVES = "tree-leaves"
    CYCLE_VALUES = "cycle-values"
    WHEEL_FORMULA = "wheel-formula"
    CYCLE_CONTRIB_LE2 = "cycle-contrib-le2"
    UPPER_BOUND_2K_T = "upper-bound-2k-t"
    GOOD_CYCLES_EQUALITY = "good-cycles-equality"
    COROLLARY_N_MINUS_1 = "corollary-n-minus-1"
    LOWER_BOUND_T = "lower-bound-t"
    LOWER_BOUND_ODD_CHAIN = "lower-bound-odd-chain"
    WHEEL_CENTER_EXCLUDED = "wheel-center-excluded"
    WHEEL_WITNESS_SHAPE = "wheel-witness-shape"


class Verdict(str, enum.Enum):
    CONFIRMED = "Confirmed"
    COUNTEREXAMPLE = "Counterexample"
    AMBIGUOUS = "Ambiguous"
    SKIPPED = "Skipped"


@dataclass
class AuditRecord:
    theorem: TheoremId
    instance: dict[str, Any]
    n: int
    edges: list[list[int]]
    predicted: Any
    actual: Any
    verdict: Verdict
    reason: str | None = None
    evidence: str = "value"
    witness: list[int] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem.value,
            "instance": self.instance,
            "n": self.n,
            "edges": self.edges,
            "predicted": self.predicted,
            "actual": self.actual,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "evidence": self.evidence,
            "witness": self.witness,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AuditRecord:
        return cls(
            theorem=TheoremId(data["theorem"]),
            instance=data["instance"],
            n=data["n"],
            edges=data["edges"],
            predicted=data["predicted"],
            actual=data["actual"],
            verdict=Verdict(data["verdict"]),
            reason=data.get("reason"),
            evidence=data.get("evidence", "value"),
            witness=data.get("witness"),
            details=data.get("details", {}),
        )

    def edge_list_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{u} {v}" for u, v in self.edges]) + "\n"


# ---------------------------------------------------------------- sweeps


def _draw_cactus(rng: random.Random, max_n: int, min_k: int, min_n: int = 3) -> FamilySpec:
    lo = max(min_n, 2 * min_k + 1)
    n = rng.randint(lo, max_n)
    k = rng.randint(min_k, (n - 1) // 2)
    t = rng.randint(2, n - 1) if k == 0 else rng.randint(0, n - 2 * k - 1)
    return FamilySpec(Family.RANDOM_CACTUS, (n, k, t), rng.getrandbits(32))


def random_cacti(count: int, max_n: int, seed: int, min_k: int = 0, min_n: int = 3) -> list[FamilySpec]:
    rng = random.Random(seed)
    return [_draw_cactus(rng, max_n, min_k, min_n) for _ in range(count)]


def random_trees(count: int, max_n: int, seed: int, min_n: int = 2) -> list[FamilySpec]:
    rng = random.Random(seed)
    return [FamilySpec(Family.RANDOM_TREE, (rng.randint(min_n, max_n),), rng.getrandbits(32)) for _ in range(count)]


def all_good_cacti(count: int, max_n: int, seed: int, strict: bool, attempts: int | None = None) -> list[FamilySpec]:
    """Rejection-sample cacti with k >= 2 whose cycles are all good."""
    rng = random.Random(seed)
    out: list[FamilySpec] = []
    for _ in range(attempts if attempts is not None else 200 * count):
        if len(out) == count:
            break
        spec = _draw_cactus(rng, max_n, 2, 5)
        if cactus_profile(spec.build()).all_good(strict):
            out.append(spec)
    return out


def odd_chain_specs(max_n: int, cycle_counts: Sequence[int] = (3, 4, 5)) -> list[FamilySpec]:
    """Chains of odd cycles whose internal cuts sit ``floor(l/2)`` apart."""
    out = []
    for r in cycle_counts:
        budget = max_n - 1 - 2 * r
        if budget < 0:
            continue
        odd_lengths = [3 + 2 * j for j in range(budget // 2 + 1)]
        for lengths in itertools.product(odd_lengths, repeat=r):
            if 1 + sum(x - 1 for x in lengths) > max_n:
                continue
            offsets = [x // 2 for x in lengths[1:-1]]
            out.append(FamilySpec(Family.CHAIN_CACTUS, (*lengths, *offsets)))
    return out


def b0_specs(max_n: int) -> list[FamilySpec]:
    return [
        FamilySpec(Family.B0, (k, p))
        for k in range(1, (max_n - 1) // 2 + 1)
        for p in range(0, max_n - 2 * k)
    ]


def default_sweep(
    theorem: TheoremId, count: int, max_n: int, seed: int, strict: bool = False
) -> list[FamilySpec]:
    """The instance list each claim is audited on."""
    th = TheoremId(theorem)
    if th is TheoremId.TREE_LEAVES:
        return random_trees(count, max_n, seed)
    if th is TheoremId.CYCLE_VALUES:
        return [FamilySpec(Family.CYCLE, (n,)) for n in range(3, max_n + 1)][:count]
    if th is TheoremId.WHEEL_FORMULA:
        return [FamilySpec(Family.WHEEL, (n,)) for n in range(3, max_n)][:count]
    if th in (TheoremId.WHEEL_CENTER_EXCLUDED, TheoremId.WHEEL_WITNESS_SHAPE):
        return [FamilySpec(Family.WHEEL, (n,)) for n in range(6, max_n)][:count]
    if th is TheoremId.CYCLE_CONTRIB_LE2:
        return random_cacti(count, max_n, seed, min_k=2, min_n=5)
    if th is TheoremId.GOOD_CYCLES_EQUALITY:
        return all_good_cacti(count, max_n, seed, strict)
    if th is TheoremId.COROLLARY_N_MINUS_1:
        fixed = b0_specs(max_n)[: count // 4]
        return fixed + random_cacti(count - len(fixed), max_n, seed, min_k=1)
    if th is TheoremId.LOWER_BOUND_ODD_CHAIN:
        return odd_chain_specs(max_n)[:count]
    return random_cacti(count, max_n, seed)


# ---------------------------------------------------------------- checks


def gp_oracle(g: Graph, timeout: float | None) -> GpCertificate:
    """Exhaustive search where affordable, branch and bound otherwise."""
    if g.vertex_count <= NAIVE_LIMIT:
        return gp_number_naive(g)
    return gp_number_exact(g, timeout=timeout)


def _record(th: TheoremId, spec: FamilySpec, g: Graph, predicted: Any, actual: Any, holds: bool, **kw: Any) -> AuditRecord:
    return AuditRecord(
        theorem=th,
        instance=spec.to_dict(),
        n=g.vertex_count,
        edges=[list(e) for e in g.edges()],
        predicted=predicted,
        actual=actual,
        verdict=Verdict.CONFIRMED if holds else Verdict.COUNTEREXAMPLE,
        **kw,
    )


def _skip(th: TheoremId, spec: FamilySpec, g: Graph, predicted: Any, reason: str) -> AuditRecord:
    return AuditRecord(
        th, spec.to_dict(), g.vertex_count, [list(e) for e in g.edges()], predicted, None, Verdict.SKIPPED, reason
    )


def _value_claim(th, spec, g, predicted, timeout, relation="==", details=None) -> AuditRecord:
    cert = gp_oracle(g, timeout)
    holds = {"==": cert.value == predicted, "<=": cert.value <= predicted, ">=": cert.value >= predicted}[relation]
    info = {"relation": f"gp {relation} predicted", "solver": cert.label}
    info.update(details or {})
    return _record(th, spec, g, predicted, cert.value, holds, witness=cert.sorted_witness(), details=info)


def _cycle_meet_ok(s: frozenset[int], profile: CactusProfile) -> bool:
    return all(len(s & set(c.vertices)) <= 2 for c in profile.cycles)


def _check_cycle_contrib(spec, g, timeout) -> AuditRecord:
    th = TheoremId.CYCLE_CONTRIB_LE2
    claim = "every gp-set meets each cycle in <= 2 vertices, and gp >= 4"
    p = cactus_profile(g)
    if p.k < 2:
        return _skip(th, spec, g, claim, "needs at least two cycles")
    if g.vertex_count <= EXHAUSTIVE_LIMIT:
        value, sets = maximum_gp_sets(g)
        failing = [s for s in sets if not _cycle_meet_ok(s, p)]
        universal = not failing
        existential = len(failing) < len(sets)
        holds = universal and value >= 4
        return _record(
            th, spec, g, claim, holds, holds,
            evidence="exhaustive",
            witness=sorted(failing[0]) if failing else sorted(sets[0]),
            details={"gp": value, "gp_sets": len(sets), "universal": universal,
                     "existential": existential, "gp_at_least_4": value >= 4},
        )
    cert = gp_number_exact(g, timeout=timeout)
    ok = _cycle_meet_ok(cert.witness, p) and cert.value >= 4
    rec = _record(th, spec, g, claim, ok, ok, evidence="witness", witness=cert.sorted_witness(),
                  details={"gp": cert.value, "gp_at_least_4": cert.value >= 4})
    if ok:
        rec.verdict, rec.reason = Verdict.AMBIGUOUS, "witness-only evidence"
    return rec


def _check_good_equality(spec, g, timeout, strict) -> AuditRecord:
    th = TheoremId.GOOD_CYCLES_EQUALITY
    p = cactus_profile(g)
    predicted = 2 * p.k + p.t
    if not p.all_good(strict):
        return _skip(th, spec, g, predicted, "not every cycle is good")
    if p.k < 2 and p.t < 2:
        return _skip(th, spec, g, predicted, "needs k >= 2 or t >= 2")
    details = {
        "interpretation": "strict" if strict else "inclusive",
        "all_good_inclusive": p.all_good(False),
        "all_good_strict": p.all_good(True),
        "cycles": [{"length": c.length, "d_c": c.d_c, "is_good": c.is_good, "is_bad": c.is_bad} for c in p.cycles],
    }
    return _value_claim(th, spec, g, predicted, timeout, "==", details)


def _check_corollary(spec, g, timeout) -> AuditRecord:
    th = TheoremId.COROLLARY_N_MINUS_1
    bound = max(3, g.vertex_count - 1)
    cert = gp_oracle(g, timeout)
    extremal = is_b0_shape(g)
    attains = cert.value == bound
    holds = cert.value <= bound and attains == extremal
    return _record(th, spec, g, bound, cert.value, holds, witness=cert.sorted_witness(),
                   details={"relation": "gp <= predicted; equality iff C3 or B0 shape",
                            "b0_shape": extremal, "attains": attains, "solver": cert.label})


def _lower_t_equality_condition(p: CactusProfile) -> bool:
    for c in p.cycles:
        cuts = len(c.cut_vertices)
        if cuts >= 3 and not c.is_bad:
            return False
        if cuts == 2 and not (c.is_bad and c.length % 2 == 0):
            return False
    return True


def _check_lower_t(spec, g, timeout) -> AuditRecord:
    p = cactus_profile(g)
    cond = _lower_t_equality_condition(p)
    rec = _value_claim(TheoremId.LOWER_BOUND_T, spec, g, p.t, timeout, ">=")
    rec.details.update({"equality_condition": cond, "equality": rec.actual == p.t,
                        "equality_claim_holds": (rec.actual == p.t) == cond})
    return rec


def _is_odd_chain(p: CactusProfile) -> bool:
    if not p.is_chain or p.t or p.k < 2 or p.k1_odd != p.k:
        return False
    return all(c.is_end_block or c.d_c == c.length // 2 for c in p.cycles)


def _check_odd_chain(spec, g, timeout) -> AuditRecord:
    th = TheoremId.LOWER_BOUND_ODD_CHAIN
    p = cactus_profile(g)
    if _is_odd_chain(p):
        return _value_claim(th, spec, g, p.k1_odd + 2, timeout, "==", {"shape": "odd chain"})
    if p.t == 0 and p.k >= 2:
        return _value_claim(th, spec, g, max(4, p.k1_odd + 2), timeout, ">=", {"shape": "pendant-free"})
    return _skip(th, spec, g, None, "needs a pendant-free cactus with k >= 2")


def rim_shape(sset: frozenset[int], rim: int) -> dict[str, list[int]]:
    """Lengths of the runs of ``sset`` along the rim and of the gaps between them."""
    if not sset:
        return {"runs": [], "gaps": [rim]}
    if len(sset) == rim:
        return {"runs": [rim], "gaps": []}
    # begin right after a non-member so the walk opens with a run and closes with a gap
    start = next(v for v in range(rim) if v not in sset and (v + 1) % rim in sset)
    walk = [((start + 1 + i) % rim) in sset for i in range(rim)]
    runs, gaps = [], []
    for inside, grp in itertools.groupby(walk):
        (runs if inside else gaps).append(len(list(grp)))
    return {"runs": runs, "gaps": gaps}


def _shape_checks(sset: frozenset[int], rim: int, value: int) -> dict[str, bool]:
    if rim in sset:
        return {"center_excluded": False}
    shape = rim_shape(sset, rim)
    runs, gaps = shape["runs"], shape["gaps"]
    l1, l2 = runs.count(1), runs.count(2)
    residue_ok = {0: l1 == 0, 1: True, 2: l1 == 1}[rim % 3]
    return {
        "center_excluded": True,
        "only_k1_k2": all(r in (1, 2) for r in runs),
        "count_identity": l1 + 2 * l2 == value,
        "packing": 2 * l1 + 3 * l2 <= rim,
        "at_most_one_k2_gap": sum(1 for x in gaps if x == 2) <= 1 and all(x in (1, 2) for x in gaps),
        "residue_shape": residue_ok,
    }


def _check_wheel_sets(th: TheoremId, spec, g, timeout) -> AuditRecord:
    rim = g.vertex_count - 1
    center = rim
    if rim < 6:
        return _skip(th, spec, g, None, "needs a rim of at least 6")
    if th is TheoremId.WHEEL_CENTER_EXCLUDED:
        claim = "no gp-set contains the center"
    else:
        claim = "gp-sets induce K1/K2 rim pieces with 2*l1 + 3*l2 <= n"

    def evaluate(sets: list[frozenset[int]], value: int) -> tuple[bool, dict[str, Any], frozenset[int] | None]:
        if th is TheoremId.WHEEL_CENTER_EXCLUDED:
            bad = [s for s in sets if center in s]
            return not bad, {"with_center": len(bad)}, (bad[0] if bad else None)
        totals: dict[str, Any] = {}
        first_bad = None
        pieces = set()
        for s in sets:
            if center not in s:
                runs = rim_shape(s, rim)["runs"]
                pieces.add((runs.count(1), runs.count(2)))
            checks = _shape_checks(s, rim, value)
            for key, ok in checks.items():
                totals[key] = totals.get(key, True) and ok
            if first_bad is None and not all(checks.values()):
                first_bad = s
        totals["l1_l2"] = sorted(list(x) for x in pieces)
        return first_bad is None, totals, first_bad

    if rim <= EXHAUSTIVE_LIMIT:
        value, sets = maximum_gp_sets(g)
        holds, info, bad = evaluate(sets, value)
        info.update({"gp": value, "gp_sets": len(sets)})
        witness = sorted(bad if bad is not None else sets[0])
        return _record(th, spec, g, claim, holds, holds, evidence="exhaustive", witness=witness, details=info)
    cert = gp_number_exact(g, timeout=timeout)
    holds, info, _ = evaluate([cert.witness], cert.value)
    info["gp"] = cert.value
    rec = _record(th, spec, g, claim, holds, holds, evidence="witness", witness=cert.sorted_witness(), details=info)
    if holds:
        rec.verdict, rec.reason = Verdict.AMBIGUOUS, "witness-only evidence"
    return rec


def check_instance(
    theorem: TheoremId, spec: FamilySpec, timeout: float | None = None, strict: bool = False
) -> AuditRecord:
    """Evaluate one claim on one instance; a timeout becomes a Skipped record."""
    th = TheoremId(theorem)
    g = spec.build()
    try:
        if th is TheoremId.TREE_LEAVES:
            return _value_claim(th, spec, g, tree_gp(g).value, timeout)
        if th is TheoremId.CYCLE_VALUES:
            return _value_claim(th, spec, g, cycle_gp(g.vertex_count), timeout)
        if th is TheoremId.WHEEL_FORMULA:
            return _value_claim(th, spec, g, wheel_gp(g.vertex_count - 1), timeout)
        if th is TheoremId.UPPER_BOUND_2K_T:
            p = cactus_profile(g)
            return _value_claim(th, spec, g, bound_report(p).upper_2k_t, timeout, "<=", {"k": p.k, "t": p.t})
        if th is TheoremId.CYCLE_CONTRIB_LE2:
            return _check_cycle_contrib(spec, g, timeout)
        if th is TheoremId.GOOD_CYCLES_EQUALITY:
            return _check_good_equality(spec, g, timeout, strict)
        if th is TheoremId.COROLLARY_N_MINUS_1:
            return _check_corollary(spec, g, timeout)
        if th is TheoremId.LOWER_BOUND_T:
            return _check_lower_t(spec, g, timeout)
        if th is TheoremId.LOWER_BOUND_ODD_CHAIN:
            return _check_odd_chain(spec, g, timeout)
        return _check_wheel_sets(th, spec, g, timeout)
    except SolverTimeout:
        return _skip(th, spec, g, None, "timeout")


def _check_packed(args: tuple) -> AuditRecord:
    return check_instance(*args)


def audit(
    theorem: TheoremId,
    sweep: Iterable[FamilySpec],
    budget: float | None = None,
    strict: bool = False,
    jobs: int = 1,
) -> list[AuditRecord]:
    """One record per sweep instance, in sweep order regardless of ``jobs``."""
    work = [(TheoremId(theorem), spec, budget, strict) for spec in sweep]
    if jobs <= 1:
        return [_check_packed(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_check_packed, work, chunksize=4))


def audit_wheel_structure(n: int, timeout: float | None = None) -> AuditRecord:
    """Center exclusion and K1/K2 shape on every gp-set of the wheel with rim ``n``."""
    spec = FamilySpec(Family.WHEEL, (n,))
    center = check_instance(TheoremId.WHEEL_CENTER_EXCLUDED, spec, timeout)
    rec = check_instance(TheoremId.WHEEL_WITNESS_SHAPE, spec, timeout)
    if center.verdict is Verdict.COUNTEREXAMPLE:
        rec.verdict = Verdict.COUNTEREXAMPLE
    rec.details["center_excluded"] = center.verdict is not Verdict.COUNTEREXAMPLE
    return rec


def summarize(records: Sequence[AuditRecord]) -> dict[str, int]:
    counts = {v.value: 0 for v in Verdict}
    for r in records:
        counts[r.verdict.value] += 1
    return counts


def write_jsonl(records: Iterable[AuditRecord], stream) -> None:
    for r in records:
        stream.write(r.to_json() + "\n")


def read_jsonl(lines: Iterable[str]) -> list[AuditRecord]:
    return [AuditRecord.from_dict(json.loads(line)) for line in lines if line.strip()]

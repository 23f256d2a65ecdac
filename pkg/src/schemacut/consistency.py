"""Required/forbidden consistency checking over abstract chain instances.

An instance carries the forbidden join chains (a cut must intersect every
one) and the required chain families (each family must keep at least one
chain untouched).  Two exhaustive strategies decide the same verdict:

* required-first: enumerate one preserved chain per family; a choice works
  when every forbidden chain keeps an edge outside the protected union.
* forbidden-first: enumerate candidate cuts picking one edge per forbidden
  chain; a candidate works when every family still has a disjoint chain.

Deciding consistency is NP-complete; a 3SAT reduction doubles as a test
generator.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import json

from .cut import CutSet, greedy_hitting_set
from .model import SchemaError


class ConsistencyTimeout(Exception):
    """Cooperative deadline exceeded during an exhaustive check."""


_TIMEOUT_STRIDE = 1024


@dataclass(frozen=True)
class CcInstance:
    forbidden_chains: tuple[frozenset, ...]
    required_families: tuple[tuple[frozenset, ...], ...]

    def __post_init__(self) -> None:
        for chain in self.forbidden_chains:
            if not chain:
                raise SchemaError("forbidden join chain must be non-empty")

    @property
    def universe(self) -> frozenset:
        edges = set()
        for chain in self.forbidden_chains:
            edges |= chain
        for family in self.required_families:
            for chain in family:
                edges |= chain
        return frozenset(edges)


@dataclass(frozen=True)
class ConsistencyResult:
    consistent: bool
    cut: CutSet | None
    preserved: tuple[frozenset, ...] | None
    strategy: str
    elapsed_ms: float


@dataclass(frozen=True)
class ThreeSatFormula:
    """Clauses are triples of non-zero literals; negative means negated."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("every clause needs exactly 3 literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise ValueError(f"literal {lit} out of range")


def make_instance(
    forbidden: Sequence[Iterable[Hashable]],
    required: Sequence[Sequence[Iterable[Hashable]]],
) -> CcInstance:
    return CcInstance(
        tuple(frozenset(c) for c in forbidden),
        tuple(tuple(frozenset(c) for c in family) for family in required),
    )


def validate_cut(
    cut: Iterable[Hashable], instance: CcInstance
) -> tuple[bool, tuple[frozenset, ...] | None]:
    """Check a cut against an instance and return a preservation witness.

    True iff the cut intersects every forbidden chain and every required
    family keeps at least one disjoint chain; the witness lists the first
    disjoint chain per family.
    """
    picked = frozenset(cut)
    extra = picked - instance.universe
    if extra:
        raise SchemaError(f"cut edge {sorted(extra)[0]!r} outside the instance universe")
    if any(not (chain & picked) for chain in instance.forbidden_chains):
        return False, None
    witnesses = []
    for family in instance.required_families:
        survivor = next((chain for chain in family if not (chain & picked)), None)
        if survivor is None:
            return False, None
        witnesses.append(survivor)
    return True, tuple(witnesses)


def _label_sort_key(edge: Hashable, count: int) -> tuple:
    return (-count, edge)


def check_required_first(
    instance: CcInstance,
    *,
    edge_sort_key: Callable[[Hashable, int], tuple] = _label_sort_key,
    timeout_s: float | None = None,
) -> ConsistencyResult:
    """Strategy I: brute-force selection over the required side.

    Enumerates one preserved chain per family in input order; the first
    choice whose protected edge union leaves every forbidden chain an
    escape edge wins.  The cut is then built greedily over the forbidden
    chains restricted to unprotected edges.
    """
    start = time.perf_counter()
    steps = 0
    for choice in itertools.product(*instance.required_families):
        steps += 1
        if timeout_s is not None and steps % _TIMEOUT_STRIDE == 0:
            if time.perf_counter() - start > timeout_s:
                raise ConsistencyTimeout
        protected = frozenset().union(*choice) if choice else frozenset()
        if any(chain <= protected for chain in instance.forbidden_chains):
            continue
        restricted = [chain - protected for chain in instance.forbidden_chains]
        cut = greedy_hitting_set(restricted, edge_sort_key)
        elapsed = (time.perf_counter() - start) * 1000.0
        return ConsistencyResult(True, cut, tuple(choice), "required-first", elapsed)
    elapsed = (time.perf_counter() - start) * 1000.0
    return ConsistencyResult(False, None, None, "required-first", elapsed)


def check_forbidden_first(
    instance: CcInstance,
    *,
    timeout_s: float | None = None,
) -> ConsistencyResult:
    """Strategy II: brute-force selection over the forbidden side.

    Enumerates candidate cuts taking one edge per forbidden chain (treated
    as sets); the first candidate leaving a disjoint chain in every
    required family wins.  Verdicts agree with strategy I on every
    instance.
    """
    start = time.perf_counter()
    steps = 0
    ordered_chains = [sorted(chain) for chain in instance.forbidden_chains]
    for combo in itertools.product(*ordered_chains) if ordered_chains else iter([()]):
        steps += 1
        if timeout_s is not None and steps % _TIMEOUT_STRIDE == 0:
            if time.perf_counter() - start > timeout_s:
                raise ConsistencyTimeout
        picked = frozenset(combo)
        witnesses = []
        for family in instance.required_families:
            survivor = next((chain for chain in family if not (chain & picked)), None)
            if survivor is None:
                break
            witnesses.append(survivor)
        else:
            elapsed = (time.perf_counter() - start) * 1000.0
            cut = CutSet(tuple(sorted(picked)))
            return ConsistencyResult(True, cut, tuple(witnesses), "forbidden-first", elapsed)
    elapsed = (time.perf_counter() - start) * 1000.0
    return ConsistencyResult(False, None, None, "forbidden-first", elapsed)


def pick_strategy(instance: CcInstance) -> str:
    """Heuristic: brute-force the side with the smaller combination bound."""
    required_bound = 1
    for family in instance.required_families:
        required_bound *= max(len(family), 1)
    forbidden_bound = 1
    for chain in instance.forbidden_chains:
        forbidden_bound *= max(len(chain), 1)
    return "I" if required_bound <= forbidden_bound else "II"


def check(
    instance: CcInstance,
    strategy: str = "auto",
    *,
    edge_sort_key: Callable[[Hashable, int], tuple] = _label_sort_key,
    timeout_s: float | None = None,
) -> ConsistencyResult:
    """Dispatch to a strategy; ``auto`` picks by combination bound."""
    if strategy == "auto":
        strategy = pick_strategy(instance)
    if strategy == "I":
        return check_required_first(
            instance, edge_sort_key=edge_sort_key, timeout_s=timeout_s
        )
    if strategy == "II":
        return check_forbidden_first(instance, timeout_s=timeout_s)
    raise ValueError(f"unknown strategy {strategy!r}")


def reduce_3sat(formula: ThreeSatFormula) -> CcInstance:
    """Encode satisfiability as consistency.

    One forbidden chain per variable pairs the positive and negative
    literal edges (the cut picks the false one); one required family per
    clause holds three singleton chains, one per literal (a preserved
    singleton is a true literal).
    """
    def label(lit: int) -> str:
        return f"q{lit}" if lit > 0 else f"~q{-lit}"

    forbidden = [
        frozenset({label(v), label(-v)}) for v in range(1, formula.variable_count + 1)
    ]
    required = []
    for clause in formula.clauses:
        family = []
        for lit in clause:
            chain = frozenset({label(lit)})
            if chain not in family:
                family.append(chain)
        required.append(tuple(family))
    return CcInstance(tuple(forbidden), tuple(required))


# ---------------------------------------------------------------------------
# JSON input format
# ---------------------------------------------------------------------------

_CC_KEYS = {"forbidden", "required"}


def load_cc_doc(doc: Mapping) -> CcInstance:
    """Parse an abstract instance: opaque string edge labels."""
    if not isinstance(doc, Mapping):
        raise SchemaError("instance document must be an object")
    unknown = sorted(set(doc) - _CC_KEYS)
    if unknown:
        raise SchemaError(f"instance document: unknown key {unknown[0]!r}")
    forbidden = [
        frozenset(str(e) for e in chain) for chain in doc.get("forbidden", [])
    ]
    required = [
        tuple(frozenset(str(e) for e in chain) for chain in family)
        for family in doc.get("required", [])
    ]
    return CcInstance(tuple(forbidden), tuple(required))


def load_cc_instance(path: str | Path) -> CcInstance:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    return load_cc_doc(doc)

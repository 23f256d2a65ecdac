"""End-to-end orchestration: schema to verified secure decomposition.

The pipeline builds the dependency graph, enumerates forbidden (and
required) join chains, decides a cut (via the consistency check when
required sets are present, which degenerates to the plain greedy cut when
they are not), turns cut edges into new forbidden co-occurrences, and
decomposes every relation.  The result is then *verified*: the graph is
rebuilt over the fragments and every forbidden set must have no join
chain and no hosting fragment.

Verification is load-bearing, not decorative.  A cut through a composite
vertex's containment edge only bans the full composite, so smaller
fragments can keep the association alive; when verification finds such a
surviving chain the pipeline cuts again on the rebuilt graph and
re-decomposes until secure.  Required-set survival is also re-checked on
the final fragments; failures downgrade the report with a warning rather
than passing silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import decompose_fds
from .consistency import ConsistencyResult, check, make_instance
from .cut import CutSet, edges_to_forbidden_sets, greedy_cut, fdg_edge_sort_key
from .decompose import (
    DEFAULT_MAX_WIDTH,
    DecomposedSchema,
    assemble,
    decompose_relation,
)
from .fdg import Fdg, build_fdg
from .joinchain import PathLimits, join_chains
from .model import AttributeSet, Policy, Relation, Schema, preprocess_policy

_MAX_RECUT_ROUNDS = 64


@dataclass(frozen=True)
class DecompositionReport:
    result: DecomposedSchema | None
    consistency: ConsistencyResult
    security_verified: bool
    required_verified: tuple[tuple[AttributeSet, bool], ...]
    warnings: tuple[str, ...]


def fragment_schema(result: DecomposedSchema, schema: Schema) -> Schema:
    """Rebuild a schema whose relations are the fragments.

    Dependencies survive when fully co-located in some fragment; keys are
    not re-derived (each fragment gets its full attribute set as a
    trivial key, which the graph construction never consults).
    """
    relations = tuple(
        Relation(frag.name, frag.attrs, frag.attrs) for frag in result.fragments
    )
    fragment_sets = [set(frag.attrs) for frag in result.fragments]
    kept = tuple(
        dep
        for dep in decompose_fds(schema.fds)
        if any(set(dep.lhs) | set(dep.rhs) <= fs for fs in fragment_sets)
    )
    return Schema(relations, kept, schema.attribute_names)


def verify_decomposition(
    result: DecomposedSchema,
    schema: Schema,
    policy: Policy,
    limits: PathLimits | None = None,
) -> tuple[bool, tuple[tuple[AttributeSet, bool], ...]]:
    """Check the decomposition against the policy on the rebuilt graph.

    Secure iff no fragment contains a forbidden set and every forbidden
    set's chain family over the fragment graph is empty.  Each required
    set is flagged with whether it still has a join chain.
    """
    new_fdg = build_fdg(fragment_schema(result, schema))
    secure = True
    for forbidden in policy.forbidden:
        if any(set(forbidden) <= set(frag.attrs) for frag in result.fragments):
            secure = False
            break
        if join_chains(new_fdg, forbidden, limits).chains:
            secure = False
            break
    required_flags = tuple(
        (req, bool(join_chains(new_fdg, req, limits).chains))
        for req in policy.required
    )
    return secure, required_flags


def _surviving_forbidden_families(
    result: DecomposedSchema,
    schema: Schema,
    policy: Policy,
    limits: PathLimits | None,
) -> tuple[Fdg, list]:
    new_fdg = build_fdg(fragment_schema(result, schema))
    families = [
        fam
        for fam in (join_chains(new_fdg, f, limits) for f in policy.forbidden)
        if fam.chains
    ]
    return new_fdg, families


def secure_decompose(
    schema: Schema,
    policy: Policy,
    limits: PathLimits | None = None,
    strategy: str = "auto",
    max_width: int = DEFAULT_MAX_WIDTH,
    timeout_s: float | None = None,
) -> DecompositionReport:
    """Produce a verified secure decomposition of the schema's relations.

    An inconsistent policy yields a report with no fragments rather than
    an exception.  Truncated chain enumerations and any extra cut rounds
    are surfaced as warnings.
    """
    schema, policy, warnings = preprocess_policy(schema, policy)
    warnings = list(warnings)

    fdg = build_fdg(schema)
    forbidden_families = [join_chains(fdg, s, limits) for s in policy.forbidden]
    required_families = [join_chains(fdg, s, limits) for s in policy.required]
    for fam in forbidden_families + required_families:
        if fam.truncated:
            warnings.append(
                f"join chain enumeration for {{{', '.join(fam.source_set)}}} was truncated"
            )

    instance = make_instance(
        [chain.edges for fam in forbidden_families for chain in fam.chains],
        [[chain.edges for chain in fam.chains] for fam in required_families],
    )
    consistency = check(
        instance, strategy, edge_sort_key=fdg_edge_sort_key, timeout_s=timeout_s
    )
    if not consistency.consistent:
        return DecompositionReport(
            result=None,
            consistency=consistency,
            security_verified=False,
            required_verified=tuple((req, False) for req in policy.required),
            warnings=tuple(warnings),
        )

    cut: CutSet = consistency.cut
    new_forbidden = list(edges_to_forbidden_sets(cut, fdg))
    dfds = decompose_fds(schema.fds)

    effective = list(policy.forbidden)
    for s in new_forbidden:
        if s not in effective:
            effective.append(s)

    result = _decompose_all(schema, effective, new_forbidden, dfds, max_width)
    secure, required_flags = verify_decomposition(result, schema, policy, limits)

    rounds = 0
    while not secure:
        rounds += 1
        if rounds > _MAX_RECUT_ROUNDS:
            raise RuntimeError("re-cut did not converge")
        new_fdg, surviving = _surviving_forbidden_families(result, schema, policy, limits)
        extra_cut = greedy_cut(surviving, new_fdg)
        extra_sets = edges_to_forbidden_sets(extra_cut, new_fdg)
        progress = [s for s in extra_sets if s not in effective]
        if not progress:
            raise RuntimeError("re-cut made no progress")
        warnings.append(
            "additional co-occurrence constraints were needed to break surviving "
            + "associations: " + ", ".join("{" + ", ".join(s) + "}" for s in progress)
        )
        effective.extend(progress)
        new_forbidden.extend(progress)
        result = _decompose_all(schema, effective, new_forbidden, dfds, max_width)
        secure, required_flags = verify_decomposition(result, schema, policy, limits)

    for req, ok in required_flags:
        if not ok:
            warnings.append(
                f"required set {{{', '.join(req)}}} is no longer associable after decomposition"
            )

    return DecompositionReport(
        result=result,
        consistency=consistency,
        security_verified=secure,
        required_verified=required_flags,
        warnings=tuple(warnings),
    )


def _decompose_all(schema, effective, new_forbidden, dfds, max_width) -> DecomposedSchema:
    per_relation = {
        rel.name: decompose_relation(rel, effective, max_width)
        for rel in schema.relations
    }
    return assemble(schema, per_relation, new_forbidden, dfds)


def report_to_dict(report: DecompositionReport) -> dict:
    from .decompose import decomposition_to_dict

    body = (
        decomposition_to_dict(report.result)
        if report.result is not None
        else {"fragments": [], "new_forbidden": [], "lost_fds": []}
    )
    body.update(
        {
            "consistent": report.consistency.consistent,
            "security_verified": report.security_verified,
            "required_verified": [
                {"set": list(req), "ok": ok} for req, ok in report.required_verified
            ],
            "warnings": list(report.warnings),
        }
    )
    return body

from __future__ import annotations

import random

from schemacut import (
    DecomposedSchema,
    Fragment,
    decompose_fds,
    greedy_cut,
    join_chains,
    build_fdg,
    make_policy,
    make_schema,
    report_to_dict,
    secure_decompose,
    strong_cut_decompose,
    verify_decomposition,
)

from .conftest import random_policy, random_schema
from .goldens import EX2_NEW_FORBIDDEN, EX2_RELAXED_FRAGMENTS, V


def fragments_by_relation(result):
    out = {}
    for frag in result.fragments:
        out.setdefault(frag.source_relation, set()).add(frag.attrs)
    return out


def test_example2_relaxed_golden(example2):
    schema, policy = example2
    report = secure_decompose(schema, policy)
    assert report.consistency.consistent
    assert report.security_verified
    assert fragments_by_relation(report.result) == EX2_RELAXED_FRAGMENTS
    assert report.result.new_forbidden == EX2_NEW_FORBIDDEN
    assert report.warnings == ()


def test_example2_cut_equals_plain_greedy(example2):
    schema, policy = example2
    fdg = build_fdg(schema)
    families = [join_chains(fdg, s) for s in policy.forbidden]
    report = secure_decompose(schema, policy)
    assert report.consistency.cut == greedy_cut(families, fdg)


def test_example0_relaxed_is_secure(example0):
    # The greedy cut selects three edges here, which collapses the relaxed
    # result onto the same three fragments as the identifier-severing
    # baseline; the decomposition still verifies as secure.
    schema, policy = example0
    report = secure_decompose(schema, policy)
    assert report.security_verified
    assert fragments_by_relation(report.result) == {
        "R_k": {V("AD"), V("BD"), V("CD")}
    }


def test_example1_relaxed_is_secure(example1):
    schema, policy = example1
    report = secure_decompose(schema, policy)
    assert report.security_verified
    assert fragments_by_relation(report.result) == {
        "R_1": {V("ACD"), V("BC")},
        "R_2": {V("EFGH")},
        "R_3": {V("AE")},
        "R_4": {V("DH")},
    }


def test_empty_policy_changes_nothing(example2):
    schema, _ = example2
    report = secure_decompose(schema, make_policy(schema))
    assert report.security_verified
    assert fragments_by_relation(report.result) == {
        rel.name: {rel.attributes} for rel in schema.relations
    }
    assert report.result.new_forbidden == ()


def test_weak_cut_verifies_secure(example0):
    # Hand-made two-fragment split: no way to associate B with C remains.
    schema, policy = example0
    result = DecomposedSchema(
        (Fragment("R_k", V("ACD"), 1), Fragment("R_k", V("BD"), 2)), (), ()
    )
    secure, _ = verify_decomposition(result, schema, policy)
    assert secure


def test_strong_cut_verifies_secure(example0):
    schema, policy = example0
    result = strong_cut_decompose(schema, policy.forbidden)
    secure, _ = verify_decomposition(result, schema, policy)
    assert secure


def test_undecomposed_schema_fails_verification(example2):
    schema, policy = example2
    result = DecomposedSchema(
        tuple(Fragment(r.name, r.attributes, 0) for r in schema.relations), (), ()
    )
    secure, _ = verify_decomposition(result, schema, policy)
    assert not secure


def test_fragment_containing_forbidden_set_fails(example0):
    schema, policy = example0
    result = DecomposedSchema(
        (Fragment("R_k", V("BCD"), 1), Fragment("R_k", V("AD"), 2)), (), ()
    )
    secure, _ = verify_decomposition(result, schema, policy)
    assert not secure


def test_required_set_flags(example2):
    schema, _ = example2
    policy = make_policy(schema, forbidden=[["A", "D"]], required=[["B", "C"], ["E", "G"]])
    report = secure_decompose(schema, policy)
    assert report.consistency.consistent
    assert report.security_verified
    flags = dict(report.required_verified)
    assert flags[V("BC")] is True
    assert flags[V("EG")] is True


def test_inconsistent_policy_reports_no_fragments():
    schema = make_schema(
        [("R", ["A", "B"], ["A"]), ("S", ["A", "C"], ["A"])],
        [(["A"], ["B"]), (["A"], ["C"])],
    )
    # Associating B with C needs the A bridge alive, but {B, C} is forbidden.
    policy = make_policy(schema, forbidden=[["B", "C"]], required=[["B", "C"]])
    report = secure_decompose(schema, policy)
    assert not report.consistency.consistent
    assert report.result is None
    assert not report.security_verified
    doc = report_to_dict(report)
    assert doc["fragments"] == [] and doc["consistent"] is False


def test_recut_restores_security_for_containment_cuts():
    # A shared containment edge tops the greedy order, but banning the
    # whole composite leaves its smaller fragments associable; the
    # verify-and-recut round must catch and fix that.
    schema = make_schema(
        [
            ("R1", ["a", "b", "p"]),
            ("R2", ["a", "s", "u"], ["a"]),
            ("R3", ["b", "t"], ["b"]),
            ("R4", ["p", "q"], ["p"]),
        ],
        [(["a"], ["s"]), (["a"], ["u"]), (["b"], ["t"]), (["p"], ["q"])],
    )
    policy = make_policy(schema, forbidden=[["s", "t"], ["u", "q"]])
    report = secure_decompose(schema, policy)
    assert report.security_verified
    assert any("additional co-occurrence" in w for w in report.warnings)
    assert V("as") in report.result.new_forbidden
    assert V("au") in report.result.new_forbidden


def test_idempotent_on_already_secure_schema(example2):
    schema, policy = example2
    first = secure_decompose(schema, policy)
    fragment_schema_relations = [
        (frag.name, list(frag.attrs)) for frag in first.result.fragments
    ]
    kept_fds = [
        (list(d.lhs), list(d.rhs))
        for d in decompose_fds(schema.fds)
        if any(
            set(d.lhs) | set(d.rhs) <= set(frag.attrs)
            for frag in first.result.fragments
        )
    ]
    schema2 = make_schema(fragment_schema_relations, kept_fds)
    policy2 = make_policy(
        schema2, forbidden=[list(s) for s in policy.forbidden]
    )
    second = secure_decompose(schema2, policy2)
    assert second.security_verified
    assert fragments_by_relation(second.result) == {
        name: {tuple(sorted(attrs))} for name, attrs in fragment_schema_relations
    }
    assert second.consistency.cut.edges == ()


def test_relaxed_cut_outputs_always_verify_on_random_schemas():
    rng = random.Random(4711)
    for _ in range(150):
        schema = random_schema(rng)
        policy = random_policy(rng, schema)
        report = secure_decompose(schema, policy)
        assert report.consistency.consistent
        assert report.security_verified, (schema, policy)


def test_report_json_shape(example2):
    schema, policy = example2
    doc = report_to_dict(secure_decompose(schema, policy))
    assert set(doc) == {
        "fragments",
        "new_forbidden",
        "lost_fds",
        "consistent",
        "security_verified",
        "required_verified",
        "warnings",
    }
    assert doc["security_verified"] is True
    assert {f["name"] for f in doc["fragments"]} >= {"R_11", "R_2"}

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schemacut import (
    CcInstance,
    SchemaError,
    ThreeSatFormula,
    check,
    check_forbidden_first,
    check_required_first,
    load_cc_doc,
    make_instance,
    reduce_3sat,
    validate_cut,
)
from schemacut.consistency import pick_strategy


def test_first_instance_consistent(request):
    from schemacut import fixtures

    instance = fixtures.cc_instance(1)
    for checker in (check_required_first, check_forbidden_first):
        result = checker(instance)
        assert result.consistent
        ok, witnesses = validate_cut(result.cut.as_set(), instance)
        assert ok
        assert witnesses == result.preserved


def test_first_instance_reference_cut_validates():
    from schemacut import fixtures

    instance = fixtures.cc_instance(1)
    ok, witnesses = validate_cut({"a", "g"}, instance)
    assert ok
    assert set(witnesses) == {frozenset("bcf"), frozenset("de")}


def test_second_instance_inconsistent():
    from schemacut import fixtures

    instance = fixtures.cc_instance(2)
    for checker in (check_required_first, check_forbidden_first):
        result = checker(instance)
        assert not result.consistent
        assert result.cut is None and result.preserved is None


def test_empty_cut_fails_when_forbidden_chains_exist():
    from schemacut import fixtures

    ok, _ = validate_cut(set(), fixtures.cc_instance(1))
    assert not ok


def test_empty_instance_trivially_consistent():
    instance = make_instance([], [])
    ok, witnesses = validate_cut(set(), instance)
    assert ok and witnesses == ()
    assert check_required_first(instance).consistent
    assert check_forbidden_first(instance).consistent


def test_cut_outside_universe_rejected():
    instance = make_instance([["a", "b"]], [])
    with pytest.raises(SchemaError, match="outside"):
        validate_cut({"z"}, instance)


def test_required_only_instance():
    instance = make_instance([], [[["a"], ["b"]]])
    result = check_required_first(instance)
    assert result.consistent
    assert result.cut.edges == ()
    assert result.preserved == (frozenset("a"),)


def test_no_required_families_uses_plain_greedy():
    instance = make_instance([["a", "b"], ["b", "c"]], [])
    result = check_required_first(instance)
    assert result.consistent
    assert set(result.cut) == {"b"}


def test_single_edge_conflict_inconsistent():
    instance = make_instance([["x"]], [[["x"]]])
    assert not check_required_first(instance).consistent
    assert not check_forbidden_first(instance).consistent


def test_empty_required_family_is_inconsistent():
    instance = make_instance([["a"]], [[]])
    assert not check_required_first(instance).consistent
    assert not check_forbidden_first(instance).consistent


def test_empty_forbidden_chain_rejected():
    with pytest.raises(SchemaError, match="non-empty"):
        make_instance([[]], [])


def test_strategy_dispatch_and_auto():
    instance = make_instance([["a", "b", "c"]], [[["d"]], [["e"]]])
    # required bound 1*1=1 < forbidden bound 3: auto goes required-first
    assert pick_strategy(instance) == "I"
    assert check(instance, "auto").strategy == "required-first"
    assert check(instance, "II").strategy == "forbidden-first"
    with pytest.raises(ValueError):
        check(instance, "III")


_EDGES = st.sets(st.sampled_from("abcdef"), min_size=1, max_size=3)


@settings(max_examples=250, deadline=None)
@given(
    st.lists(_EDGES, max_size=4),
    st.lists(st.lists(_EDGES, min_size=1, max_size=4), max_size=4),
)
def test_strategies_agree_on_random_instances(forbidden, required):
    instance = make_instance(forbidden, required)
    r1 = check_required_first(instance)
    r2 = check_forbidden_first(instance)
    assert r1.consistent == r2.consistent
    for result in (r1, r2):
        if result.consistent:
            ok, _ = validate_cut(result.cut.as_set(), instance)
            assert ok


def test_witnesses_are_deterministic():
    from schemacut import fixtures

    instance = fixtures.cc_instance(1)
    first = check_required_first(instance)
    again = check_required_first(instance)
    assert first.cut == again.cut
    assert first.preserved == again.preserved


# ---------------------------------------------------------------------------
# 3SAT reduction
# ---------------------------------------------------------------------------


def brute_sat(formula: ThreeSatFormula) -> bool:
    for bits in itertools.product([False, True], repeat=formula.variable_count):
        def truth(lit):
            value = bits[abs(lit) - 1]
            return value if lit > 0 else not value

        if all(any(truth(lit) for lit in clause) for clause in formula.clauses):
            return True
    return False


def test_reduction_shape():
    instance = reduce_3sat(ThreeSatFormula(3, ((1, -2, 3),)))
    assert set(instance.forbidden_chains) == {
        frozenset({"q1", "~q1"}),
        frozenset({"q2", "~q2"}),
        frozenset({"q3", "~q3"}),
    }
    assert instance.required_families == (
        (frozenset({"q1"}), frozenset({"~q2"}), frozenset({"q3"})),
    )


def test_reduction_unsatisfiable_formula():
    instance = reduce_3sat(ThreeSatFormula(1, ((1, 1, 1), (-1, -1, -1))))
    assert not check_required_first(instance).consistent


def test_reduction_empty_formula():
    instance = reduce_3sat(ThreeSatFormula(2, ()))
    assert check_required_first(instance).consistent


def test_formula_validation():
    with pytest.raises(ValueError):
        ThreeSatFormula(1, ((1, 2, 1),))
    with pytest.raises(ValueError):
        ThreeSatFormula(1, ((1, 0, 1),))


def test_reduction_fidelity_random():
    rng = random.Random(23)
    for _ in range(300):
        k = rng.randint(1, 4)
        clauses = tuple(
            tuple(rng.choice([1, -1]) * rng.randint(1, k) for _ in range(3))
            for _ in range(rng.randint(0, 4))
        )
        formula = ThreeSatFormula(k, clauses)
        instance = reduce_3sat(formula)
        assert brute_sat(formula) == check_required_first(instance).consistent
        assert brute_sat(formula) == check_forbidden_first(instance).consistent


def test_cc_document_parsing():
    instance = load_cc_doc({"forbidden": [["a", "b"]], "required": [[["c"]]]})
    assert instance.forbidden_chains == (frozenset({"a", "b"}),)
    assert instance.universe == frozenset({"a", "b", "c"})
    with pytest.raises(SchemaError, match="unknown key"):
        load_cc_doc({"forbidden": [], "required": [], "extra": 1})

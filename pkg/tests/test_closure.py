from __future__ import annotations

import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from schemacut import (
    FunctionalDependency,
    attribute_closure,
    attr_set,
    decompose_fds,
    identifiers_of,
)

F_R1 = decompose_fds(
    [
        FunctionalDependency(("A",), ("B", "C", "D")),
        FunctionalDependency(("D",), ("A", "B", "C")),
    ]
)


def brute_closure(start, fds):
    """Independent oracle: repeat full passes until nothing changes."""
    out = set(start)
    changed = True
    while changed:
        changed = False
        for dep in fds:
            if set(dep.lhs) <= out and not set(dep.rhs) <= out:
                out |= set(dep.rhs)
                changed = True
    return attr_set(out)


def test_split_into_singletons():
    dfds = decompose_fds([FunctionalDependency(("A",), ("B", "C"))])
    assert [(d.lhs, d.rhs) for d in dfds] == [(("A",), ("B",)), (("A",), ("C",))]


def test_already_singleton_unchanged():
    assert len(F_R1.fds) == 6
    assert all(len(d.rhs) == 1 for d in F_R1)


def test_empty_input():
    assert decompose_fds([]).fds == ()


def test_origin_tracks_source():
    dfds = decompose_fds(
        [
            FunctionalDependency(("A",), ("B", "C")),
            FunctionalDependency(("B",), ("D",)),
        ]
    )
    assert dfds.origin == (0, 0, 1)


def test_duplicates_collapse():
    dfds = decompose_fds(
        [
            FunctionalDependency(("A",), ("B",)),
            FunctionalDependency(("A",), ("B", "C")),
        ]
    )
    assert [(d.lhs, d.rhs) for d in dfds] == [(("A",), ("B",)), (("A",), ("C",))]


def test_closure_of_key():
    assert attribute_closure({"A"}, F_R1) == ("A", "B", "C", "D")


def test_closure_of_empty_set():
    assert attribute_closure(set(), F_R1) == ()


def test_closure_of_non_determinant():
    assert attribute_closure({"B"}, F_R1) == ("B",)


def test_identifiers_of_dependent_attribute():
    dfds = decompose_fds([FunctionalDependency(("A",), ("B", "C", "D"))])
    singles = [("A",), ("B",), ("C",), ("D",)]
    assert identifiers_of("B", dfds, singles) == (("A",),)


def test_identifiers_of_key_attribute():
    dfds = decompose_fds([FunctionalDependency(("A",), ("B", "C", "D"))])
    singles = [("A",), ("B",), ("C",), ("D",)]
    assert identifiers_of("A", dfds, singles) == ()


def test_identifiers_in_bridged_schema(example1):
    schema, _ = example1
    dfds = decompose_fds(schema.fds)
    candidates = [(a,) for a in schema.attribute_names] + [
        ("A", "E"), ("D", "H"), ("A", "B", "C", "D"), ("E", "F", "G", "H"),
    ]
    found = identifiers_of("F", dfds, candidates)
    # ("E","F","G","H") determines F but contains it, so it is not returned.
    assert found == (("A", "E"), ("D", "H"), ("E",), ("H",))


def _random_fd_list(rng, attrs, count):
    fds = []
    for _ in range(count):
        lhs = rng.sample(attrs, rng.randint(1, 2))
        rhs = rng.sample(attrs, rng.randint(1, 2))
        fds.append(FunctionalDependency(attr_set(lhs), attr_set(rhs)))
    return fds


def test_closure_matches_brute_force_oracle():
    rng = random.Random(7)
    attrs = list("ABCDEF")
    for _ in range(200):
        fds = _random_fd_list(rng, attrs, rng.randint(0, 6))
        dfds = decompose_fds(fds)
        start = rng.sample(attrs, rng.randint(0, 3))
        assert attribute_closure(start, dfds) == brute_closure(start, fds)


def test_decomposition_preserves_closure_exhaustively():
    # Every subset of a small attribute pool closes identically under the
    # original and the decomposed dependency sets.
    rng = random.Random(21)
    attrs = list("ABCDE")
    for _ in range(30):
        fds = _random_fd_list(rng, attrs, rng.randint(1, 5))
        dfds = decompose_fds(fds)
        for size in range(len(attrs) + 1):
            for subset in itertools.combinations(attrs, size):
                assert attribute_closure(subset, dfds) == brute_closure(subset, fds)


@st.composite
def _fd_sets(draw):
    attrs = "ABCDEF"
    count = draw(st.integers(0, 6))
    fds = []
    for _ in range(count):
        lhs = draw(st.sets(st.sampled_from(attrs), min_size=1, max_size=3))
        rhs = draw(st.sets(st.sampled_from(attrs), min_size=1, max_size=3))
        fds.append(FunctionalDependency(attr_set(lhs), attr_set(rhs)))
    return fds


@settings(max_examples=150, deadline=None)
@given(_fd_sets(), st.sets(st.sampled_from("ABCDEF"), max_size=4),
       st.sets(st.sampled_from("ABCDEF"), max_size=4))
def test_closure_is_extensive_monotone_idempotent(fds, s, t):
    dfds = decompose_fds(fds)
    cs = attribute_closure(s, dfds)
    assert set(s) <= set(cs)
    assert attribute_closure(cs, dfds) == cs
    if s <= t:
        assert set(cs) <= set(attribute_closure(t, dfds))

from __future__ import annotations

import random

import pytest

from schemacut import Policy, Schema, build_fdg, fixtures, make_policy, make_schema


@pytest.fixture(scope="session")
def example0() -> tuple[Schema, Policy]:
    return fixtures.example_schema("example0")


@pytest.fixture(scope="session")
def example1() -> tuple[Schema, Policy]:
    return fixtures.example_schema("example1")


@pytest.fixture(scope="session")
def example2() -> tuple[Schema, Policy]:
    return fixtures.example_schema("example2")


@pytest.fixture(scope="session")
def ex1_fdg(example1):
    return build_fdg(example1[0])


@pytest.fixture(scope="session")
def ex2_fdg(example2):
    return build_fdg(example2[0])


def random_schema(rng: random.Random, max_attrs: int = 12, max_relations: int = 4):
    """Small random schema with single-attribute dependency sources.

    Mirrors the shape of the bundled examples: every relation gets a key
    attribute determining the rest, plus occasional cross-relation bridge
    relations sharing attributes.
    """
    n_attrs = rng.randint(2, max_attrs)
    attrs = [f"a{i}" for i in range(n_attrs)]
    n_rel = rng.randint(1, max_relations)
    relations = []
    fds = []
    for r in range(n_rel):
        width = rng.randint(1, min(4, n_attrs))
        members = rng.sample(attrs, width)
        key = members[0]
        relations.append((f"R{r}", members, [key]))
        for other in members[1:]:
            if rng.random() < 0.8:
                fds.append(([key], [other]))
    return make_schema(relations, fds)


def random_policy(rng: random.Random, schema: Schema, max_sets: int = 3):
    pool = list(schema.attribute_names)
    sets = []
    for _ in range(rng.randint(1, max_sets)):
        if len(pool) < 2:
            break
        size = rng.randint(2, min(3, len(pool)))
        sets.append(rng.sample(pool, size))
    return make_policy(schema, forbidden=sets)

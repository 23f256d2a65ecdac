"""Join chain enumeration: common ancestors and simple-path combinations.

A join chain for an attribute set is the edge union of one simple path
per target attribute, all starting from one common ancestor vertex.  The
enumeration works on the reversed graph (one DFS per target), combines
paths per shared end vertex, and discards chains that contain another
chain.  A target that is itself the ancestor contributes an empty path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .fdg import EdgeRef, Fdg, FdgEdge
from .model import AttributeSet, SchemaError, attr_set


@dataclass(frozen=True)
class PathLimits:
    """Guards against exponential simple-path enumeration.

    ``max_paths_per_target`` bounds both the stored paths per end vertex
    and the path combinations taken per ancestor; ``max_path_length``
    bounds edges per path and defaults to the vertex count (no-op for
    simple paths).  Exceeding a limit sets a truncation flag rather than
    failing.
    """

    max_paths_per_target: int = 10_000
    max_path_length: int | None = None

    def __post_init__(self) -> None:
        if self.max_paths_per_target <= 0:
            raise ValueError("max_paths_per_target must be positive")
        if self.max_path_length is not None and self.max_path_length <= 0:
            raise ValueError("max_path_length must be positive")


@dataclass(frozen=True)
class SimplePaths:
    start: AttributeSet
    paths: Mapping[AttributeSet, tuple[tuple[EdgeRef, ...], ...]]
    truncated: bool


@dataclass(frozen=True)
class JoinChain:
    edges: frozenset[EdgeRef]
    ancestor: AttributeSet
    targets: AttributeSet


@dataclass(frozen=True)
class ChainFamily:
    source_set: AttributeSet
    chains: tuple[JoinChain, ...]
    truncated: bool = False

    def edge_sets(self) -> tuple[frozenset[EdgeRef], ...]:
        return tuple(chain.edges for chain in self.chains)


def reverse_graph(fdg: Fdg) -> Fdg:
    """Same vertices, every edge reversed. An involution."""
    edges = tuple(
        FdgEdge(e.dst, e.src, e.provenance)
        for e in sorted(fdg.edges, key=lambda e: (e.dst, e.src))
    )
    return Fdg(fdg.vertices, edges)


def enumerate_simple_paths(
    fdg: Fdg, start: AttributeSet, limits: PathLimits | None = None
) -> SimplePaths:
    """All simple paths from ``start``, grouped by end vertex.

    The start maps to the single empty path.  Neighbour order follows
    vertex order, so the output is deterministic.
    """
    limits = limits or PathLimits()
    if not fdg.has_vertex(start):
        raise SchemaError(f"unknown vertex {''.join(start)!r}")
    max_len = limits.max_path_length or max(len(fdg.vertices), 1)
    adj = fdg.out_adjacency()

    paths: dict[AttributeSet, list[tuple[EdgeRef, ...]]] = {start: [()]}
    truncated = False

    def walk(here: AttributeSet, trail: tuple[EdgeRef, ...], seen: frozenset) -> None:
        nonlocal truncated
        for ref in adj[here]:
            nxt = ref[1]
            if nxt in seen:
                continue
            if len(trail) + 1 > max_len:
                truncated = True
                continue
            extended = trail + (ref,)
            bucket = paths.setdefault(nxt, [])
            if len(bucket) >= limits.max_paths_per_target:
                truncated = True
            else:
                bucket.append(extended)
            walk(nxt, extended, seen | {nxt})

    walk(start, (), frozenset({start}))
    return SimplePaths(start, {k: tuple(v) for k, v in paths.items()}, truncated)


def join_chains(
    fdg: Fdg, targets: Iterable[str], limits: PathLimits | None = None
) -> ChainFamily:
    """Enumerate the join chains of an attribute set over ``fdg``.

    Every target must exist as a single-attribute vertex.  For each common
    ancestor, every combination of one simple path per target yields a
    candidate chain (edges restored to the original orientation); identical
    edge sets collapse and chains containing another chain are dropped.
    """
    limits = limits or PathLimits()
    source_set = attr_set(targets)
    target_vertices = [(name,) for name in source_set]
    for tv in target_vertices:
        if not fdg.has_vertex(tv):
            raise SchemaError(f"unknown target attribute {tv[0]!r}")

    reversed_fdg = reverse_graph(fdg)
    per_target = {
        tv: enumerate_simple_paths(reversed_fdg, tv, limits) for tv in target_vertices
    }
    truncated = any(sp.truncated for sp in per_target.values())

    ancestors = sorted(
        set.intersection(*(set(sp.paths) for sp in per_target.values()))
    ) if per_target else []

    chains: list[JoinChain] = []
    seen: set[frozenset[EdgeRef]] = set()
    for ancestor in ancestors:
        combos = itertools.product(
            *(per_target[tv].paths[ancestor] for tv in target_vertices)
        )
        for count, combo in enumerate(combos):
            if count >= limits.max_paths_per_target:
                truncated = True
                break
            edges = frozenset(
                (ref[1], ref[0]) for path in combo for ref in path
            )
            if edges not in seen:
                seen.add(edges)
                chains.append(JoinChain(edges, ancestor, source_set))

    kept = tuple(
        chain
        for chain in chains
        if not any(other.edges < chain.edges for other in chains)
    )
    return ChainFamily(source_set, kept, truncated)

"""Functional dependency graph construction and export.

Vertices are attribute sets: every single attribute, every multi-attribute
dependency left-hand side, and every relation's attribute set.  Edges are
the decomposed dependencies plus one containment edge from each vertex to
every strictly contained vertex (the projection dependencies).  Derived
transitive dependencies are *not* materialised as edges; reachability
carries them, which reproduces the base graph exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .closure import decompose_fds
from .model import AttributeSet, Schema

EdgeRef = tuple[AttributeSet, AttributeSet]
"""An edge is identified by its (source attrs, destination attrs) pair."""

KIND_SINGLE = "single-attribute"
KIND_LHS = "lhs-set"
KIND_RELATION = "relation-set"

PROV_FD = "fd"
PROV_CONTAINMENT = "containment"


@dataclass(frozen=True)
class FdgVertex:
    attrs: AttributeSet
    kind: str

    @property
    def label(self) -> str:
        return "".join(self.attrs)


@dataclass(frozen=True)
class FdgEdge:
    src: AttributeSet
    dst: AttributeSet
    provenance: str

    @property
    def ref(self) -> EdgeRef:
        return (self.src, self.dst)


@dataclass(frozen=True)
class Fdg:
    vertices: tuple[FdgVertex, ...]
    edges: tuple[FdgEdge, ...]

    def vertex_attrs(self) -> tuple[AttributeSet, ...]:
        return tuple(v.attrs for v in self.vertices)

    def has_vertex(self, attrs: AttributeSet) -> bool:
        return any(v.attrs == attrs for v in self.vertices)

    def out_adjacency(self) -> Mapping[AttributeSet, tuple[EdgeRef, ...]]:
        """Outgoing edges per vertex, neighbours in vertex order."""
        adj: dict[AttributeSet, list[EdgeRef]] = {v.attrs: [] for v in self.vertices}
        for edge in self.edges:
            adj[edge.src].append(edge.ref)
        return {src: tuple(sorted(refs, key=lambda r: r[1])) for src, refs in adj.items()}


def build_fdg(schema: Schema) -> Fdg:
    """Construct the dependency graph of a validated schema.

    Probabilistic dependencies contribute ordinary edges.  The result is
    byte-stable: vertices sorted by attribute set, edges by (src, dst).
    """
    dfds = decompose_fds(schema.fds)

    kinds: dict[AttributeSet, str] = {}
    for rel in schema.relations:
        for attr in rel.attributes:
            kinds[(attr,)] = KIND_SINGLE
    for dep in dfds:
        if len(dep.lhs) > 1 and dep.lhs not in kinds:
            kinds[dep.lhs] = KIND_LHS
    for rel in schema.relations:
        if len(rel.attributes) > 1:
            # A set that is both a lhs and a relation is one vertex,
            # recorded as a relation set.
            kinds[rel.attributes] = KIND_RELATION

    vertices = tuple(FdgVertex(attrs, kinds[attrs]) for attrs in sorted(kinds))
    vertex_sets = set(kinds)

    refs: dict[EdgeRef, str] = {}
    for dep in dfds:
        dst = (dep.rhs[0],)
        if dep.lhs == dst or dep.lhs not in vertex_sets or dst not in vertex_sets:
            continue
        refs.setdefault((dep.lhs, dst), PROV_FD)
    for big in vertex_sets:
        if len(big) == 1:
            continue
        big_set = set(big)
        for small in vertex_sets:
            if small != big and set(small) < big_set:
                refs.setdefault((big, small), PROV_CONTAINMENT)

    edges = tuple(FdgEdge(src, dst, prov) for (src, dst), prov in sorted(refs.items()))
    return Fdg(vertices, edges)


def transitive_closure_pairs(fdg: Fdg) -> frozenset[tuple[AttributeSet, AttributeSet]]:
    """All ordered (src, dst) vertex pairs with dst reachable from src, src != dst."""
    adj = fdg.out_adjacency()
    pairs: set[tuple[AttributeSet, AttributeSet]] = set()
    for start in adj:
        seen = {start}
        stack = [start]
        while stack:
            here = stack.pop()
            for _, nxt in adj[here]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
                    pairs.add((start, nxt))
    return frozenset(pairs)


def export_dot(fdg: Fdg, highlight: Iterable[EdgeRef] | None = None) -> str:
    """Render the graph as DOT, vertex labels joined from attribute names.

    Edges in ``highlight`` are drawn bold and red.
    """
    hot = set(highlight or ())
    lines = ["digraph fdg {"]
    for vertex in fdg.vertices:
        lines.append(f'  "{vertex.label}";')
    for edge in fdg.edges:
        src = "".join(edge.src)
        dst = "".join(edge.dst)
        if edge.ref in hot:
            lines.append(f'  "{src}" -> "{dst}" [color=red, style=bold];')
        else:
            lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

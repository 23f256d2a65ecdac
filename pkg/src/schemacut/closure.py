"""Dependency normalisation, attribute-set closure and identifiers.

The full dependency closure is never materialised (it is exponential);
every consumer asks closure queries instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import AttributeSet, FunctionalDependency, attr_set


@dataclass(frozen=True)
class DecomposedFdSet:
    """Dependencies rewritten so each right-hand side is a single attribute.

    ``origin[i]`` is the index of the source dependency that produced
    ``fds[i]``, for provenance.
    """

    fds: tuple[FunctionalDependency, ...]
    origin: tuple[int, ...]

    def __iter__(self):
        return iter(self.fds)


def decompose_fds(fds: Sequence[FunctionalDependency]) -> DecomposedFdSet:
    """Split every dependency into one dependency per right-hand attribute.

    The result is closure-equivalent to the input and duplicate-free;
    first occurrence wins for provenance.
    """
    out: list[FunctionalDependency] = []
    origin: list[int] = []
    seen: set[tuple[AttributeSet, str]] = set()
    for idx, dep in enumerate(fds):
        for attr in dep.rhs:
            if attr in dep.lhs:
                continue
            key = (dep.lhs, attr)
            if key in seen:
                continue
            seen.add(key)
            out.append(FunctionalDependency(dep.lhs, (attr,), dep.probabilistic))
            origin.append(idx)
    return DecomposedFdSet(tuple(out), tuple(origin))


def attribute_closure(start: Iterable[str], fds: DecomposedFdSet) -> AttributeSet:
    """Smallest superset S of ``start`` with lhs ⊆ S implying rhs ⊆ S for all fds.

    Worklist fixpoint; the result is order-independent.
    """
    closure = set(start)
    pending = True
    remaining = list(fds.fds)
    while pending:
        pending = False
        still = []
        for dep in remaining:
            if set(dep.lhs) <= closure:
                if dep.rhs[0] not in closure:
                    closure.add(dep.rhs[0])
                    pending = True
            else:
                still.append(dep)
        remaining = still
    return attr_set(closure)


def identifiers_of(
    attr: str,
    fds: DecomposedFdSet,
    candidates: Sequence[AttributeSet],
) -> tuple[AttributeSet, ...]:
    """Candidate sets that determine ``attr`` without containing it."""
    found = []
    for cand in sorted(set(candidates)):
        if attr in cand:
            continue
        if attr in attribute_closure(cand, fds):
            found.append(cand)
    return tuple(found)

"""The order on plane posets and its Hasse graphs.

``P <= Q`` iff ``E(Q)`` is contained in ``E(P)``. Under the bijection with
permutations this is the weak Bruhat order; :func:`weak_bruhat_leq` computes
that order from inversion sets on a separate code path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Generic, Hashable, Sequence, TypeVar

from .poset import (
    DEFAULT_MAX_N,
    CardinalityMismatch,
    Permutation,
    PlanePoset,
    enumerate_posets,
    is_plane_forest,
    is_valid,
    level,
    psi,
    _pair_bit,
)

Node = TypeVar("Node", bound=Hashable)


def _same_size(p, q) -> None:
    if len(p) != len(q):
        raise CardinalityMismatch(f"cardinalities differ: {len(p)} vs {len(q)}")


def leq(p: PlanePoset, q: PlanePoset) -> bool:
    _same_size(p, q)
    return q.mask & ~p.mask == 0


def lt(p: PlanePoset, q: PlanePoset) -> bool:
    return p != q and leq(p, q)


def inversions(sigma: Permutation | Sequence[int]) -> frozenset[tuple[int, int]]:
    """Pairs of values ``i < j`` with ``j`` written before ``i``."""
    word = sigma.word if isinstance(sigma, Permutation) else tuple(sigma)
    seen: list[int] = []
    inv = set()
    for v in word:
        inv.update((v, u) for u in seen if u > v)
        seen.append(v)
    return frozenset(inv)


def weak_bruhat_leq(sigma: Permutation | Sequence[int], tau: Permutation | Sequence[int]) -> bool:
    _same_size(sigma.word if isinstance(sigma, Permutation) else sigma,
               tau.word if isinstance(tau, Permutation) else tau)
    return inversions(sigma) <= inversions(tau)


def covers(p: PlanePoset) -> list[PlanePoset]:
    """Upper covers of ``p``: drop one h-pair and keep the result plane."""
    out = []
    for i, j in sorted(p.hset):
        q = PlanePoset(p.n, p.mask & ~_pair_bit(i, j))
        if is_valid(q):
            out.append(q)
    return sorted(out, key=PlanePoset.sort_key)


def covers_by_transposition(p: PlanePoset) -> list[PlanePoset]:
    """Upper covers via swapping adjacent ascending letters of the word."""
    word = p.word
    out = []
    for k in range(len(word) - 1):
        if word[k] < word[k + 1]:
            w = list(word)
            w[k], w[k + 1] = w[k + 1], w[k]
            out.append(psi(w))
    return sorted(out, key=PlanePoset.sort_key)


@dataclass
class HasseGraph(Generic[Node]):
    """Cover graph, edges pointing from the smaller to the larger element."""

    n: int
    nodes: list[Node]
    edges: set[tuple[Node, Node]] = field(default_factory=set)

    def label(self, node) -> str:
        return str(node)

    def sorted_edges(self) -> list[tuple[Node, Node]]:
        index = {v: k for k, v in enumerate(self.nodes)}
        return sorted(self.edges, key=lambda e: (index[e[0]], index[e[1]]))

    def successors(self) -> dict[Node, list[Node]]:
        succ: dict[Node, list[Node]] = {v: [] for v in self.nodes}
        for a, b in self.sorted_edges():
            succ[a].append(b)
        return succ

    def to_dot(self, name: str | None = None) -> str:
        name = name or f"bruhat_{self.n}"
        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            lines.append(f'  "{self.label(v)}";')
        for a, b in self.sorted_edges():
            lines.append(f'  "{self.label(a)}" -> "{self.label(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "nodes": [self.label(v) for v in self.nodes],
                "edges": [[self.label(a), self.label(b)] for a, b in self.sorted_edges()],
            }
        )


def hasse(n: int, forest_only: bool = False, max_n: int | None = DEFAULT_MAX_N) -> HasseGraph[PlanePoset]:
    """Hasse graph of the order on plane posets of size ``n``.

    With ``forest_only`` the order is restricted to plane forests and the
    covers are recomputed inside the restricted poset, which is not graded.
    """
    nodes = enumerate_posets(n, max_n)
    if not forest_only:
        edges = {(p, q) for p in nodes for q in covers(p)}
        return HasseGraph(n, nodes, edges)
    nodes = [p for p in nodes if is_plane_forest(p)]
    edges = set()
    for p in nodes:
        above = [q for q in nodes if q != p and q.mask & ~p.mask == 0]
        for q in above:
            if not any(r != q and q.mask & ~r.mask == 0 for r in above):
                edges.add((p, q))
    return HasseGraph(n, nodes, edges)


def saturated_chain(p: PlanePoset, q: PlanePoset) -> list[PlanePoset] | None:
    """A maximal chain of covers from ``p`` up to ``q``, or None if ``p`` is not below ``q``.

    The chain lists the intermediate and final elements, so ``p == q`` gives ``[]``.
    """
    if not leq(p, q):
        return None
    chain = []
    cur = p
    while cur != q:
        for i, j in sorted(cur.hset - q.hset):
            nxt = PlanePoset(cur.n, cur.mask & ~_pair_bit(i, j))
            if is_valid(nxt):
                break
        else:  # pragma: no cover - excluded by the chain lemma
            raise AssertionError(f"no removable pair from {cur} towards {q}")
        chain.append(nxt)
        cur = nxt
    return chain


def graded_ok(graph: HasseGraph[PlanePoset]) -> bool:
    return all(level(b) == level(a) + 1 for a, b in graph.edges)

"""Plane forests, their local transformation, and the Tamari comparison.

A plane forest is a plane poset whose h-Hasse graph is a rooted forest. With
canonical labels the vertices are numbered in preorder: parents before
children, siblings left to right.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Optional

from .bruhat import HasseGraph, hasse, leq
from .poset import (
    DEFAULT_MAX_N,
    CardinalityMismatch,
    PlanePoset,
    PlanePosetError,
    check_guard,
    is_plane_forest,
    validate,
)


class NotAForest(PlanePosetError):
    pass


class LeafVertex(PlanePosetError):
    pass


@dataclass(frozen=True)
class PlaneForest:
    poset: PlanePoset
    parent: tuple[Optional[int], ...]  # parent[v - 1]
    children: tuple[tuple[int, ...], ...]  # children[v - 1], left to right
    roots: tuple[int, ...]

    @classmethod
    def from_poset(cls, poset: PlanePoset) -> PlaneForest:
        if not is_plane_forest(poset):
            raise NotAForest(f"{poset} contains the pattern 213")
        n = poset.n
        parent: list[Optional[int]] = []
        kids: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for v in range(1, n + 1):
            below = [u for u in range(1, v) if poset.is_h(u, v)]
            p = max(below) if below else None
            parent.append(p)
            if p is None:
                roots.append(v)
            else:
                kids[p - 1].append(v)
        return cls(poset, tuple(parent), tuple(tuple(k) for k in kids), tuple(roots))

    @classmethod
    def from_structure(cls, roots: list[int], children: dict[int, list[int]]) -> PlaneForest:
        """Relabel an arbitrary ordered forest in preorder and build its poset."""
        order: list[int] = []
        ancestors: dict[int, list[int]] = {}

        def walk(v: int, anc: list[int]) -> None:
            order.append(v)
            ancestors[v] = anc
            for c in children.get(v, []):
                walk(c, anc + [v])

        for r in roots:
            walk(r, [])
        label = {v: k for k, v in enumerate(order, start=1)}
        pairs = [(label[a], label[v]) for v in order for a in ancestors[v]]
        return cls.from_poset(validate(len(order), pairs))

    @property
    def n(self) -> int:
        return self.poset.n

    def is_leaf(self, v: int) -> bool:
        return not self.children[v - 1]

    def render(self) -> str:
        """Nested-parenthesis form, e.g. ``1(2,3)``."""

        def node(v: int) -> str:
            kids = self.children[v - 1]
            return str(v) + ("(" + ",".join(node(c) for c in kids) + ")" if kids else "")

        return ",".join(node(r) for r in self.roots)

    def __str__(self) -> str:
        return str(self.poset)


def as_forest(f: PlaneForest | PlanePoset) -> PlaneForest:
    return f if isinstance(f, PlaneForest) else PlaneForest.from_poset(f)


def forest_transformation(forest: PlaneForest | PlanePoset, s: int) -> PlaneForest:
    """Move the rightmost child subtree of ``s`` to sit just right of ``s``.

    If ``s`` has a parent the subtree becomes the next sibling of ``s``;
    otherwise it becomes a new root immediately after the tree of ``s``.
    """
    forest = as_forest(forest)
    if not 1 <= s <= forest.n:
        raise PlanePosetError(f"vertex {s} not in 1..{forest.n}")
    if forest.is_leaf(s):
        raise LeafVertex(f"vertex {s} is a leaf")
    children = {v: list(forest.children[v - 1]) for v in range(1, forest.n + 1)}
    roots = list(forest.roots)
    t = children[s].pop()
    p = forest.parent[s - 1]
    siblings = roots if p is None else children[p]
    siblings.insert(siblings.index(s) + 1, t)
    return PlaneForest.from_structure(roots, children)


def transformations(forest: PlaneForest | PlanePoset) -> list[PlaneForest]:
    forest = as_forest(forest)
    return [forest_transformation(forest, s) for s in range(1, forest.n + 1) if not forest.is_leaf(s)]


def reachable_by_transformations(f: PlaneForest | PlanePoset, g: PlaneForest | PlanePoset) -> bool:
    f, g = as_forest(f), as_forest(g)
    if f.n != g.n:
        raise CardinalityMismatch(f"cardinalities differ: {f.n} vs {g.n}")
    seen = {f.poset}
    queue = deque([f])
    while queue:
        cur = queue.popleft()
        if cur.poset == g.poset:
            return True
        for nxt in transformations(cur):
            if nxt.poset not in seen:
                seen.add(nxt.poset)
                queue.append(nxt)
    return False


# -- binary trees -----------------------------------------------------------

@dataclass(frozen=True)
class BinaryTree:
    left: Optional[BinaryTree] = None
    right: Optional[BinaryTree] = None

    @property
    def size(self) -> int:
        return 1 + (self.left.size if self.left else 0) + (self.right.size if self.right else 0)

    def __str__(self) -> str:
        """Balanced parentheses: ``(left)right`` per internal node."""
        return "(" + (str(self.left) if self.left else "") + ")" + (str(self.right) if self.right else "")


@lru_cache(maxsize=None)
def binary_trees(n: int) -> tuple[Optional[BinaryTree], ...]:
    """All binary trees with ``n`` internal nodes; the empty tree is None."""
    if n == 0:
        return (None,)
    out = []
    for k in range(n):
        for left in binary_trees(k):
            for right in binary_trees(n - 1 - k):
                out.append(BinaryTree(left, right))
    return tuple(out)


def right_rotations(t: Optional[BinaryTree]) -> list[BinaryTree]:
    """Trees obtained by one rotation ``((A)B)C -> (A)((B)C)`` anywhere in ``t``."""
    if t is None:
        return []
    out = []
    if t.left is not None:
        a, b = t.left.left, t.left.right
        out.append(BinaryTree(a, BinaryTree(b, t.right)))
    out += [BinaryTree(x, t.right) for x in right_rotations(t.left)]
    out += [BinaryTree(t.left, x) for x in right_rotations(t.right)]
    return out


def tamari_oracle(n: int, max_n: int | None = DEFAULT_MAX_N) -> HasseGraph[BinaryTree]:
    """Rotation graph on binary trees; the left comb is the unique minimum."""
    check_guard(n, max_n)
    nodes = list(binary_trees(n))
    edges = {(t, u) for t in nodes for u in right_rotations(t)}
    return HasseGraph(n, nodes, edges)


# -- isomorphism ------------------------------------------------------------

def _invariants(graph: HasseGraph) -> dict[Hashable, tuple[int, int, int, int]]:
    succ = {v: [] for v in graph.nodes}
    pred = {v: [] for v in graph.nodes}
    for a, b in graph.edges:
        succ[a].append(b)
        pred[b].append(a)

    @lru_cache(maxsize=None)
    def depth(v) -> int:
        return max((depth(u) + 1 for u in pred[v]), default=0)

    @lru_cache(maxsize=None)
    def height(v) -> int:
        return max((height(u) + 1 for u in succ[v]), default=0)

    return {v: (len(pred[v]), len(succ[v]), depth(v), height(v)) for v in graph.nodes}


def find_isomorphism(g1: HasseGraph, g2: HasseGraph) -> dict | None:
    """Backtracking search for a directed-graph isomorphism ``g1 -> g2``.

    Candidates are pruned by in/out degree and by longest-path rank from the
    sources and to the sinks.
    """
    if len(g1.nodes) != len(g2.nodes) or len(g1.edges) != len(g2.edges):
        return None
    inv1, inv2 = _invariants(g1), _invariants(g2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    e1, e2 = set(g1.edges), set(g2.edges)
    adj1 = {v: set() for v in g1.nodes}
    for a, b in e1:
        adj1[a].add(b)
        adj1[b].add(a)
    # place nodes by increasing depth so that neighbours are mapped early
    order = sorted(g1.nodes, key=lambda v: (inv1[v][2], -len(adj1[v])))
    by_inv: dict[tuple, list] = {}
    for v in g2.nodes:
        by_inv.setdefault(inv2[v], []).append(v)
    mapping: dict = {}
    used: set = set()

    def consistent(v, w) -> bool:
        for u in adj1[v]:
            if u in mapping:
                x = mapping[u]
                if ((u, v) in e1) != ((x, w) in e2) or ((v, u) in e1) != ((w, x) in e2):
                    return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for w in by_inv[inv1[v]]:
            if w not in used and consistent(v, w):
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def check_tamari_isomorphism(n: int, max_n: int | None = DEFAULT_MAX_N) -> bool:
    return find_isomorphism(hasse(n, forest_only=True, max_n=max_n), tamari_oracle(n, max_n)) is not None


def forest_leq_matches_reachability(n: int) -> bool:
    forests = [p for p in hasse(n, forest_only=True).nodes]
    return all(
        reachable_by_transformations(f, g) == leq(f, g) for f in forests for g in forests
    )

import pytest

from planeposets.bruhat import HasseGraph, hasse, leq, lt
from planeposets.poset import (
    CardinalityMismatch,
    antichain,
    chain,
    is_plane_forest,
    iter_posets,
    psi,
)
from planeposets.tamari import (
    BinaryTree,
    LeafVertex,
    NotAForest,
    PlaneForest,
    binary_trees,
    check_tamari_isomorphism,
    find_isomorphism,
    forest_transformation,
    reachable_by_transformations,
    right_rotations,
    tamari_oracle,
    transformations,
)


def forests(n):
    return [p for p in iter_posets(n) if is_plane_forest(p)]


def test_forest_structure():
    f = PlaneForest.from_poset(psi((1, 3, 2)))
    assert f.roots == (1,) and f.children[0] == (2, 3)
    assert f.render() == "1(2,3)"
    assert PlaneForest.from_poset(psi((3, 1, 2))).render() == "1(2),3"
    with pytest.raises(NotAForest):
        PlaneForest.from_poset(psi((2, 1, 3)))


def test_every_vertex_has_at_most_one_lower_cover():
    for n in range(7):
        for p in forests(n):
            f = PlaneForest.from_poset(p)
            for v in range(1, n + 1):
                below = {u for u in range(1, v) if p.is_h(u, v)}
                parent = f.parent[v - 1]
                if parent is None:
                    assert not below
                else:
                    # the h-predecessors of v are exactly the ancestors along one path
                    assert below == {parent} | {u for u in range(1, parent) if p.is_h(u, parent)}


@pytest.mark.parametrize(
    "start, s, result",
    [
        ((1, 2, 3), 2, (1, 3, 2)),
        ((1, 3, 2), 1, (3, 1, 2)),
        ((1, 2, 3), 1, (2, 3, 1)),
    ],
)
def test_transformation_examples(start, s, result):
    assert forest_transformation(psi(start), s).poset == psi(result)


def test_transformation_rejects_leaves():
    with pytest.raises(LeafVertex):
        forest_transformation(chain(3), 3)


def test_transformations_stay_forests_and_go_up():
    for n in range(7):
        for p in forests(n):
            for g in transformations(p):
                assert is_plane_forest(g.poset)
                assert lt(p, g.poset)
                assert g.poset.hset < p.hset


def test_single_transformations_are_forest_covers():
    for n in range(6):
        g = hasse(n, forest_only=True)
        edges = g.edges
        for p in g.nodes:
            assert {(p, t.poset) for t in transformations(p)} == {e for e in edges if e[0] == p}


def test_reachability_examples():
    assert reachable_by_transformations(chain(3), antichain(3))
    assert not reachable_by_transformations(psi((3, 1, 2)), psi((2, 3, 1)))
    f = psi((1, 3, 2))
    assert reachable_by_transformations(f, f)
    with pytest.raises(CardinalityMismatch):
        reachable_by_transformations(chain(2), chain(3))


def test_reachability_is_the_restricted_order():
    for n in range(5):
        fs = forests(n)
        for f in fs:
            for g in fs:
                assert reachable_by_transformations(f, g) == leq(f, g)


def test_binary_tree_counts_and_encoding():
    assert [len(binary_trees(n)) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    leaf = BinaryTree()
    assert str(leaf) == "()"
    assert str(BinaryTree(leaf, None)) == "(())"
    assert str(BinaryTree(None, leaf)) == "()()"
    assert all(t.size == 4 for t in binary_trees(4))


def test_rotation_example():
    left_comb = BinaryTree(BinaryTree(), None)
    assert right_rotations(left_comb) == [BinaryTree(None, BinaryTree())]


def test_tamari_oracle_examples():
    t3 = tamari_oracle(3)
    assert len(t3.nodes) == 5 and len(t3.edges) == 5
    assert len(tamari_oracle(1).nodes) == 1 and not tamari_oracle(1).edges
    assert len(tamari_oracle(4).nodes) == 14


def test_isomorphism_search():
    a = HasseGraph(3, [1, 2, 3], {(1, 2), (2, 3)})
    b = HasseGraph(3, ["x", "y", "z"], {("y", "z"), ("x", "y")})
    c = HasseGraph(3, ["x", "y", "z"], {("x", "y"), ("x", "z")})
    assert find_isomorphism(a, b) == {1: "x", 2: "y", 3: "z"}
    assert find_isomorphism(a, c) is None


def test_isomorphism_search_agrees_with_networkx():
    nx = pytest.importorskip("networkx")
    g, t = hasse(5, forest_only=True), tamari_oracle(5)
    mapping = find_isomorphism(g, t)
    assert mapping is not None
    assert {(mapping[a], mapping[b]) for a, b in g.edges} == t.edges
    assert nx.is_isomorphic(nx.DiGraph(list(g.edges)), nx.DiGraph(list(t.edges)))
    # the full order for n = 4 is not a lattice of binary trees
    assert find_isomorphism(hasse(4), tamari_oracle(4)) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_tamari_isomorphism(n):
    assert check_tamari_isomorphism(n)

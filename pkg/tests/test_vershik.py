"""Edge labelings, successor dynamics, towers, ranks, and coding words."""

import pytest

from polyadic import Diagram, Ordering, parse_polynomial
from polyadic.errors import (
    MaximalAtHorizon,
    MinimalAtHorizon,
    NonBijectiveLabeling,
    RankOutOfRange,
    TowerTooLarge,
)
from polyadic.vershik import FinitePath, k_coding_symbol, make_ordering


def visited(path):
    return [v.coords for v in path.vertices()]


def labels_of(ordering, path):
    return [ordering.label_of(e) for e in path.edges]


class TestOrderings:
    def test_source_lex_labels(self, pascal, pascal_lex):
        edges = pascal_lex.edges_in(pascal.vertex((2, 1)))
        assert [e.source.coords for e in edges] == [(1, 1), (2, 0)]
        assert [pascal_lex.label_of(e) for e in edges] == [1, 2]

    def test_revlex_reverses(self, pascal):
        lex = Ordering(pascal)
        rev = Ordering(pascal, preset="source-revlex")
        for level in range(1, 6):
            for w in pascal.vertices(level):
                assert rev.edges_in(w) == tuple(reversed(lex.edges_in(w)))

    def test_copies_stay_adjacent(self, quartic):
        ordering = Ordering(quartic)
        edges = ordering.edges_in(quartic.vertex((6, 6)))
        assert [(e.source.coords, e.copy) for e in edges] == [
            ((2, 6), 1),
            ((3, 5), 1),
            ((3, 5), 2),
            ((4, 4), 1),
            ((5, 3), 1),
            ((5, 3), 2),
            ((5, 3), 3),
            ((6, 2), 1),
        ]

    def test_random_is_seed_deterministic(self, pascal):
        a = Ordering(pascal, preset="random", seed=7)
        b = Ordering(pascal, preset="random", seed=7)
        c = Ordering(pascal, preset="random", seed=8)
        same = True
        for level in range(1, 6):
            for w in pascal.vertices(level):
                assert a.edges_in(w) == b.edges_in(w)
                same = same and a.edges_in(w) == c.edges_in(w)
        assert not same

    def test_random_labels_independent_of_query_order(self, quartic):
        a = Ordering(quartic, preset="random", seed=11)
        b = Ordering(quartic, preset="random", seed=11)
        w = quartic.vertex((8, 4))
        # touch b's cache in a scrambled order first
        for v in reversed(quartic.vertices(2)):
            b.edges_in(v)
        assert a.edges_in(w) == b.edges_in(w)

    def test_every_labeling_is_bijective(self, all_diagrams):
        for diagram in all_diagrams.values():
            for preset in ("source-lex", "source-revlex", "random"):
                ordering = Ordering(diagram, preset=preset, seed=5)
                for level in range(1, 5):
                    for w in diagram.vertices(level):
                        edges = ordering.edges_in(w)
                        assert sorted(ordering.label_of(e) for e in edges) == list(
                            range(1, len(edges) + 1)
                        )
                        assert len(edges) == diagram.indegree(w)

    def test_explicit_table_relabels(self, pascal):
        ordering = Ordering(pascal, preset="explicit", table={"2:1,1": [2, 1]})
        w = pascal.vertex((1, 1))
        assert [e.source.coords for e in ordering.edges_in(w)] == [(1, 0), (0, 1)]
        # untouched vertices keep the source-lex base
        assert [e.source.coords for e in ordering.edges_in(pascal.vertex((2, 1)))] == [
            (1, 1),
            (2, 0),
        ]

    def test_explicit_table_must_be_bijective(self, pascal):
        ordering = Ordering(pascal, preset="explicit", table={"2:1,1": [1, 1]})
        with pytest.raises(NonBijectiveLabeling):
            ordering.edges_in(pascal.vertex((1, 1)))

    def test_make_ordering_forms(self, pascal):
        assert make_ordering(pascal).preset == "source-lex"
        assert make_ordering(pascal, "source-revlex").preset == "source-revlex"
        random_spec = make_ordering(pascal, {"preset": "random", "seed": 3})
        assert (random_spec.preset, random_spec.seed) == ("random", 3)
        explicit = make_ordering(pascal, {"explicit": {"2:1,1": [2, 1]}})
        assert explicit.preset == "explicit"
        with pytest.raises(ValueError):
            Ordering(pascal, preset="alphabetical")


class TestExtremePaths:
    def test_minimal_visits(self, pascal, pascal_lex):
        assert visited(pascal_lex.minimal_path(pascal.vertex((2, 1)))) == [
            (0, 0),
            (0, 1),
            (1, 1),
            (2, 1),
        ]

    def test_maximal_visits(self, pascal, pascal_lex):
        assert visited(pascal_lex.maximal_path(pascal.vertex((2, 1)))) == [
            (0, 0),
            (1, 0),
            (2, 0),
            (2, 1),
        ]

    def test_root_paths_are_empty(self, pascal, pascal_lex):
        assert pascal_lex.minimal_path(pascal.root).edges == ()
        assert pascal_lex.maximal_path(pascal.root).edges == ()

    def test_extremes_bound_the_tower(self, quartic):
        ordering = Ordering(quartic)
        v = quartic.vertex((8, 4))
        tower = ordering.tower(v)
        assert tower[0] == ordering.minimal_path(v)
        assert tower[len(tower) - 1] == ordering.maximal_path(v)


class TestSuccessor:
    def test_two_path_tower(self, pascal, pascal_lex):
        v = pascal.vertex((1, 1))
        low = pascal_lex.minimal_path(v)
        assert visited(low) == [(0, 0), (0, 1), (1, 1)]
        high = pascal_lex.successor(low)
        assert visited(high) == [(0, 0), (1, 0), (1, 1)]
        with pytest.raises(MaximalAtHorizon):
            pascal_lex.successor(high)

    def test_predecessor_inverts(self, pascal, pascal_lex):
        v = pascal.vertex((2, 2))
        for x in pascal_lex.tower(v):
            if x != pascal_lex.maximal_path(v):
                assert pascal_lex.predecessor(pascal_lex.successor(x)) == x
        with pytest.raises(MinimalAtHorizon):
            pascal_lex.predecessor(pascal_lex.minimal_path(v))

    def test_tower_enumerates_every_path(self, all_diagrams):
        for diagram in all_diagrams.values():
            ordering = Ordering(diagram)
            for level in range(1, 4):
                for v in diagram.vertices(level):
                    tower = ordering.tower(v)
                    assert len(tower) == diagram.dimension(v)
                    assert len({x.edges for x in tower}) == len(tower)

    def test_tower_with_parallel_edges(self, quartic):
        ordering = Ordering(quartic)
        tower = ordering.tower(quartic.vertex((4, 4)))
        assert len(tower) == 15
        copies = {tuple(e.copy for e in x.edges) for x in tower}
        assert len(copies) > 1  # copy indices distinguish parallel paths

    def test_deepest_differing_edge_order(self, pascal, quartic):
        # rank order is lexicographic on label words read deepest edge first
        for diagram, coords in ((pascal, (2, 2)), (quartic, (8, 4))):
            ordering = Ordering(diagram)
            tower = ordering.tower(diagram.vertex(coords))
            words = [labels_of(ordering, x)[::-1] for x in tower]
            assert words == sorted(words)

    def test_budget_guard(self, pascal, pascal_lex):
        with pytest.raises(TowerTooLarge):
            pascal_lex.tower(pascal.vertex((2, 2)), budget=5)

    def test_iter_tower_matches(self, pascal, pascal_lex):
        v = pascal.vertex((3, 1))
        assert tuple(pascal_lex.iter_tower(v)) == pascal_lex.tower(v).paths


class TestRanks:
    def test_round_trip_small(self, pascal, pascal_lex):
        v = pascal.vertex((2, 2))
        for rank, x in enumerate(pascal_lex.tower(v)):
            assert pascal_lex.path_rank(x) == rank
            assert pascal_lex.path_unrank(v, rank) == x

    def test_round_trip_everywhere(self, all_diagrams):
        for diagram in all_diagrams.values():
            ordering = Ordering(diagram, preset="random", seed=2)
            for level in range(1, 4):
                for v in diagram.vertices(level):
                    for rank, x in enumerate(ordering.iter_tower(v)):
                        assert ordering.path_rank(x) == rank
                        assert ordering.path_unrank(v, rank) == x

    def test_extreme_ranks(self, pascal, pascal_lex):
        v = pascal.vertex((3, 2))
        assert pascal_lex.path_rank(pascal_lex.minimal_path(v)) == 0
        assert (
            pascal_lex.path_rank(pascal_lex.maximal_path(v))
            == pascal.dimension(v) - 1
        )

    def test_rank_bounds(self, pascal, pascal_lex):
        v = pascal.vertex((2, 1))
        with pytest.raises(RankOutOfRange):
            pascal_lex.path_unrank(v, 3)
        with pytest.raises(RankOutOfRange):
            pascal_lex.path_unrank(v, -1)


class TestCoding:
    def test_symbol_prefix_equivalence(self, pascal, pascal_lex):
        v = pascal.vertex((2, 2))
        tower = pascal_lex.tower(v)
        for k in range(v.level + 1):
            for a in tower:
                for b in tower:
                    assert (k_coding_symbol(a, k) == k_coding_symbol(b, k)) == (
                        a.edges[:k] == b.edges[:k]
                    )

    def test_level_one_divergence(self, pascal, pascal_lex):
        v = pascal.vertex((1, 1))
        low, high = pascal_lex.tower(v)
        assert k_coding_symbol(low, 0) == k_coding_symbol(high, 0) == ()
        assert k_coding_symbol(low, 1) != k_coding_symbol(high, 1)

    def test_symbol_depth_validation(self, pascal, pascal_lex):
        x = pascal_lex.minimal_path(pascal.vertex((2, 1)))
        with pytest.raises(ValueError):
            k_coding_symbol(x, 4)

    def test_vertex_coding_words(self, pascal, pascal_lex):
        w = pascal.vertex((2, 1))
        assert [v.coords for v in pascal_lex.vertex_coding(w, 2)] == [(1, 1), (2, 0)]
        assert [v.coords for v in pascal_lex.vertex_coding(w, 1)] == [
            (0, 1),
            (1, 0),
            (1, 0),
        ]

    def test_level_one_word_repeats_root(self, quartic):
        ordering = Ordering(quartic)
        w = quartic.vertex((3, 1))
        word = ordering.vertex_coding(w, 0)
        assert word == (quartic.root,) * quartic.indegree(w)
        assert len(word) == 2

    def test_coding_matches_tower_visits(self, pascal, quartic):
        # paths sharing a level-j-to-w segment sit in one contiguous tower
        # block of dim(u) paths, so expanding the word by dim recovers the
        # level-j visit sequence of the whole tower
        for diagram, max_level in ((pascal, 4), (quartic, 3)):
            ordering = Ordering(diagram, preset="random", seed=9)
            for level in range(1, max_level + 1):
                for w in diagram.vertices(level):
                    tower = ordering.tower(w)
                    for j in range(level):
                        word = ordering.vertex_coding(w, j)
                        visits = [x.vertices()[j] for x in tower]
                        expanded = [
                            u for u in word for _ in range(diagram.dimension(u))
                        ]
                        assert visits == expanded

    def test_basic_block_examples(self, pascal, pascal_lex):
        a = (((0, 1), 1),)
        b = (((1, 0), 1),)
        assert pascal_lex.basic_block(pascal.vertex((1, 1)), 1) == (a, b)
        assert pascal_lex.basic_block(pascal.vertex((2, 2)), 1) == (a, a, b, a, b, b)

    def test_basic_block_lengths(self, pascal, pascal_lex):
        for level in range(1, 7):
            for v in pascal.vertices(level):
                for k in (0, 1, level):
                    block = pascal_lex.basic_block(v, k)
                    assert len(block) == pascal.dimension(v)
                    if k == level:
                        assert len(set(block)) == len(block)


class TestFinitePaths:
    def test_contiguity_enforced(self, pascal, pascal_lex):
        v = pascal.vertex((2, 1))
        good = pascal_lex.minimal_path(v)
        with pytest.raises(ValueError):
            FinitePath(v, good.edges[:1])  # does not reach the terminal
        with pytest.raises(ValueError):
            FinitePath(v, (good.edges[0], good.edges[0], good.edges[2]))
        with pytest.raises(ValueError):
            FinitePath(v, ())

    def test_vertices_walk(self, quartic):
        ordering = Ordering(quartic)
        x = ordering.maximal_path(quartic.vertex((8, 4)))
        walk = x.vertices()
        assert walk[0] == quartic.root
        assert walk[-1] == quartic.vertex((8, 4))
        assert [v.level for v in walk] == [0, 1, 2, 3]

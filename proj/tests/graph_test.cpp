#include <catch2/catch_amalgamated.hpp>

#include <gwkit/graph.hpp>
#include <gwkit/oracles.hpp>

using namespace gwkit;

TEST_CASE("finite graph construction and adjacency", "[graph]") {
    Graph c5 = Graph::cycle(5);
    REQUIRE(c5.is_finite());
    REQUIRE(c5.vertex_count() == 5);
    REQUIRE(c5.link(2) == std::vector<VertexId>{1, 3});
    REQUIRE(c5.star(2) == std::vector<VertexId>{1, 2, 3});
    REQUIRE(c5.adjacent(0, 4));
    REQUIRE_FALSE(c5.adjacent(0, 2));

    SECTION("duplicate edges collapse") {
        Graph g = Graph::finite_graph({{0, 1}, {1, 0}, {0, 1}});
        REQUIRE(g.link(0) == std::vector<VertexId>{1});
    }

    SECTION("loop edges are rejected, naming the pair") {
        REQUIRE_THROWS_MATCHES(Graph::finite_graph({{2, 2}}), ValidationError,
                               Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("(2, 2)")));
    }

    SECTION("edges must reference declared vertices when a list is given") {
        REQUIRE_THROWS_AS(Graph::finite_graph({{0, 3}}, {0, 1, 2}), ValidationError);
    }

    SECTION("queries on unknown vertices are domain errors") {
        REQUIRE_THROWS_AS(c5.link(9), DomainError);
        REQUIRE_THROWS_AS(c5.adjacent(0, 9), DomainError);
    }
}

TEST_CASE("common link", "[graph]") {
    Graph c5 = Graph::cycle(5);
    REQUIRE(common_link(c5, {1, 3}) == std::vector<VertexId>{2});
    REQUIRE(common_link(c5, {0}) == std::vector<VertexId>{1, 4});
    REQUIRE(common_link(c5, {}) == c5.vertices());
    REQUIRE(common_link(c5, {0, 1}).empty());
}

TEST_CASE("regular tree ball sizes", "[graph]") {
    // Degree 3, radius 2: 1 root + 3 children + 3*2 grandchildren = 10.
    Graph t = Graph::regular_tree(3, 2);
    REQUIRE(t.vertex_count() == 10);
    REQUIRE(t.link(0).size() == 3);

    Graph t0 = Graph::regular_tree(3, 0);
    REQUIRE(t0.vertex_count() == 1);
}

TEST_CASE("girth", "[graph]") {
    REQUIRE(girth(Graph::cycle(5)) == 5);
    REQUIRE(girth(Graph::cycle(4)) == 4);
    REQUIRE(girth(Graph::complete(4)) == 3);
    REQUIRE_FALSE(girth(Graph::path(4)).has_value());
    REQUIRE_FALSE(girth(Graph::regular_tree(3, 2)).has_value());

    SECTION("matches the circuit enumeration oracle on assorted graphs") {
        std::vector<Graph> gs = {
            Graph::cycle(3), Graph::cycle(6), Graph::complete(5), Graph::path(1),
            Graph::finite_graph({{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}),
            Graph::finite_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
        };
        for (const Graph& g : gs) REQUIRE(girth(g) == oracle::girth_by_circuits(g));
    }
}

TEST_CASE("untransvectable", "[graph]") {
    REQUIRE(is_untransvectable(Graph::cycle(5)).holds);

    PairWitness c4 = is_untransvectable(Graph::cycle(4));
    REQUIRE_FALSE(c4.holds);
    // witness: the link of v lies inside the star of the opposite vertex
    REQUIRE(Graph::cycle(4).adjacent(c4.v, c4.w) == false);

    REQUIRE_FALSE(is_untransvectable(Graph::path(3)).holds);
    REQUIRE_FALSE(is_untransvectable(Graph::path(2)).holds);

    SECTION("agrees with the quantifier sweep oracle") {
        std::vector<Graph> gs = {Graph::cycle(4), Graph::cycle(5), Graph::cycle(6),
                                 Graph::path(4),  Graph::complete(4),
                                 Graph::finite_graph({{0, 1}, {1, 2}, {2, 0}, {2, 3}})};
        for (const Graph& g : gs) REQUIRE(is_untransvectable(g).holds == oracle::untransvectable_by_sweep(g));
    }
}

TEST_CASE("rigid", "[graph]") {
    REQUIRE(is_rigid(Graph::cycle(5)).holds);
    REQUIRE(is_rigid(Graph::path(2)).holds);

    PairWitness c4 = is_rigid(Graph::cycle(4));
    REQUIRE_FALSE(c4.holds);
    // witness vertex: its link's common link also contains the opposite corner
    REQUIRE(common_link(Graph::cycle(4), Graph::cycle(4).link(c4.v)).size() == 2);

    SECTION("isolated vertices are a precondition error") {
        Graph g = Graph::finite_graph({{0, 1}}, {0, 1, 2});
        REQUIRE_THROWS_AS(is_rigid(g), DomainError);
    }

    SECTION("agrees with the sweep oracle") {
        std::vector<Graph> gs = {Graph::cycle(4), Graph::cycle(5), Graph::cycle(6), Graph::complete(3),
                                 Graph::path(3), Graph::path(4)};
        for (const Graph& g : gs) REQUIRE(is_rigid(g).holds == oracle::rigid_by_sweep(g));
    }
}

TEST_CASE("line graph", "[graph]") {
    Graph l = Graph::line();
    REQUIRE_FALSE(l.is_finite());
    REQUIRE(l.link(5) == std::vector<VertexId>{4, 6});
    REQUIRE(l.adjacent(-1, 0));
    REQUIRE_FALSE(l.adjacent(0, 2));
    REQUIRE_THROWS_AS(l.vertices(), UnsupportedError);
    REQUIRE_THROWS_AS(girth(l), UnsupportedError);
    REQUIRE_THROWS_AS(is_untransvectable(l), UnsupportedError);

    REQUIRE(graph_ball(l, 0, 3).size() == 7);
    REQUIRE(common_link(l, {0, 2}) == std::vector<VertexId>{1});
}

TEST_CASE("regular tree on reduced words", "[graph]") {
    Graph t = Graph::cayley_tree(2);
    REQUIRE_FALSE(t.is_finite());

    // Root has the four single letters as neighbours.
    REQUIRE(t.link(0).size() == 4);
    for (VertexId u : t.link(0)) REQUIRE(t.adjacent(0, u));

    // Rank-2 tree is 4-regular: 1 + 4 + 4*3 = 17 vertices within radius 2.
    REQUIRE(graph_ball(t, 0, 2).size() == 17);

    SECTION("ids round-trip through the word coding") {
        auto* impl = dynamic_cast<const detail::CayleyTreeImpl*>(t.impl());
        REQUIRE(impl != nullptr);
        for (VertexId id = 0; id < 200; ++id) {
            auto word = impl->decode(id);
            REQUIRE(impl->encode(word) == id);
            for (std::size_t i = 0; i + 1 < word.size(); ++i) REQUIRE(word[i + 1] != (word[i] ^ 1));
        }
    }

    SECTION("every vertex has exactly one neighbour closer to the root") {
        for (VertexId id = 1; id < 50; ++id) {
            int closer = 0;
            for (VertexId u : t.link(id))
                if (u < id) ++closer;
            REQUIRE(t.link(id).size() == 4);
            REQUIRE(closer == 1);
        }
    }
}

TEST_CASE("multigraph basics and isomorphism", "[graph]") {
    Multigraph loop1({0}, {{{0, 0}, 1}});
    REQUIRE(loop1.total_edge_count() == 1);
    REQUIRE(loop1.degree(0) == 2);

    Multigraph twover({0, 1}, {{{0, 1}, 2}});
    REQUIRE(twover.multiplicity(1, 0) == 2);

    SECTION("distinguishes by vertex count with a reason") {
        MultigraphIso r = multigraph_iso(loop1, twover);
        REQUIRE_FALSE(r.isomorphic);
        REQUIRE(r.reason == "vertex counts 1 vs 2");
    }

    SECTION("finds mappings when they exist") {
        Multigraph a({0, 1, 2}, {{{0, 1}, 2}, {{1, 2}, 1}});
        Multigraph b({5, 6, 7}, {{{6, 7}, 2}, {{5, 6}, 1}});
        MultigraphIso r = multigraph_iso(a, b);
        REQUIRE(r.isomorphic);
        // verify the returned mapping preserves multiplicities
        std::map<VertexId, VertexId> m(r.mapping.begin(), r.mapping.end());
        for (const auto& [key, mult] : a.edges())
            REQUIRE(b.multiplicity(m.at(key.first), m.at(key.second)) == mult);
    }

    SECTION("same counts, different multiplicity pattern") {
        Multigraph a({0, 1}, {{{0, 0}, 1}, {{0, 1}, 1}});
        Multigraph b({0, 1}, {{{0, 1}, 2}});
        MultigraphIso r = multigraph_iso(a, b);
        REQUIRE_FALSE(r.isomorphic);
        REQUIRE_FALSE(r.reason.empty());
    }
}

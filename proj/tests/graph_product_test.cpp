#include <catch2/catch_amalgamated.hpp>

#include <gwkit/graph_product.hpp>
#include <gwkit/oracles.hpp>

#include <map>
#include <random>
#include <set>
#include <vector>

using namespace gwkit;

namespace {

// Two isolated vertices: the free product setting, no commutation at all.
GraphProduct free_pair_over_z() {
    return GraphProduct(Graph::finite_graph({}, {1, 2}), Group::integers());
}

GraphProduct edge_pair_over_z() {
    return GraphProduct(Graph::finite_graph({{1, 2}}), Group::integers());
}

} // namespace

TEST_CASE("normalization merges syllables across commuting neighbours", "[graph_product]") {
    GraphProduct ctx = edge_pair_over_z();
    Group z = ctx.uniform_group();

    GPElement g = normalize(ctx, {Syllable{1, z.parse("3")}, Syllable{2, z.parse("5")},
                                  Syllable{1, z.parse("4")}});
    REQUIRE(g.syllable_length() == 2);
    REQUIRE(g == gp_parse(ctx, "1:7 2:5"));

    SECTION("full cancellation leaves the other syllable") {
        GPElement h = normalize(ctx, {Syllable{1, z.parse("3")}, Syllable{2, z.parse("5")},
                                      Syllable{1, z.parse("-3")}});
        REQUIRE(h.syllable_length() == 1);
        REQUIRE(h.support() == std::vector<VertexId>{2});
        REQUIRE(h == gp_parse(ctx, "2:5"));
    }

    SECTION("identity syllables in raw input are dropped") {
        GPElement h = normalize(ctx, {Syllable{1, z.parse("0")}, Syllable{2, z.parse("5")},
                                      Syllable{1, z.parse("0")}});
        REQUIRE(h == gp_parse(ctx, "2:5"));
    }
}

TEST_CASE("free products admit no merging across a blocking vertex", "[graph_product]") {
    GraphProduct ctx = free_pair_over_z();
    Group z = ctx.uniform_group();

    GPElement g = normalize(ctx, {Syllable{1, z.parse("1")}, Syllable{2, z.parse("1")},
                                  Syllable{1, z.parse("1")}});
    REQUIRE(g.syllable_length() == 3);
    REQUIRE(g.support() == std::vector<VertexId>{1, 2});
    REQUIRE(gp_render(g) == "1:1 2:1 1:1");

    SECTION("cancellation before the blocker still happens") {
        GPElement h = normalize(ctx, {Syllable{1, z.parse("1")}, Syllable{1, z.parse("-1")},
                                      Syllable{2, z.parse("4")}});
        REQUIRE(h == gp_parse(ctx, "2:4"));
    }
}

TEST_CASE("normalize validates vertices and element membership", "[graph_product]") {
    GraphProduct ctx = edge_pair_over_z();
    Group z = ctx.uniform_group();
    Group other = Group::cyclic(3);

    REQUIRE_THROWS_AS(normalize(ctx, {Syllable{7, z.parse("1")}}), DomainError);
    REQUIRE_THROWS_AS(normalize(ctx, {Syllable{1, other.parse("1")}}), DomainError);
}

TEST_CASE("identity element basics", "[graph_product]") {
    GraphProduct ctx = edge_pair_over_z();
    GPElement e = GPElement::identity(ctx);
    REQUIRE(e.is_identity());
    REQUIRE(e.syllable_length() == 0);
    REQUIRE(e.support().empty());
    REQUIRE(gp_render(e) == "e");
    REQUIRE(gp_parse(ctx, "e") == e);
    REQUIRE(gp_parse(ctx, "1") == e);
    REQUIRE(gp_parse(ctx, "  ") == e);
}

namespace {

struct PropertyConfig {
    std::string name;
    GraphProduct ctx;
    std::vector<VertexId> pool;
    std::uint64_t elem_radius;
};

std::vector<PropertyConfig> property_configs() {
    std::vector<PropertyConfig> out;
    out.push_back({"free pair over Z", free_pair_over_z(), {1, 2}, 2});
    out.push_back({"edge pair over Z", edge_pair_over_z(), {1, 2}, 2});
    out.push_back({"path of three over Z/2",
                   GraphProduct(Graph::path(3), Group::cyclic(2)),
                   {0, 1, 2},
                   1});
    out.push_back({"square over Z/3",
                   GraphProduct(Graph::cycle(4), Group::cyclic(3)),
                   {0, 1, 2, 3},
                   1});
    out.push_back({"triangle over Z/4",
                   GraphProduct(Graph::complete(3), Group::cyclic(4)),
                   {0, 1, 2},
                   2});
    out.push_back({"five vertices mixed edges over Z/2",
                   GraphProduct(Graph::finite_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 2}}),
                                Group::cyclic(2)),
                   {0, 1, 2, 3, 4},
                   1});
    return out;
}

} // namespace

TEST_CASE("canonical form agrees with the rewrite closure", "[graph_product]") {
    // For random raw words the normalized element must be exactly the least
    // minimal-length word in the full rewrite closure, and the shuffle class
    // of the result must be exactly the set of all minimal-length words.
    for (const auto& cfg : property_configs()) {
        INFO(cfg.name);
        std::mt19937_64 rng(instance_seed(7, "closure-" + cfg.name, 0));
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t len = 1 + rng() % 6;
            oracle::Word w = oracle::random_word(cfg.ctx, rng, len, cfg.pool, cfg.elem_radius);
            INFO("word: " << oracle::render_word(cfg.ctx, w));
            GPElement g = normalize(cfg.ctx, w);
            oracle::ClosureSummary want = oracle::closure_summary(cfg.ctx, w);
            REQUIRE(g.syllables() == want.canonical);
            REQUIRE(g.syllable_length() == want.min_length);

            std::vector<std::vector<Syllable>> cls = shuffle_class(g);
            std::set<oracle::Word> cls_set(cls.begin(), cls.end());
            REQUIRE(cls_set == want.minimal);
        }
    }
}

TEST_CASE("normalized length is minimal by exhaustive shorter-word search", "[graph_product]") {
    GraphProduct ctx(Graph::cycle(4), Group::cyclic(3));
    Group c3 = ctx.uniform_group();
    std::map<VertexId, std::vector<GroupElem>> pools;
    for (VertexId v : ctx.graph().vertices()) pools[v] = c3.elements();

    std::mt19937_64 rng(instance_seed(11, "minimality", 0));
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 12; ++trial) {
        oracle::Word w = oracle::random_word(ctx, rng, 1 + rng() % 4, {0, 1, 2, 3}, 1);
        GPElement g = normalize(ctx, w);
        if (g.syllable_length() == 0 || g.syllable_length() > 4) continue;
        INFO("element: " << gp_render(g));
        REQUIRE(oracle::is_minimal_by_search(ctx, g, pools));
        ++checked;
    }
    REQUIRE(checked >= 12);
}

TEST_CASE("single-syllable multiplication moves length by at most one", "[graph_product]") {
    std::map<std::string, int> shapes_seen;
    for (const auto& cfg : property_configs()) {
        INFO(cfg.name);
        std::mt19937_64 rng(instance_seed(13, "trichotomy-" + cfg.name, 0));
        for (int trial = 0; trial < 150; ++trial) {
            oracle::Word w = oracle::random_word(cfg.ctx, rng, rng() % 5, cfg.pool, cfg.elem_radius);
            GPElement h = normalize(cfg.ctx, w);
            VertexId v = cfg.pool[rng() % cfg.pool.size()];
            GroupElem x = cfg.ctx.vertex_group(v).sample(rng, cfg.elem_radius);

            oracle::TrichotomyCheck check = oracle::trichotomy_check(cfg.ctx, v, x, h);
            INFO("v=" << v << " x=" << cfg.ctx.vertex_group(v).render(x)
                      << " h=" << gp_render(h) << " detail: " << check.detail);
            REQUIRE(check.pass);
            REQUIRE(check.delta >= -1);
            REQUIRE(check.delta <= 1);
            shapes_seen[check.shape] += 1;
        }
    }
    // The sweep must actually exercise every branch of the case split.
    REQUIRE(shapes_seen["prepend"] > 0);
    REQUIRE(shapes_seen["replace"] > 0);
    REQUIRE(shapes_seen["cancel"] > 0);
}

TEST_CASE("group axioms hold for random elements", "[graph_product]") {
    for (const auto& cfg : property_configs()) {
        INFO(cfg.name);
        std::mt19937_64 rng(instance_seed(17, "axioms-" + cfg.name, 0));
        GPElement e = GPElement::identity(cfg.ctx);
        for (int trial = 0; trial < 40; ++trial) {
            GPElement a = normalize(cfg.ctx, oracle::random_word(cfg.ctx, rng, rng() % 5, cfg.pool,
                                                                 cfg.elem_radius));
            GPElement b = normalize(cfg.ctx, oracle::random_word(cfg.ctx, rng, rng() % 5, cfg.pool,
                                                                 cfg.elem_radius));
            GPElement c = normalize(cfg.ctx, oracle::random_word(cfg.ctx, rng, rng() % 5, cfg.pool,
                                                                 cfg.elem_radius));
            REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
            REQUIRE(multiply(a, invert(a)) == e);
            REQUIRE(multiply(invert(a), a) == e);
            REQUIRE(invert(invert(a)) == a);
            REQUIRE(multiply(a, e) == a);
            REQUIRE(multiply(e, a) == a);
        }
    }
}

TEST_CASE("complete graph makes the product abelian", "[graph_product]") {
    GraphProduct ctx = edge_pair_over_z();
    std::mt19937_64 rng(instance_seed(19, "abelian", 0));
    for (int trial = 0; trial < 200; ++trial) {
        GPElement a = normalize(ctx, oracle::random_word(ctx, rng, rng() % 4, {1, 2}, 3));
        GPElement b = normalize(ctx, oracle::random_word(ctx, rng, rng() % 4, {1, 2}, 3));
        REQUIRE(multiply(a, b) == multiply(b, a));
    }
}

TEST_CASE("leading syllable fixtures", "[graph_product]") {
    SECTION("identity element yields the identity at every vertex") {
        GraphProduct ctx = edge_pair_over_z();
        GPElement e = GPElement::identity(ctx);
        REQUIRE(ctx.uniform_group().is_identity(leading_syllable(e, 1)));
        REQUIRE(ctx.uniform_group().is_identity(leading_syllable(e, 2)));
    }

    SECTION("a non-adjacent earlier vertex blocks the syllable") {
        GraphProduct ctx = free_pair_over_z();
        const Group& z = ctx.uniform_group();
        GPElement a = gp_parse(ctx, "1:3 2:4");
        REQUIRE(z.is_identity(leading_syllable(a, 2)));
        REQUIRE(leading_syllable(a, 1) == z.parse("3"));
    }

    SECTION("an adjacent earlier vertex lets the syllable through") {
        GraphProduct ctx = edge_pair_over_z();
        const Group& z = ctx.uniform_group();
        GPElement a = gp_parse(ctx, "1:3 2:4");
        REQUIRE(leading_syllable(a, 2) == z.parse("4"));
        REQUIRE(leading_syllable(a, 1) == z.parse("3"));
    }

    SECTION("unknown vertex is rejected") {
        GraphProduct ctx = edge_pair_over_z();
        REQUIRE_THROWS_AS(leading_syllable(GPElement::identity(ctx), 9), DomainError);
    }
}

TEST_CASE("leading syllable matches the shuffle class", "[graph_product]") {
    // leading_syllable(a, v) is non-identity exactly when some minimal word
    // for a starts with a v-syllable, and then equals that first syllable.
    for (const auto& cfg : property_configs()) {
        INFO(cfg.name);
        std::mt19937_64 rng(instance_seed(23, "leading-" + cfg.name, 0));
        for (int trial = 0; trial < 40; ++trial) {
            GPElement a = normalize(cfg.ctx, oracle::random_word(cfg.ctx, rng, 1 + rng() % 5,
                                                                 cfg.pool, cfg.elem_radius));
            std::vector<std::vector<Syllable>> cls = shuffle_class(a);
            for (VertexId v : cfg.pool) {
                GroupElem lead = leading_syllable(a, v);
                bool found = false;
                for (const auto& w : cls) {
                    if (!w.empty() && w[0].vertex == v) {
                        found = true;
                        REQUIRE(w[0].elem == lead);
                    }
                }
                INFO("element " << gp_render(a) << " vertex " << v);
                REQUIRE(found == !cfg.ctx.vertex_group(v).is_identity(lead));
            }
        }
    }
}

TEST_CASE("shuffle class fixtures", "[graph_product]") {
    SECTION("identity gives the singleton empty word") {
        GraphProduct ctx = edge_pair_over_z();
        auto cls = shuffle_class(GPElement::identity(ctx));
        REQUIRE(cls.size() == 1);
        REQUIRE(cls[0].empty());
    }

    SECTION("no swaps exist in a free product word") {
        GraphProduct ctx = free_pair_over_z();
        auto cls = shuffle_class(gp_parse(ctx, "1:2 2:3"));
        REQUIRE(cls.size() == 1);
    }

    SECTION("one edge gives exactly the two orders") {
        GraphProduct ctx = edge_pair_over_z();
        auto cls = shuffle_class(gp_parse(ctx, "1:2 2:3"));
        REQUIRE(cls.size() == 2);
    }

    SECTION("long words hit the enumeration bound") {
        GraphProduct ctx = free_pair_over_z();
        std::vector<Syllable> w;
        Group z = ctx.uniform_group();
        for (int i = 0; i < 9; ++i) w.push_back(Syllable{1 + i % 2, z.parse("1")});
        GPElement a = normalize(ctx, w);
        REQUIRE(a.syllable_length() == 9);
        REQUIRE_THROWS_AS(shuffle_class(a), BudgetError);
        REQUIRE(shuffle_class(a, 9).size() == 1);
    }
}

TEST_CASE("relabel fixtures on the square", "[graph_product]") {
    GraphProduct ctx(Graph::cycle(4), Group::cyclic(5));
    Group c5 = ctx.uniform_group();
    GPElement a = gp_parse(ctx, "0:2 1:3 2:4");

    SECTION("identity map returns the element unchanged") {
        REQUIRE(relabel(a, [](VertexId v) { return v; }) == a);
    }

    SECTION("rotation moves the support") {
        GPElement b = relabel(a, [](VertexId v) { return (v + 1) % 4; });
        REQUIRE(b == gp_parse(ctx, "1:2 2:3 3:4"));
        REQUIRE(b.syllable_length() == a.syllable_length());
    }

    SECTION("swapping one adjacent pair breaks adjacency and is rejected") {
        auto bad = [](VertexId v) { return v == 1 ? VertexId(2) : v == 2 ? VertexId(1) : v; };
        REQUIRE_THROWS_AS(relabel(a, bad), DomainError);
    }

    SECTION("a collapsing map is rejected as non-injective") {
        auto bad = [](VertexId) { return VertexId(0); };
        REQUIRE_THROWS_AS(relabel(a, bad), DomainError);
    }

    SECTION("a map out of the graph is rejected") {
        auto bad = [](VertexId v) { return v + 10; };
        REQUIRE_THROWS_AS(relabel(a, bad), DomainError);
    }

    SECTION("group mismatch across relabeled vertices is rejected") {
        std::map<VertexId, Group> assign = {{0, c5}, {1, c5}, {2, Group::cyclic(7)}, {3, c5}};
        GraphProduct mixed(Graph::cycle(4), assign);
        GPElement m = gp_parse(mixed, "1:2");
        REQUIRE_THROWS_AS(relabel(m, [](VertexId v) { return (v + 1) % 4; }), DomainError);
    }
}

TEST_CASE("relabel along a graph symmetry preserves length and support", "[graph_product]") {
    GraphProduct ctx(Graph::cycle(5), Group::cyclic(3));
    std::mt19937_64 rng(instance_seed(29, "relabel", 0));
    auto rot = [](VertexId v) { return (v + 1) % 5; };
    auto rot_inv = [](VertexId v) { return (v + 4) % 5; };
    for (int trial = 0; trial < 120; ++trial) {
        GPElement a = normalize(ctx, oracle::random_word(ctx, rng, rng() % 6, {0, 1, 2, 3, 4}, 1));
        GPElement b = relabel(a, rot);
        REQUIRE(b.syllable_length() == a.syllable_length());

        std::vector<VertexId> moved;
        for (VertexId v : a.support()) moved.push_back((v + 1) % 5);
        sort_unique(moved);
        REQUIRE(b.support() == moved);

        REQUIRE(relabel(b, rot_inv) == a);

        // Relabeling is a homomorphism in the element.
        GPElement c = normalize(ctx, oracle::random_word(ctx, rng, rng() % 6, {0, 1, 2, 3, 4}, 1));
        REQUIRE(relabel(multiply(a, c), rot) == multiply(b, relabel(c, rot)));
    }
}

TEST_CASE("parse and render round trip", "[graph_product]") {
    GraphProduct ctx(Graph::path(3), Group::free_group(2));
    GPElement a = gp_parse(ctx, "0:ab^-1 1:a 0:b");
    REQUIRE(gp_parse(ctx, gp_render(a)) == a);
    REQUIRE(gp_render(GPElement::identity(ctx)) == "e");

    SECTION("parse rejects malformed input") {
        REQUIRE_THROWS_AS(gp_parse(ctx, "0ab"), ValidationError);
        REQUIRE_THROWS_AS(gp_parse(ctx, "x:a"), ValidationError);
        REQUIRE_THROWS_AS(gp_parse(ctx, "9:a"), DomainError);
        REQUIRE_THROWS_AS(gp_parse(ctx, "0:zz"), ValidationError);
    }

    SECTION("parse normalizes on the way in") {
        REQUIRE(gp_parse(ctx, "0:a 0:a^-1") == GPElement::identity(ctx));
        // In the path 0-1-2 the middle vertex commutes with 0, the far one does not.
        REQUIRE(gp_parse(ctx, "0:a 1:b 0:a").syllable_length() == 2);
        REQUIRE(gp_parse(ctx, "0:a 2:b 0:a").syllable_length() == 3);
    }
}

TEST_CASE("per-vertex group assignments", "[graph_product]") {
    Graph k2 = Graph::finite_graph({{1, 2}});
    Group c2 = Group::cyclic(2);
    Group c3 = Group::cyclic(3);

    GraphProduct ctx(k2, std::map<VertexId, Group>{{1, c2}, {2, c3}});
    REQUIRE_FALSE(ctx.uniform());
    REQUIRE(ctx.vertex_group(1).same(c2));
    REQUIRE(ctx.vertex_group(2).same(c3));
    REQUIRE_THROWS_AS(ctx.uniform_group(), UnsupportedError);

    GPElement a = gp_parse(ctx, "1:1 2:2");
    REQUIRE(multiply(a, a) == gp_parse(ctx, "2:1"));

    SECTION("assignment must cover every vertex") {
        REQUIRE_THROWS_AS(GraphProduct(k2, std::map<VertexId, Group>{{1, c2}}), ValidationError);
    }

    SECTION("assignment must not name unknown vertices") {
        REQUIRE_THROWS_AS(
            GraphProduct(k2, std::map<VertexId, Group>{{1, c2}, {2, c3}, {5, c2}}),
            ValidationError);
    }

    SECTION("per-vertex assignment needs a finite graph") {
        REQUIRE_THROWS_AS(GraphProduct(Graph::line(), std::map<VertexId, Group>{{0, c2}}),
                          UnsupportedError);
    }
}

TEST_CASE("operands from different contexts are rejected", "[graph_product]") {
    GraphProduct ctx1 = edge_pair_over_z();
    GraphProduct ctx2 = edge_pair_over_z();
    GPElement a = gp_parse(ctx1, "1:1");
    GPElement b = gp_parse(ctx2, "1:1");
    REQUIRE(a != b);
    REQUIRE_THROWS_AS(multiply(a, b), DomainError);
}

TEST_CASE("infinite graphs support graph product words", "[graph_product]") {
    GraphProduct ctx(Graph::line(), Group::cyclic(2));
    // The middle vertex -2 neighbours -3, so the outer pair merges and cancels.
    GPElement a = gp_parse(ctx, "-3:1 -2:1 -3:1");
    REQUIRE(a == gp_parse(ctx, "-2:1"));
    // A distant vertex blocks the merge.
    GPElement b = gp_parse(ctx, "-3:1 4:1 -3:1");
    REQUIRE(b.syllable_length() == 3);
    REQUIRE(b.support() == std::vector<VertexId>{-3, 4});

    GraphProduct tree(Graph::cayley_tree(2), Group::cyclic(2));
    GPElement c = gp_parse(tree, "0:1 5:1 0:1");
    REQUIRE(c.syllable_length() == 3);
    REQUIRE(multiply(c, invert(c)).is_identity());
    REQUIRE(gp_parse(tree, "0:1 1:1 0:1") == gp_parse(tree, "1:1"));
}

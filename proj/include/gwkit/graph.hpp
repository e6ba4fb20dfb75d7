#ifndef GWKIT_GRAPH_HPP
#define GWKIT_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "util.hpp"

namespace gwkit {

using VertexId = std::int64_t;

namespace detail {

struct GraphImpl {
    virtual ~GraphImpl() = default;
    virtual bool finite() const = 0;
    virtual bool has_vertex(VertexId v) const = 0;
    virtual std::vector<VertexId> link(VertexId v) const = 0; // sorted
    virtual bool adjacent(VertexId v, VertexId w) const = 0;
    virtual const std::vector<VertexId>& vertices() const = 0;
    virtual std::string describe() const = 0;
};

class FiniteGraphImpl final : public GraphImpl {
public:
    FiniteGraphImpl(const std::vector<std::pair<VertexId, VertexId>>& edges,
                    const std::vector<VertexId>& declared_vertices) {
        verts_ = declared_vertices;
        for (const auto& [v, w] : edges) {
            verts_.push_back(v);
            verts_.push_back(w);
        }
        sort_unique(verts_);
        if (!declared_vertices.empty()) {
            std::vector<VertexId> declared = declared_vertices;
            sort_unique(declared);
            for (const auto& [v, w] : edges) {
                if (!sorted_contains(declared, v) || !sorted_contains(declared, w)) {
                    std::ostringstream os;
                    os << "edge (" << v << ", " << w << ") references a vertex outside the declared vertex list";
                    throw ValidationError(os.str());
                }
            }
            verts_ = declared;
        }
        for (VertexId v : verts_) adj_[v] = {};
        for (const auto& [v, w] : edges) {
            if (v == w) {
                std::ostringstream os;
                os << "loop edge (" << v << ", " << w << ") not allowed in a simple graph";
                throw ValidationError(os.str());
            }
            adj_[v].push_back(w);
            adj_[w].push_back(v);
        }
        for (auto& [v, nbrs] : adj_) sort_unique(nbrs);
    }

    bool finite() const override { return true; }
    bool has_vertex(VertexId v) const override { return adj_.count(v) != 0; }

    std::vector<VertexId> link(VertexId v) const override {
        auto it = adj_.find(v);
        if (it == adj_.end()) {
            std::ostringstream os;
            os << "vertex " << v << " is not in the graph";
            throw DomainError(os.str());
        }
        return it->second;
    }

    bool adjacent(VertexId v, VertexId w) const override {
        auto it = adj_.find(v);
        if (it == adj_.end()) {
            std::ostringstream os;
            os << "vertex " << v << " is not in the graph";
            throw DomainError(os.str());
        }
        if (adj_.find(w) == adj_.end()) {
            std::ostringstream os;
            os << "vertex " << w << " is not in the graph";
            throw DomainError(os.str());
        }
        return sorted_contains(it->second, w);
    }

    const std::vector<VertexId>& vertices() const override { return verts_; }

    std::string describe() const override {
        std::ostringstream os;
        std::uint64_t e = 0;
        for (const auto& [v, nbrs] : adj_) e += nbrs.size();
        os << "finite graph with " << verts_.size() << " vertices and " << e / 2 << " edges";
        return os.str();
    }

private:
    std::vector<VertexId> verts_;
    std::map<VertexId, std::vector<VertexId>> adj_;
};

// Bi-infinite path; vertices are all integers, v adjacent to v-1 and v+1.
class LineGraphImpl final : public GraphImpl {
public:
    bool finite() const override { return false; }
    bool has_vertex(VertexId) const override { return true; }
    std::vector<VertexId> link(VertexId v) const override { return {v - 1, v + 1}; }
    bool adjacent(VertexId v, VertexId w) const override { return v - w == 1 || w - v == 1; }
    const std::vector<VertexId>& vertices() const override {
        throw UnsupportedError("the line graph has infinitely many vertices");
    }
    std::string describe() const override { return "line graph on the integers"; }
};

// 2r-regular tree with vertices indexed by reduced words over r letter pairs,
// ranked by length then lexicographically. Letter 2i is generator i, letter
// 2i+1 its inverse; a word is reduced when no letter is followed by its inverse.
class CayleyTreeImpl final : public GraphImpl {
public:
    explicit CayleyTreeImpl(std::int64_t rank) : rank_(rank) {
        if (rank < 1) throw ValidationError("tree rank must be at least 1");
        if (rank > 8) throw ValidationError("tree rank above 8 not supported");
    }

    bool finite() const override { return false; }
    bool has_vertex(VertexId v) const override { return v >= 0; }

    std::vector<VertexId> link(VertexId v) const override {
        std::vector<std::int32_t> w = decode(v);
        std::vector<VertexId> out;
        if (!w.empty()) {
            std::vector<std::int32_t> parent(w.begin(), w.end() - 1);
            out.push_back(encode(parent));
        }
        const std::int32_t letters = static_cast<std::int32_t>(2 * rank_);
        for (std::int32_t l = 0; l < letters; ++l) {
            if (!w.empty() && l == (w.back() ^ 1)) continue;
            std::vector<std::int32_t> child = w;
            child.push_back(l);
            out.push_back(encode(child));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool adjacent(VertexId v, VertexId w) const override {
        std::vector<std::int32_t> a = decode(v);
        std::vector<std::int32_t> b = decode(w);
        if (a.size() > b.size()) std::swap(a, b);
        if (b.size() != a.size() + 1) return false;
        return std::equal(a.begin(), a.end(), b.begin());
    }

    const std::vector<VertexId>& vertices() const override {
        throw UnsupportedError("the regular tree has infinitely many vertices");
    }

    std::string describe() const override {
        std::ostringstream os;
        os << 2 * rank_ << "-regular tree indexed by reduced words over " << rank_ << " letter pairs";
        return os.str();
    }

    VertexId encode(const std::vector<std::int32_t>& word) const {
        const std::int64_t n = 2 * rank_;
        const std::int64_t m = n - 1;
        if (word.empty()) return 0;
        const std::size_t len = word.size();
        std::int64_t id = 1; // skip the empty word
        std::int64_t block = n;
        for (std::size_t l = 1; l < len; ++l) {
            id += block;
            block *= m;
        }
        // Mixed radix inside the block: first letter has n choices, the rest m.
        std::int64_t place = 1;
        for (std::size_t l = 1; l < len; ++l) place *= m;
        id += word[0] * place;
        for (std::size_t i = 1; i < len; ++i) {
            place /= m;
            std::int32_t banned = word[i - 1] ^ 1;
            std::int64_t digit = word[i] - (word[i] > banned ? 1 : 0);
            id += digit * place;
        }
        return id;
    }

    std::vector<std::int32_t> decode(VertexId id) const {
        if (id < 0) throw DomainError("tree vertex ids are nonnegative");
        const std::int64_t n = 2 * rank_;
        const std::int64_t m = n - 1;
        if (id == 0) return {};
        std::int64_t rem = id - 1;
        std::size_t len = 1;
        std::int64_t block = n;
        while (rem >= block) {
            rem -= block;
            if (block > std::numeric_limits<std::int64_t>::max() / m) throw DomainError("tree vertex id too large");
            block *= m;
            ++len;
        }
        std::int64_t place = 1;
        for (std::size_t l = 1; l < len; ++l) place *= m;
        std::vector<std::int32_t> word(len);
        word[0] = static_cast<std::int32_t>(rem / place);
        rem %= place;
        for (std::size_t i = 1; i < len; ++i) {
            place /= m;
            std::int64_t digit = rem / place;
            rem %= place;
            std::int32_t banned = word[i - 1] ^ 1;
            word[i] = static_cast<std::int32_t>(digit + (digit >= banned ? 1 : 0));
        }
        return word;
    }

    std::int64_t rank() const { return rank_; }

private:
    std::int64_t rank_;
};

} // namespace detail

// Immutable graph value. Copies share the underlying representation; two
// handles are interchangeable exactly when same() holds.
class Graph {
public:
    static Graph finite_graph(const std::vector<std::pair<VertexId, VertexId>>& edges,
                              const std::vector<VertexId>& declared_vertices = {}) {
        return Graph(std::make_shared<detail::FiniteGraphImpl>(edges, declared_vertices));
    }

    static Graph cycle(std::int64_t n) {
        if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::int64_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
        return finite_graph(edges);
    }

    static Graph path(std::int64_t n) {
        if (n < 1) throw ValidationError("path needs at least 1 vertex");
        std::vector<std::pair<VertexId, VertexId>> edges;
        std::vector<VertexId> verts;
        for (std::int64_t i = 0; i < n; ++i) verts.push_back(i);
        for (std::int64_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        return finite_graph(edges, verts);
    }

    static Graph complete(std::int64_t n) {
        if (n < 1) throw ValidationError("complete graph needs at least 1 vertex");
        std::vector<std::pair<VertexId, VertexId>> edges;
        std::vector<VertexId> verts;
        for (std::int64_t i = 0; i < n; ++i) verts.push_back(i);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        return finite_graph(edges, verts);
    }

    // Finite ball of the degree-regular tree: all vertices within `radius`
    // of a root, every non-leaf vertex of the stated degree.
    static Graph regular_tree(std::int64_t degree, std::int64_t radius) {
        if (degree < 1) throw ValidationError("tree degree must be at least 1");
        if (radius < 0) throw ValidationError("tree radius must be nonnegative");
        std::vector<std::pair<VertexId, VertexId>> edges;
        std::vector<VertexId> verts{0};
        VertexId next = 1;
        std::vector<VertexId> frontier{0};
        for (std::int64_t depth = 0; depth < radius; ++depth) {
            std::vector<VertexId> next_frontier;
            for (VertexId v : frontier) {
                std::int64_t children = (depth == 0) ? degree : degree - 1;
                for (std::int64_t c = 0; c < children; ++c) {
                    VertexId u = next++;
                    verts.push_back(u);
                    edges.emplace_back(v, u);
                    next_frontier.push_back(u);
                }
            }
            frontier = std::move(next_frontier);
        }
        return finite_graph(edges, verts);
    }

    static Graph line() { return Graph(std::make_shared<detail::LineGraphImpl>()); }

    static Graph cayley_tree(std::int64_t rank) {
        return Graph(std::make_shared<detail::CayleyTreeImpl>(rank));
    }

    bool is_finite() const { return impl_->finite(); }

    const std::vector<VertexId>& vertices() const { return impl_->vertices(); }

    std::size_t vertex_count() const { return impl_->vertices().size(); }

    bool has_vertex(VertexId v) const { return impl_->has_vertex(v); }

    void require_vertex(VertexId v) const {
        if (!impl_->has_vertex(v)) {
            std::ostringstream os;
            os << "vertex " << v << " is not in the graph";
            throw DomainError(os.str());
        }
    }

    // Open neighbourhood Lk(v), sorted.
    std::vector<VertexId> link(VertexId v) const { return impl_->link(v); }

    // Closed neighbourhood St(v) = Lk(v) + {v}, sorted.
    std::vector<VertexId> star(VertexId v) const {
        std::vector<VertexId> out = impl_->link(v);
        out.push_back(v);
        sort_unique(out);
        return out;
    }

    bool adjacent(VertexId v, VertexId w) const { return impl_->adjacent(v, w); }

    std::string describe() const { return impl_->describe(); }

    bool same(const Graph& o) const { return impl_ == o.impl_; }
    const void* handle() const { return impl_.get(); }
    const detail::GraphImpl* impl() const { return impl_.get(); }

private:
    explicit Graph(std::shared_ptr<const detail::GraphImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::GraphImpl> impl_;
};

// Intersection of the links over a vertex set. For the empty set this is the
// whole vertex set, so it is only defined on finite graphs in that case.
inline std::vector<VertexId> common_link(const Graph& g, const std::vector<VertexId>& set) {
    if (set.empty()) {
        if (!g.is_finite()) throw UnsupportedError("common link of the empty set needs a finite graph");
        return g.vertices();
    }
    std::vector<VertexId> acc = g.link(set[0]);
    for (std::size_t i = 1; i < set.size(); ++i) acc = sorted_intersect(acc, g.link(set[i]));
    return acc;
}

// Vertices within graph distance `radius` of `center`, sorted. Works on
// infinite graphs; the search is capped by `budget` visited vertices.
inline std::vector<VertexId> graph_ball(const Graph& g, VertexId center, std::int64_t radius,
                                        std::uint64_t budget = search_budget()) {
    g.require_vertex(center);
    std::set<VertexId> seen{center};
    std::deque<std::pair<VertexId, std::int64_t>> queue{{center, 0}};
    while (!queue.empty()) {
        auto [v, d] = queue.front();
        queue.pop_front();
        if (d == radius) continue;
        for (VertexId u : g.link(v)) {
            if (seen.insert(u).second) {
                if (seen.size() > budget) throw BudgetError("ball enumeration exceeded the node budget");
                queue.emplace_back(u, d + 1);
            }
        }
    }
    return std::vector<VertexId>(seen.begin(), seen.end());
}

inline bool connected(const Graph& g) {
    if (!g.is_finite()) throw UnsupportedError("exact connectivity needs a finite graph");
    const auto& verts = g.vertices();
    if (verts.empty()) return true;
    std::vector<VertexId> reached = graph_ball(g, verts[0], static_cast<std::int64_t>(verts.size()));
    return reached.size() == verts.size();
}

// Length of a shortest circuit (closed walk with at least 3 distinct
// vertices); nullopt when the graph has none. Computed edge by edge: the
// shortest circuit through edge {v,w} is 1 plus the v-w distance with that
// edge removed.
inline std::optional<std::int64_t> girth(const Graph& g) {
    if (!g.is_finite()) throw UnsupportedError("exact girth needs a finite graph");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (VertexId v : g.vertices()) {
        for (VertexId w : g.link(v)) {
            if (w < v) continue;
            std::map<VertexId, std::int64_t> dist{{v, 0}};
            std::deque<VertexId> queue{v};
            while (!queue.empty()) {
                VertexId x = queue.front();
                queue.pop_front();
                if (x == w) break;
                if (dist[x] + 1 >= best) continue;
                for (VertexId y : g.link(x)) {
                    if (x == v && y == w) continue; // skip the removed edge
                    if (!dist.count(y)) {
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
            auto it = dist.find(w);
            if (it != dist.end()) best = std::min(best, it->second + 1);
        }
    }
    if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return best;
}

// Decision about a vertex property with a witness for the failing side.
struct PairWitness {
    bool holds = true;
    VertexId v = -1;
    VertexId w = -1;
};

// No link is contained in another vertex's star: for every pair v != w there
// is a neighbour of v outside St(w).
inline PairWitness is_untransvectable(const Graph& g) {
    if (!g.is_finite()) throw UnsupportedError("untransvectability check needs a finite graph");
    for (VertexId v : g.vertices()) {
        std::vector<VertexId> lk = g.link(v);
        for (VertexId w : g.vertices()) {
            if (v == w) continue;
            std::vector<VertexId> st = g.star(w);
            if (std::includes(st.begin(), st.end(), lk.begin(), lk.end())) return {false, v, w};
        }
    }
    return {true, -1, -1};
}

// Every vertex is cut out by its link: Lk(Lk(v)) = {v} for all v.
inline PairWitness is_rigid(const Graph& g) {
    if (!g.is_finite()) throw UnsupportedError("rigidity check needs a finite graph");
    for (VertexId v : g.vertices()) {
        if (g.link(v).empty()) {
            std::ostringstream os;
            os << "vertex " << v << " is isolated; rigidity needs every link nonempty";
            throw DomainError(os.str());
        }
    }
    for (VertexId v : g.vertices()) {
        std::vector<VertexId> ll = common_link(g, g.link(v));
        if (ll.size() != 1 || ll[0] != v) return {false, v, -1};
    }
    return {true, -1, -1};
}

// Undirected multigraph: loops allowed, edges carry multiplicities.
class Multigraph {
public:
    Multigraph() = default;

    Multigraph(std::vector<VertexId> vertices, std::map<std::pair<VertexId, VertexId>, std::uint64_t> edges)
        : verts_(std::move(vertices)) {
        sort_unique(verts_);
        for (auto& [key, mult] : edges) {
            if (mult == 0) continue;
            auto norm = key.first <= key.second ? key : std::make_pair(key.second, key.first);
            if (!sorted_contains(verts_, norm.first) || !sorted_contains(verts_, norm.second)) {
                std::ostringstream os;
                os << "edge (" << norm.first << ", " << norm.second << ") references a vertex outside the multigraph";
                throw ValidationError(os.str());
            }
            edges_[norm] += mult;
        }
    }

    const std::vector<VertexId>& vertices() const { return verts_; }
    const std::map<std::pair<VertexId, VertexId>, std::uint64_t>& edges() const { return edges_; }

    std::uint64_t multiplicity(VertexId a, VertexId b) const {
        auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        auto it = edges_.find(key);
        return it == edges_.end() ? 0 : it->second;
    }

    std::uint64_t loop_count(VertexId v) const { return multiplicity(v, v); }

    std::uint64_t total_edge_count() const {
        std::uint64_t n = 0;
        for (const auto& [key, mult] : edges_) n += mult;
        return n;
    }

    // Loops contribute 2 to the degree of their vertex.
    std::uint64_t degree(VertexId v) const {
        std::uint64_t d = 0;
        for (const auto& [key, mult] : edges_) {
            if (key.first == v) d += mult;
            if (key.second == v) d += mult;
        }
        return d;
    }

    std::string render() const {
        std::ostringstream os;
        os << verts_.size() << " vertices;";
        for (const auto& [key, mult] : edges_) {
            os << " {" << key.first << "," << key.second << "}";
            if (mult > 1) os << "x" << mult;
        }
        return os.str();
    }

private:
    std::vector<VertexId> verts_;
    std::map<std::pair<VertexId, VertexId>, std::uint64_t> edges_;
};

struct MultigraphIso {
    bool isomorphic = false;
    std::vector<std::pair<VertexId, VertexId>> mapping; // filled when isomorphic
    std::string reason;                                 // filled when not
};

namespace detail {

inline std::vector<std::uint64_t> multigraph_profile(const Multigraph& g, VertexId v) {
    std::vector<std::uint64_t> profile{g.degree(v), g.loop_count(v)};
    std::vector<std::uint64_t> mults;
    for (const auto& [key, mult] : g.edges()) {
        if (key.first == v || key.second == v) mults.push_back(mult);
    }
    std::sort(mults.begin(), mults.end());
    profile.insert(profile.end(), mults.begin(), mults.end());
    return profile;
}

inline bool multigraph_extend(const Multigraph& a, const Multigraph& b,
                              std::vector<std::pair<VertexId, VertexId>>& assigned,
                              std::set<VertexId>& used) {
    if (assigned.size() == a.vertices().size()) return true;
    VertexId va = a.vertices()[assigned.size()];
    for (VertexId vb : b.vertices()) {
        if (used.count(vb)) continue;
        if (multigraph_profile(a, va) != multigraph_profile(b, vb)) continue;
        bool ok = true;
        for (const auto& [pa, pb] : assigned) {
            if (a.multiplicity(va, pa) != b.multiplicity(vb, pb)) {
                ok = false;
                break;
            }
        }
        if (a.loop_count(va) != b.loop_count(vb)) ok = false;
        if (!ok) continue;
        assigned.emplace_back(va, vb);
        used.insert(vb);
        if (multigraph_extend(a, b, assigned, used)) return true;
        assigned.pop_back();
        used.erase(vb);
    }
    return false;
}

} // namespace detail

// Exact isomorphism test by backtracking; intended for small quotients.
inline MultigraphIso multigraph_iso(const Multigraph& a, const Multigraph& b,
                                    std::size_t max_vertices = 12) {
    if (a.vertices().size() > max_vertices || b.vertices().size() > max_vertices)
        throw BudgetError("multigraph isomorphism search limited to " + std::to_string(max_vertices) + " vertices");
    MultigraphIso out;
    if (a.vertices().size() != b.vertices().size()) {
        std::ostringstream os;
        os << "vertex counts " << a.vertices().size() << " vs " << b.vertices().size();
        out.reason = os.str();
        return out;
    }
    if (a.total_edge_count() != b.total_edge_count()) {
        std::ostringstream os;
        os << "edge counts " << a.total_edge_count() << " vs " << b.total_edge_count();
        out.reason = os.str();
        return out;
    }
    std::vector<std::vector<std::uint64_t>> pa, pb;
    for (VertexId v : a.vertices()) pa.push_back(detail::multigraph_profile(a, v));
    for (VertexId v : b.vertices()) pb.push_back(detail::multigraph_profile(b, v));
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    if (pa != pb) {
        out.reason = "vertex degree and multiplicity profiles differ";
        return out;
    }
    std::vector<std::pair<VertexId, VertexId>> assigned;
    std::set<VertexId> used;
    if (detail::multigraph_extend(a, b, assigned, used)) {
        out.isomorphic = true;
        out.mapping = assigned;
    } else {
        out.reason = "no vertex bijection preserves edge multiplicities";
    }
    return out;
}

} // namespace gwkit

#endif

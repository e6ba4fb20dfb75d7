#ifndef GWKIT_GRAPH_PRODUCT_HPP
#define GWKIT_GRAPH_PRODUCT_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "util.hpp"

namespace gwkit {

// Context for words over vertex groups attached to a graph: either one group
// shared by all vertices or an explicit per-vertex assignment (finite graphs).
class GraphProduct {
public:
    GraphProduct(Graph graph, Group vertex_group) {
        auto d = std::make_shared<Data>(Data{std::move(graph), std::move(vertex_group), true, {}});
        d_ = std::move(d);
    }

    GraphProduct(Graph graph, std::map<VertexId, Group> per_vertex) {
        if (!graph.is_finite())
            throw UnsupportedError("per-vertex group assignment needs a finite graph");
        for (VertexId v : graph.vertices()) {
            if (!per_vertex.count(v))
                throw ValidationError("no vertex group assigned to vertex " + std::to_string(v));
        }
        for (const auto& [v, g] : per_vertex) {
            if (!graph.has_vertex(v))
                throw ValidationError("vertex group assigned to unknown vertex " + std::to_string(v));
        }
        Group first = per_vertex.begin()->second;
        d_ = std::make_shared<Data>(Data{std::move(graph), std::move(first), false, std::move(per_vertex)});
    }

    const Graph& graph() const { return d_->graph; }

    bool uniform() const { return d_->is_uniform; }

    const Group& uniform_group() const {
        if (!d_->is_uniform) throw UnsupportedError("context has per-vertex groups");
        return d_->uniform;
    }

    const Group& vertex_group(VertexId v) const {
        if (d_->is_uniform) {
            d_->graph.require_vertex(v);
            return d_->uniform;
        }
        auto it = d_->per_vertex.find(v);
        if (it == d_->per_vertex.end())
            throw DomainError("vertex " + std::to_string(v) + " is not in the graph");
        return it->second;
    }

    bool same(const GraphProduct& o) const { return d_ == o.d_; }
    const void* handle() const { return d_.get(); }

private:
    struct Data {
        Graph graph;
        Group uniform;
        bool is_uniform;
        std::map<VertexId, Group> per_vertex;
    };
    std::shared_ptr<const Data> d_;
};

struct Syllable {
    VertexId vertex;
    GroupElem elem;

    bool operator==(const Syllable& o) const { return vertex == o.vertex && elem == o.elem; }
    bool operator!=(const Syllable& o) const { return !(*this == o); }
    bool operator<(const Syllable& o) const {
        if (vertex != o.vertex) return vertex < o.vertex;
        return elem < o.elem;
    }
};

class GPElement;
GPElement normalize(const GraphProduct& ctx, std::vector<Syllable> word);

// Element of the graph product, stored as its canonical minimal-length
// syllable word: no identity syllables, no two syllables of the same vertex
// separated only by neighbours of that vertex, ordered so that at each step
// the smallest vertex that commutes past everything before it comes first.
class GPElement {
public:
    static GPElement identity(const GraphProduct& ctx) { return GPElement(ctx, {}); }

    const GraphProduct& context() const { return ctx_; }
    const std::vector<Syllable>& syllables() const { return syll_; }
    std::size_t syllable_length() const { return syll_.size(); }
    bool is_identity() const { return syll_.empty(); }

    // Vertices with a syllable in the word, sorted without repeats.
    std::vector<VertexId> support() const {
        std::vector<VertexId> out;
        for (const auto& s : syll_) out.push_back(s.vertex);
        sort_unique(out);
        return out;
    }

    bool operator==(const GPElement& o) const {
        return ctx_.handle() == o.ctx_.handle() && syll_ == o.syll_;
    }
    bool operator!=(const GPElement& o) const { return !(*this == o); }
    bool operator<(const GPElement& o) const {
        if (ctx_.handle() != o.ctx_.handle()) return ctx_.handle() < o.ctx_.handle();
        return syll_ < o.syll_;
    }

private:
    friend GPElement normalize(const GraphProduct& ctx, std::vector<Syllable> word);
    GPElement(GraphProduct ctx, std::vector<Syllable> syll) : ctx_(std::move(ctx)), syll_(std::move(syll)) {}

    GraphProduct ctx_;
    std::vector<Syllable> syll_;
};

// Rewrite an arbitrary syllable word into the canonical minimal form: drop
// identity syllables, merge syllables of equal vertex whenever everything
// between commutes with them (cascading), then order the result by repeatedly
// extracting the smallest vertex whose syllable commutes to the front.
inline GPElement normalize(const GraphProduct& ctx, std::vector<Syllable> word) {
    const Graph& graph = ctx.graph();
    std::vector<Syllable> w;
    w.reserve(word.size());
    for (auto& s : word) {
        graph.require_vertex(s.vertex);
        const Group& gv = ctx.vertex_group(s.vertex);
        if (!gv.owns(s.elem))
            throw DomainError("syllable at vertex " + std::to_string(s.vertex) +
                              " does not belong to that vertex group");
        if (!gv.is_identity(s.elem)) w.push_back(std::move(s));
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < w.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[j].vertex != w[i].vertex) continue;
                bool movable = true;
                for (std::size_t k = i + 1; k < j; ++k) {
                    if (!graph.adjacent(w[k].vertex, w[i].vertex)) {
                        movable = false;
                        break;
                    }
                }
                if (movable) {
                    const Group& gv = ctx.vertex_group(w[i].vertex);
                    GroupElem merged = gv.product(w[i].elem, w[j].elem);
                    w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
                    if (gv.is_identity(merged)) w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
                    else w[i].elem = merged;
                    changed = true;
                }
                break; // the nearest equal-vertex syllable blocks any later one
            }
        }
    }

    std::vector<Syllable> out;
    out.reserve(w.size());
    while (!w.empty()) {
        std::size_t best = w.size();
        for (std::size_t idx = 0; idx < w.size(); ++idx) {
            bool movable = true;
            for (std::size_t k = 0; k < idx; ++k) {
                if (!graph.adjacent(w[k].vertex, w[idx].vertex)) {
                    movable = false;
                    break;
                }
            }
            if (movable && (best == w.size() || w[idx].vertex < w[best].vertex)) best = idx;
        }
        out.push_back(w[best]);
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return GPElement(ctx, std::move(out));
}

inline GPElement single_syllable(const GraphProduct& ctx, VertexId v, const GroupElem& x) {
    return normalize(ctx, {Syllable{v, x}});
}

inline GPElement multiply(const GPElement& a, const GPElement& b) {
    if (a.context().handle() != b.context().handle())
        throw DomainError("operands come from different graph product contexts");
    std::vector<Syllable> word = a.syllables();
    word.insert(word.end(), b.syllables().begin(), b.syllables().end());
    return normalize(a.context(), std::move(word));
}

inline GPElement invert(const GPElement& a) {
    std::vector<Syllable> word;
    word.reserve(a.syllable_length());
    for (auto it = a.syllables().rbegin(); it != a.syllables().rend(); ++it)
        word.push_back(Syllable{it->vertex, a.context().vertex_group(it->vertex).inverse(it->elem)});
    return normalize(a.context(), std::move(word));
}

// The v-syllable that can be commuted to the front of the word, or the
// identity of the vertex group when no such syllable exists. Scans from the
// front: everything before the v-syllable must lie in the link of v.
inline GroupElem leading_syllable(const GPElement& a, VertexId v) {
    const Graph& graph = a.context().graph();
    graph.require_vertex(v);
    for (const auto& s : a.syllables()) {
        if (s.vertex == v) return s.elem;
        if (!graph.adjacent(s.vertex, v)) break;
    }
    return a.context().vertex_group(v).identity();
}

// All syllable words obtainable from the canonical word by swapping adjacent
// syllables whose vertices are adjacent in the graph. Every minimal-length
// word for the element appears here. Guarded by a length bound because the
// class can have factorially many members.
inline std::vector<std::vector<Syllable>> shuffle_class(const GPElement& a, std::size_t max_length = 8) {
    if (a.syllable_length() > max_length)
        throw BudgetError("shuffle class enumeration limited to words of length " + std::to_string(max_length));
    const Graph& graph = a.context().graph();
    std::set<std::vector<Syllable>> seen{a.syllables()};
    std::deque<std::vector<Syllable>> queue{a.syllables()};
    while (!queue.empty()) {
        std::vector<Syllable> w = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (!graph.adjacent(w[i].vertex, w[i + 1].vertex)) continue;
            std::swap(w[i], w[i + 1]);
            if (seen.insert(w).second) queue.push_back(w);
            std::swap(w[i], w[i + 1]);
        }
    }
    return std::vector<std::vector<Syllable>>(seen.begin(), seen.end());
}

// Relabel the word along a vertex map. The map must be injective and preserve
// adjacency both ways on the support and its links; this is checked on that
// finite set only.
inline GPElement relabel(const GPElement& a, const std::function<VertexId(VertexId)>& phi) {
    const Graph& graph = a.context().graph();
    std::vector<VertexId> region = a.support();
    for (VertexId v : a.support()) {
        std::vector<VertexId> lk = graph.link(v);
        region.insert(region.end(), lk.begin(), lk.end());
    }
    sort_unique(region);
    std::map<VertexId, VertexId> images;
    for (VertexId v : region) {
        VertexId u = phi(v);
        if (!graph.has_vertex(u))
            throw DomainError("vertex map sends " + std::to_string(v) + " to " + std::to_string(u) +
                              ", which is not in the graph");
        images[v] = u;
    }
    for (VertexId v : region) {
        for (VertexId w : region) {
            if (v == w) {
                continue;
            }
            if (images[v] == images[w])
                throw DomainError("vertex map is not injective: " + std::to_string(v) + " and " +
                                  std::to_string(w) + " both map to " + std::to_string(images[v]));
            if (graph.adjacent(v, w) != graph.adjacent(images[v], images[w]))
                throw DomainError("vertex map does not preserve adjacency on the pair (" +
                                  std::to_string(v) + ", " + std::to_string(w) + ")");
        }
    }
    std::vector<Syllable> word;
    word.reserve(a.syllable_length());
    for (const auto& s : a.syllables()) {
        VertexId u = images[s.vertex];
        const Group& from = a.context().vertex_group(s.vertex);
        const Group& to = a.context().vertex_group(u);
        if (!from.same(to))
            throw DomainError("vertex map sends vertex " + std::to_string(s.vertex) +
                              " to a vertex with a different group");
        word.push_back(Syllable{u, s.elem});
    }
    return normalize(a.context(), std::move(word));
}

inline std::string gp_render(const GPElement& a) {
    if (a.is_identity()) return "e";
    std::ostringstream os;
    bool first = true;
    for (const auto& s : a.syllables()) {
        if (!first) os << " ";
        first = false;
        os << s.vertex << ":" << a.context().vertex_group(s.vertex).render(s.elem);
    }
    return os.str();
}

// Parse a word literal "v:g v:g ..." where v is a vertex id and g an element
// literal of that vertex's group; "e" denotes the identity.
inline GPElement gp_parse(const GraphProduct& ctx, const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> tokens;
    std::string tk;
    while (is >> tk) tokens.push_back(tk);
    if (tokens.empty() || (tokens.size() == 1 && (tokens[0] == "e" || tokens[0] == "1")))
        return GPElement::identity(ctx);
    std::vector<Syllable> word;
    for (const std::string& token : tokens) {
        std::size_t colon = token.find(':');
        if (colon == std::string::npos)
            throw ValidationError("syllable \"" + token + "\" is missing the ':' separator");
        std::string vtext = token.substr(0, colon);
        std::string etext = token.substr(colon + 1);
        VertexId v = 0;
        try {
            std::size_t pos = 0;
            v = std::stoll(vtext, &pos);
            if (pos != vtext.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ValidationError("syllable vertex \"" + vtext + "\" is not an integer");
        }
        ctx.graph().require_vertex(v);
        word.push_back(Syllable{v, ctx.vertex_group(v).parse(etext)});
    }
    return normalize(ctx, std::move(word));
}

} // namespace gwkit

#endif

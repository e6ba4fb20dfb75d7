#ifndef GWKIT_ORACLES_HPP
#define GWKIT_ORACLES_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "graph_product.hpp"
#include "group.hpp"
#include "util.hpp"

// Independent recomputation of results by exhaustive search, used to
// cross-check the main algorithms. Everything here favours the most direct
// definition over efficiency.
namespace gwkit::oracle {

using Word = std::vector<Syllable>;

// Every word reachable from `start` by dropping identity syllables, merging
// neighbouring syllables of the same vertex, and swapping neighbouring
// syllables whose vertices are adjacent in the graph.
inline std::set<Word> rewrite_closure(const GraphProduct& ctx, const Word& start,
                                      std::uint64_t budget = search_budget()) {
    const Graph& graph = ctx.graph();
    std::set<Word> seen{start};
    std::deque<Word> queue{start};
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (ctx.vertex_group(w[i].vertex).is_identity(w[i].elem)) {
                Word next = w;
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
                if (seen.insert(next).second) queue.push_back(next);
            }
            if (i + 1 >= w.size()) continue;
            if (w[i].vertex == w[i + 1].vertex) {
                Word next = w;
                next[i].elem = ctx.vertex_group(w[i].vertex).product(w[i].elem, w[i + 1].elem);
                next.erase(next.begin() + static_cast<std::ptrdiff_t>(i + 1));
                if (seen.insert(next).second) queue.push_back(next);
            } else if (graph.adjacent(w[i].vertex, w[i + 1].vertex)) {
                Word next = w;
                std::swap(next[i], next[i + 1]);
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
        if (seen.size() > budget) throw BudgetError("rewrite closure exceeded the node budget");
    }
    return seen;
}

struct ClosureSummary {
    Word canonical;             // least minimal-length member
    std::uint64_t min_length;   // syllable count of the minimal members
    std::set<Word> minimal;     // all minimal-length members
};

inline ClosureSummary closure_summary(const GraphProduct& ctx, const Word& start,
                                      std::uint64_t budget = search_budget()) {
    std::set<Word> closure = rewrite_closure(ctx, start, budget);
    ClosureSummary out;
    out.min_length = std::uint64_t(-1);
    for (const Word& w : closure) {
        if (w.size() < out.min_length) {
            out.min_length = w.size();
            out.minimal.clear();
        }
        if (w.size() == out.min_length) out.minimal.insert(w);
    }
    out.canonical = *out.minimal.begin();
    return out;
}

inline bool words_equal(const GraphProduct& ctx, const Word& a, const Word& b,
                        std::uint64_t budget = search_budget()) {
    return closure_summary(ctx, a, budget).canonical == closure_summary(ctx, b, budget).canonical;
}

// Position of the syllable at vertex v that commutes to the front, if any.
inline std::optional<std::size_t> leading_position(const GPElement& a, VertexId v) {
    const Graph& graph = a.context().graph();
    for (std::size_t i = 0; i < a.syllables().size(); ++i) {
        if (a.syllables()[i].vertex == v) return i;
        if (!graph.adjacent(a.syllables()[i].vertex, v)) return std::nullopt;
    }
    return std::nullopt;
}

// Structural check of the single-syllable multiplication trichotomy: with
// x at vertex v and any h, the product xh either gains the new syllable in
// front, absorbs it into the front-movable v-syllable, or cancels that
// syllable entirely; the word length moves by +1, 0, -1 accordingly.
struct TrichotomyCheck {
    bool pass = false;
    int delta = 0;          // length difference actually observed
    std::string shape;      // "prepend", "replace", "cancel"
    std::string detail;     // failure description
};

inline TrichotomyCheck trichotomy_check(const GraphProduct& ctx, VertexId v, const GroupElem& x,
                                        const GPElement& h) {
    TrichotomyCheck out;
    const Group& gv = ctx.vertex_group(v);
    GPElement xh = multiply(single_syllable(ctx, v, x), h);
    out.delta = static_cast<int>(xh.syllable_length()) - static_cast<int>(h.syllable_length());

    auto fail = [&](const std::string& msg) {
        out.pass = false;
        out.detail = msg;
        return out;
    };

    if (gv.is_identity(x)) {
        out.shape = "identity";
        if (xh != h) return fail("multiplying by the identity changed the element");
        out.pass = true;
        return out;
    }

    std::optional<std::size_t> pos = leading_position(h, v);
    Word expected;
    if (!pos) {
        out.shape = "prepend";
        expected.push_back(Syllable{v, x});
        expected.insert(expected.end(), h.syllables().begin(), h.syllables().end());
        if (out.delta != 1) return fail("expected length +1, got " + std::to_string(out.delta));
    } else {
        GroupElem merged = gv.product(x, h.syllables()[*pos].elem);
        expected = h.syllables();
        if (gv.is_identity(merged)) {
            out.shape = "cancel";
            expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(*pos));
            if (out.delta != -1) return fail("expected length -1, got " + std::to_string(out.delta));
        } else {
            out.shape = "replace";
            expected[*pos].elem = merged;
            if (out.delta != 0) return fail("expected length 0, got " + std::to_string(out.delta));
        }
    }
    ClosureSummary want = closure_summary(ctx, expected);
    if (want.canonical != xh.syllables())
        return fail("product disagrees with the rewritten word's canonical form");
    if (want.min_length != xh.syllable_length())
        return fail("product length disagrees with the rewritten word's minimal length");
    out.pass = true;
    return out;
}

// Exhaustive shorter-word search: true when no word of fewer syllables over
// the given per-vertex element pools equals `target`. Sound for finite vertex
// groups with full pools; pools must at least contain the target's syllable
// values and their partial products to be meaningful.
inline bool is_minimal_by_search(const GraphProduct& ctx, const GPElement& target,
                                 const std::map<VertexId, std::vector<GroupElem>>& pools,
                                 std::uint64_t budget = search_budget()) {
    if (target.syllable_length() == 0) return true;
    Word canonical_target = closure_summary(ctx, target.syllables(), budget).canonical;
    std::vector<Syllable> alphabet;
    for (const auto& [v, elems] : pools) {
        for (const auto& s : elems) {
            if (!ctx.vertex_group(v).is_identity(s)) alphabet.push_back(Syllable{v, s});
        }
    }
    std::uint64_t explored = 0;
    std::function<bool(Word&)> extend = [&](Word& w) -> bool {
        if (++explored > budget) throw BudgetError("shorter-word search exceeded the node budget");
        if (!w.empty() && closure_summary(ctx, w, budget).canonical == canonical_target) return true;
        if (w.size() + 1 >= target.syllable_length()) return false;
        for (const auto& s : alphabet) {
            w.push_back(s);
            if (extend(w)) return true;
            w.pop_back();
        }
        return false;
    };
    Word w;
    return !extend(w);
}

// Shortest circuit by exhaustive enumeration of simple cycles: paths whose
// smallest vertex comes first, closed back to it.
inline std::optional<std::int64_t> girth_by_circuits(const Graph& g) {
    if (!g.is_finite()) throw UnsupportedError("circuit enumeration needs a finite graph");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    const auto& verts = g.vertices();
    std::vector<VertexId> path;
    std::set<VertexId> used;
    std::function<void(VertexId)> extend = [&](VertexId start) {
        VertexId last = path.back();
        if (path.size() >= 3 && g.adjacent(last, start))
            best = std::min(best, static_cast<std::int64_t>(path.size()));
        if (static_cast<std::int64_t>(path.size()) + 1 >= best) return;
        for (VertexId u : g.link(last)) {
            if (u <= start || used.count(u)) continue;
            path.push_back(u);
            used.insert(u);
            extend(start);
            path.pop_back();
            used.erase(u);
        }
    };
    for (VertexId start : verts) {
        path = {start};
        used = {start};
        extend(start);
    }
    if (best == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
    return best;
}

// Direct quantifier sweep: every pair v != w admits a neighbour of v that is
// neither w nor adjacent to w.
inline bool untransvectable_by_sweep(const Graph& g) {
    for (VertexId v : g.vertices()) {
        for (VertexId w : g.vertices()) {
            if (v == w) continue;
            bool found = false;
            for (VertexId u : g.link(v)) {
                if (u != w && !g.adjacent(u, w)) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

// Direct sweep: the set of vertices adjacent to every neighbour of v must be
// exactly {v}. Isolated vertices simply report false; the main routine
// rejects them up front and callers compare only when both sides are defined.
inline bool rigid_by_sweep(const Graph& g) {
    for (VertexId v : g.vertices()) {
        std::vector<VertexId> lk = g.link(v);
        if (lk.empty()) return false;
        std::vector<VertexId> doubly;
        for (VertexId u : g.vertices()) {
            bool all = true;
            for (VertexId x : lk) {
                if (u == x || !g.adjacent(u, x)) {
                    all = false;
                    break;
                }
            }
            if (all) doubly.push_back(u);
        }
        if (doubly != std::vector<VertexId>{v}) return false;
    }
    return true;
}

// Least word length of an acting element carrying some representative to v,
// found by scanning balls of increasing radius.
inline std::optional<std::uint64_t> vertex_length_by_search(const GraphAction& a,
                                                            const std::vector<VertexId>& reps,
                                                            VertexId v, std::uint64_t cap) {
    for (std::uint64_t r = 0; r <= cap; ++r) {
        for (const auto& g : a.group().ball(r)) {
            if (a.group().word_length(g) != r) continue;
            for (VertexId rep : reps)
                if (a.apply(g, rep) == v) return r;
        }
    }
    return std::nullopt;
}

// Uniformly random raw word (not normalized) over the given vertex pool.
inline Word random_word(const GraphProduct& ctx, std::mt19937_64& rng, std::size_t length,
                        const std::vector<VertexId>& vertex_pool, std::uint64_t elem_radius) {
    Word out;
    for (std::size_t i = 0; i < length; ++i) {
        VertexId v = vertex_pool[rng() % vertex_pool.size()];
        out.push_back(Syllable{v, ctx.vertex_group(v).sample(rng, elem_radius)});
    }
    return out;
}

inline std::string render_word(const GraphProduct& ctx, const Word& w) {
    if (w.empty()) return "e";
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        os << w[i].vertex << ":" << ctx.vertex_group(w[i].vertex).render(w[i].elem);
    }
    return os.str();
}

} // namespace gwkit::oracle

#endif

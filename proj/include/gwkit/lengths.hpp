#ifndef GWKIT_LENGTHS_HPP
#define GWKIT_LENGTHS_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "graph_product.hpp"
#include "group.hpp"
#include "util.hpp"

namespace gwkit {

// Finitely supported integer vector indexed by vertices. All arithmetic is
// exact; only nonzero entries are stored.
class SparseVertexVector {
public:
    void add(VertexId v, std::int64_t delta) {
        if (delta == 0) return;
        auto it = entries_.find(v);
        if (it == entries_.end()) {
            entries_.emplace(v, delta);
        } else {
            it->second += delta;
            if (it->second == 0) entries_.erase(it);
        }
    }

    std::int64_t at(VertexId v) const {
        auto it = entries_.find(v);
        return it == entries_.end() ? 0 : it->second;
    }

    const std::map<VertexId, std::int64_t>& entries() const { return entries_; }

    std::uint64_t l1() const {
        std::uint64_t n = 0;
        for (const auto& [v, c] : entries_) n += static_cast<std::uint64_t>(c < 0 ? -c : c);
        return n;
    }

    SparseVertexVector minus(const SparseVertexVector& o) const {
        SparseVertexVector out = *this;
        for (const auto& [v, c] : o.entries_) out.add(v, -c);
        return out;
    }

    // Relabel indices along a vertex map; colliding entries would be summed,
    // but the maps used here are bijections.
    SparseVertexVector pushforward(const std::function<VertexId(VertexId)>& phi) const {
        SparseVertexVector out;
        for (const auto& [v, c] : entries_) out.add(phi(v), c);
        return out;
    }

    bool operator==(const SparseVertexVector& o) const { return entries_ == o.entries_; }
    bool operator!=(const SparseVertexVector& o) const { return !(*this == o); }

    std::string render() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (const auto& [v, c] : entries_) {
            if (!first) os << ", ";
            first = false;
            os << v << ": " << c;
        }
        os << "}";
        return os.str();
    }

private:
    std::map<VertexId, std::int64_t> entries_;
};

// Word lengths on the two groups plus a vertex length: the least word length
// of an acting element moving some orbit representative to the vertex.
// Computed by breadth-first search from the representatives; on infinite
// graphs the table grows on demand under the global node budget.
class LengthSystem {
public:
    explicit LengthSystem(WreathContext ctx) : ctx_(std::move(ctx)), state_(std::make_shared<State>()) {
        Orbits orb = orbits(ctx_.action());
        if (orb.reps.empty()) throw ValidationError("action has no orbit representatives");
        for (VertexId r : orb.reps) {
            state_->dist.emplace(r, 0);
            state_->frontier.push_back(r);
        }
        if (ctx_.graph().is_finite()) {
            std::lock_guard<std::mutex> lock(state_->mu);
            while (!state_->complete) expand_level_locked();
        }
    }

    const WreathContext& context() const { return ctx_; }

    std::uint64_t g_length(const GroupElem& g) const { return ctx_.acting_group().word_length(g); }
    std::uint64_t h_length(const GroupElem& h) const { return ctx_.fiber_group().word_length(h); }

    std::uint64_t vertex_length(VertexId v) const {
        ctx_.graph().require_vertex(v);
        std::lock_guard<std::mutex> lock(state_->mu);
        while (true) {
            auto it = state_->dist.find(v);
            if (it != state_->dist.end()) return it->second;
            if (state_->complete)
                throw DomainError("vertex " + std::to_string(v) + " is not in any representative's orbit");
            expand_level_locked();
        }
    }

    // All vertices of vertex length at most R, sorted.
    std::vector<VertexId> sublevel(std::uint64_t R) const {
        std::lock_guard<std::mutex> lock(state_->mu);
        while (!state_->complete && state_->depth < R) expand_level_locked();
        std::vector<VertexId> out;
        for (const auto& [v, d] : state_->dist)
            if (d <= R) out.push_back(v);
        return out;
    }

private:
    struct State {
        std::mutex mu;
        std::map<VertexId, std::uint64_t> dist;
        std::vector<VertexId> frontier; // vertices at distance == depth
        std::uint64_t depth = 0;
        bool complete = false;
    };

    void expand_level_locked() const {
        std::vector<VertexId> next;
        auto gens = ctx_.acting_group().generators();
        for (VertexId v : state_->frontier) {
            for (const auto& s : gens) {
                VertexId u = ctx_.action().apply(s, v);
                if (state_->dist.emplace(u, state_->depth + 1).second) {
                    next.push_back(u);
                    if (state_->dist.size() > search_budget())
                        throw BudgetError("vertex length table exceeded the node budget");
                }
            }
        }
        state_->frontier = std::move(next);
        state_->depth += 1;
        if (state_->frontier.empty()) state_->complete = true;
    }

    WreathContext ctx_;
    std::shared_ptr<State> state_;
};

inline LengthSystem make_lengths(const WreathContext& ctx) { return LengthSystem(ctx); }

// Weight vector of a pair z = (h, g): every support vertex v of h
// contributes the cheaper of |v| and |g^{-1}(v)|, and every syllable adds its
// element's word length at its vertex. Contributions accumulate.
inline SparseVertexVector m_map(const LengthSystem& L, const WreathElement& z) {
    const WreathContext& ctx = L.context();
    if (z.h.context().handle() != ctx.product().handle())
        throw DomainError("pair does not belong to this context");
    SparseVertexVector m;
    GroupElem ginv = ctx.acting_group().inverse(z.g);
    for (VertexId v : z.h.support()) {
        std::uint64_t direct = L.vertex_length(v);
        std::uint64_t pulled = L.vertex_length(ctx.action().apply(ginv, v));
        m.add(v, static_cast<std::int64_t>(direct < pulled ? direct : pulled));
    }
    for (const auto& s : z.h.syllables())
        m.add(s.vertex, static_cast<std::int64_t>(L.h_length(s.elem)));
    return m;
}

inline std::uint64_t f_length(const LengthSystem& L, const WreathElement& z) { return m_map(L, z).l1(); }

// Push a weight vector through the action of k.
inline SparseVertexVector push_weights(const LengthSystem& L, const GroupElem& k, const SparseVertexVector& m) {
    return m.pushforward(L.context().action().vertex_map(k));
}

// Membership in the finite window set: at most n syllables, every syllable
// element drawn from E, every syllable vertex in F or g(F).
inline bool in_window(const WreathContext& ctx, const std::vector<GroupElem>& elems,
                      const std::vector<VertexId>& verts, std::uint64_t n, const WreathElement& z) {
    if (z.h.context().handle() != ctx.product().handle())
        throw DomainError("pair does not belong to this context");
    if (z.h.syllable_length() > n) return false;
    std::vector<VertexId> allowed = verts;
    for (VertexId v : verts) allowed.push_back(ctx.action().apply(z.g, v));
    sort_unique(allowed);
    for (const auto& s : z.h.syllables()) {
        if (!sorted_contains(allowed, s.vertex)) return false;
        bool found = false;
        for (const auto& e : elems) {
            if (e == s.elem) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace gwkit

#endif

#ifndef GWKIT_COMMUTATOR_HPP
#define GWKIT_COMMUTATOR_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
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

using Rational = boost::rational<std::int64_t>;

inline std::string rational_render(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

// Finitely supported rational function on one vertex group, acting diagonally
// on basis vectors through the leading syllable at its vertex.
class DiagSymbol {
public:
    DiagSymbol(VertexId vertex, const Group& group, const std::map<GroupElem, Rational>& values)
        : vertex_(vertex), group_(group) {
        for (const auto& [elem, val] : values) {
            if (!group_.owns(elem))
                throw DomainError("symbol value indexed by an element of a different group");
            if (val != Rational(0)) values_.emplace(elem, val);
        }
    }

    VertexId vertex() const { return vertex_; }
    const Group& group() const { return group_; }
    const std::map<GroupElem, Rational>& support() const { return values_; }

    Rational value(const GroupElem& a) const {
        if (!group_.owns(a)) throw DomainError("symbol evaluated at an element of a different group");
        auto it = values_.find(a);
        return it == values_.end() ? Rational(0) : it->second;
    }

private:
    VertexId vertex_;
    Group group_;
    std::map<GroupElem, Rational> values_;
};

// Diagonal coefficient of the symbol on the basis vector of x: the symbol
// evaluated at the syllable of x at the symbol's vertex that commutes to the
// front (the identity when there is none).
inline Rational diag_coeff(const DiagSymbol& f, const GPElement& x) {
    const Group& gv = x.context().vertex_group(f.vertex());
    if (!gv.same(f.group()))
        throw DomainError("symbol group does not match the vertex group at vertex " + std::to_string(f.vertex()));
    return f.value(leading_syllable(x, f.vertex()));
}

// One matrix entry of the commutator of the symbol with the right
// translation by h at vertex w: the basis vector of x maps to the basis
// vector of x h^{-1} with the stated coefficient.
struct CommutatorEntry {
    Rational coeff;
    GPElement target;
};

inline CommutatorEntry commutator_coeff(const DiagSymbol& f, VertexId w, const GroupElem& h, const GPElement& x) {
    const GraphProduct& ctx = x.context();
    ctx.graph().require_vertex(w);
    const Group& gw = ctx.vertex_group(w);
    if (!gw.owns(h)) throw DomainError("translation element does not belong to the group at vertex " + std::to_string(w));
    if (gw.is_identity(h)) throw ValidationError("translation by the identity is degenerate");
    GPElement target = multiply(x, single_syllable(ctx, w, gw.inverse(h)));
    Rational c = diag_coeff(f, target) - diag_coeff(f, x);
    return {c, std::move(target)};
}

// Structural precondition for a nonzero entry: the translation vertex equals
// the symbol's vertex and both column and row words are supported in its star.
inline bool commutator_case_applies(const DiagSymbol& f, VertexId w, const GPElement& x, const GPElement& target) {
    if (f.vertex() != w) return false;
    const Graph& graph = x.context().graph();
    std::vector<VertexId> st = graph.star(f.vertex());
    for (VertexId v : x.support())
        if (!sorted_contains(st, v)) return false;
    for (VertexId v : target.support())
        if (!sorted_contains(st, v)) return false;
    return true;
}

// One matrix entry of the crossed commutator on pairs (x, g): the symbol
// sees the translation at the moved vertex g(w), and the acting part rides
// along unchanged.
struct CrossedEntry {
    Rational coeff;
    WreathElement target;
};

inline CrossedEntry crossed_commutator_coeff(const WreathContext& ctx, const DiagSymbol& f, VertexId w,
                                             const GroupElem& h, const WreathElement& z) {
    if (z.h.context().handle() != ctx.product().handle())
        throw DomainError("pair does not belong to this context");
    VertexId gw = ctx.action().apply(z.g, w);
    CommutatorEntry plain = commutator_coeff(f, gw, h, z.h);
    return {plain.coeff, {std::move(plain.target), z.g}};
}

// Finite union of coset translates (vertex:lead) of the subgroup of words
// supported in the link of the vertex. Membership: supported in the star and
// leading syllable among the listed leads.
struct TranslateCover {
    VertexId vertex = -1;
    std::vector<GroupElem> leads;
};

inline bool cover_contains(const TranslateCover& cover, const GPElement& x) {
    const Graph& graph = x.context().graph();
    std::vector<VertexId> st = graph.star(cover.vertex);
    for (VertexId v : x.support())
        if (!sorted_contains(st, v)) return false;
    GroupElem lead = leading_syllable(x, cover.vertex);
    for (const auto& s : cover.leads)
        if (s == lead) return true;
    return false;
}

// Cover for the nonzero columns of the commutator of f with translation by h:
// leads are supp(f) together with supp(f) shifted by h. With shift_by_inverse
// the cover captures the rows (targets) instead.
inline TranslateCover commutator_cover(const GraphProduct& ctx, const DiagSymbol& f, const GroupElem& h,
                                       bool shift_by_inverse = false) {
    const Group& gv = ctx.vertex_group(f.vertex());
    if (!gv.same(f.group()))
        throw DomainError("symbol group does not match the vertex group at vertex " + std::to_string(f.vertex()));
    std::set<GroupElem> leads;
    GroupElem shift = shift_by_inverse ? gv.inverse(h) : h;
    for (const auto& [elem, val] : f.support()) {
        leads.insert(elem);
        leads.insert(gv.product(elem, shift));
    }
    TranslateCover out;
    out.vertex = f.vertex();
    out.leads.assign(leads.begin(), leads.end());
    return out;
}

// Products of at most `radius` single-syllable factors whose elements have
// word length at most `elem_radius`, deduplicated and capped at `radius`
// syllables. For a finite fiber group and elem_radius at least its diameter
// this is exactly the set of words of at most `radius` syllables. Finite
// graphs only.
inline std::vector<GPElement> gp_ball(const GraphProduct& ctx, std::uint64_t radius, std::uint64_t elem_radius) {
    std::vector<GPElement> gens;
    for (VertexId v : ctx.graph().vertices()) {
        const Group& gv = ctx.vertex_group(v);
        for (const auto& s : gv.ball(elem_radius)) {
            if (gv.is_identity(s)) continue;
            gens.push_back(single_syllable(ctx, v, s));
        }
    }
    std::set<GPElement> seen{GPElement::identity(ctx)};
    std::vector<GPElement> frontier{GPElement::identity(ctx)};
    for (std::uint64_t level = 0; level < radius; ++level) {
        std::vector<GPElement> next;
        for (const auto& x : frontier) {
            for (const auto& s : gens) {
                GPElement y = multiply(x, s);
                if (y.syllable_length() > radius) continue;
                if (seen.insert(y).second) {
                    next.push_back(y);
                    if (seen.size() > search_budget())
                        throw BudgetError("word ball enumeration exceeded the node budget");
                }
            }
        }
        frontier = std::move(next);
    }
    return std::vector<GPElement>(seen.begin(), seen.end());
}

// Cover certificate backed by an exhaustive sweep: `columns` contains every
// basis element of the swept ball whose commutator entry is nonzero, `rows`
// contains every corresponding target. The tallies record what the sweep saw.
struct SmallnessWitness {
    TranslateCover columns;
    TranslateCover rows;
    std::uint64_t swept = 0;
    std::uint64_t nonzero = 0;
};

// Build the cover for the commutator of the symbol with translation by h at
// vertex w, then verify it against every element of the word ball. A nonzero
// entry escaping the cover is a property violation and throws with the
// counterexample; covers for a translation vertex other than the symbol's
// are empty and the sweep confirms no nonzero entry exists.
inline SmallnessWitness smallness_witness(const GraphProduct& ctx, const DiagSymbol& f, VertexId w,
                                          const GroupElem& h, std::uint64_t ball_radius,
                                          std::uint64_t elem_radius) {
    const Group& gw = ctx.vertex_group(w);
    if (!gw.owns(h)) throw DomainError("translation element does not belong to the group at vertex " + std::to_string(w));
    if (gw.is_identity(h)) throw ValidationError("translation by the identity is degenerate");
    SmallnessWitness out;
    if (f.vertex() == w) {
        out.columns = commutator_cover(ctx, f, h, false);
        out.rows = commutator_cover(ctx, f, h, true);
    } else {
        out.columns.vertex = f.vertex();
        out.rows.vertex = f.vertex();
    }
    for (const GPElement& x : gp_ball(ctx, ball_radius, elem_radius)) {
        ++out.swept;
        CommutatorEntry entry = commutator_coeff(f, w, h, x);
        if (entry.coeff == Rational(0)) continue;
        ++out.nonzero;
        if (!cover_contains(out.columns, x))
            throw PropertyError("nonzero column at " + gp_render(x) + " escapes the cover");
        if (!cover_contains(out.rows, entry.target))
            throw PropertyError("nonzero row at " + gp_render(entry.target) + " escapes the cover");
    }
    return out;
}


} // namespace gwkit

#endif

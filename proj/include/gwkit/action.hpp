#ifndef GWKIT_ACTION_HPP
#define GWKIT_ACTION_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "graph_product.hpp"
#include "group.hpp"
#include "util.hpp"

namespace gwkit {

enum class ActionFamily { Finite, Shift, LeftMult };

// Action of a group on a graph by adjacency-preserving vertex bijections.
// Finite graphs take explicit images of the canonical generators, validated
// for bijectivity, adjacency preservation and the group relations. Two
// closed-form families cover the standard infinite instances: the integers
// shifting the line, and a free group acting on its own tree by left
// multiplication.
class GraphAction {
public:
    static GraphAction finite(Group group, Graph graph,
                              const std::vector<std::vector<VertexId>>& generator_images) {
        if (!graph.is_finite())
            throw UnsupportedError("explicit generator images need a finite graph");
        auto d = std::make_shared<Data>();
        d->family = ActionFamily::Finite;
        d->group = group;
        d->graph = graph;
        const auto& verts = graph.vertices();
        auto gens = group.canonical_generators();
        if (generator_images.size() != gens.size()) {
            std::ostringstream os;
            os << "expected " << gens.size() << " generator images, got " << generator_images.size();
            throw ValidationError(os.str());
        }
        for (std::size_t gi = 0; gi < generator_images.size(); ++gi) {
            const auto& img = generator_images[gi];
            if (img.size() != verts.size())
                throw ValidationError("generator image " + std::to_string(gi) + " has wrong length");
            std::map<VertexId, VertexId> fwd;
            std::set<VertexId> hit;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (!graph.has_vertex(img[i]))
                    throw ValidationError("generator image " + std::to_string(gi) + " sends vertex " +
                                          std::to_string(verts[i]) + " outside the graph");
                if (!hit.insert(img[i]).second)
                    throw ValidationError("generator image " + std::to_string(gi) + " is not a bijection");
                fwd[verts[i]] = img[i];
            }
            for (std::size_t i = 0; i < verts.size(); ++i)
                for (std::size_t j = i + 1; j < verts.size(); ++j)
                    if (graph.adjacent(verts[i], verts[j]) != graph.adjacent(fwd[verts[i]], fwd[verts[j]])) {
                        std::ostringstream os;
                        os << "generator image " << gi << " does not preserve adjacency on the pair ("
                           << verts[i] << ", " << verts[j] << ")";
                        throw ValidationError(os.str());
                    }
            std::map<VertexId, VertexId> bwd;
            for (const auto& [v, w] : fwd) bwd[w] = v;
            d->gen_images.push_back(std::move(fwd));
            d->gen_inverse_images.push_back(std::move(bwd));
        }
        if (group.is_finite()) build_full_table(*d);
        return GraphAction(std::move(d));
    }

    // Every generator acts as the identity.
    static GraphAction trivial(Group group, Graph graph) {
        std::vector<std::vector<VertexId>> images(group.canonical_generators().size(), graph.vertices());
        return finite(std::move(group), std::move(graph), images);
    }

    // The integers shifting the line graph by translation.
    static GraphAction shift(Group group, Graph graph) {
        if (group.kind() != GroupKind::Integers)
            throw ValidationError("the shift family needs the integers");
        if (graph.is_finite() || dynamic_cast<const detail::LineGraphImpl*>(graph.impl()) == nullptr)
            throw ValidationError("the shift family needs the line graph");
        auto d = std::make_shared<Data>();
        d->family = ActionFamily::Shift;
        d->group = std::move(group);
        d->graph = std::move(graph);
        return GraphAction(std::move(d));
    }

    // A free group acting on its tree by left multiplication.
    static GraphAction left_mult(Group group, Graph graph) {
        if (group.kind() != GroupKind::Free)
            throw ValidationError("the left multiplication family needs a free group");
        auto* tree = dynamic_cast<const detail::CayleyTreeImpl*>(graph.impl());
        if (graph.is_finite() || tree == nullptr)
            throw ValidationError("the left multiplication family needs the regular tree");
        if (tree->rank() != group.free_rank())
            throw ValidationError("tree rank " + std::to_string(tree->rank()) +
                                  " does not match free group rank " + std::to_string(group.free_rank()));
        auto d = std::make_shared<Data>();
        d->family = ActionFamily::LeftMult;
        d->group = std::move(group);
        d->graph = std::move(graph);
        d->tree = tree;
        return GraphAction(std::move(d));
    }

    ActionFamily family() const { return d_->family; }
    const Group& group() const { return d_->group; }
    const Graph& graph() const { return d_->graph; }

    VertexId apply(const GroupElem& g, VertexId v) const {
        d_->graph.require_vertex(v);
        switch (d_->family) {
            case ActionFamily::Shift:
                return v + d_->group.scalar_value(g);
            case ActionFamily::LeftMult: {
                std::vector<std::int32_t> word = d_->group.letters(g);
                std::vector<std::int32_t> target = d_->tree->decode(v);
                std::vector<std::int32_t> out = word;
                for (std::int32_t l : target) {
                    if (!out.empty() && (out.back() ^ 1) == l) out.pop_back();
                    else out.push_back(l);
                }
                return d_->tree->encode(out);
            }
            case ActionFamily::Finite: {
                if (d_->has_full_table) {
                    auto it = d_->full_table.find(g);
                    if (it == d_->full_table.end()) throw DomainError("element does not belong to the acting group");
                    return it->second.at(v);
                }
                if (d_->group.kind() == GroupKind::Integers) {
                    std::int64_t n = d_->group.scalar_value(g);
                    // walk the cycle of v under the image of +1
                    std::vector<VertexId> cycle{v};
                    for (VertexId u = d_->gen_images[0].at(v); u != v; u = d_->gen_images[0].at(u))
                        cycle.push_back(u);
                    std::int64_t r = static_cast<std::int64_t>(cycle.size());
                    std::int64_t idx = ((n % r) + r) % r;
                    return cycle[static_cast<std::size_t>(idx)];
                }
                // free group: apply letter images right to left
                const auto& word = d_->group.letters(g);
                VertexId u = v;
                for (auto it = word.rbegin(); it != word.rend(); ++it) {
                    std::size_t gen = static_cast<std::size_t>(*it >> 1);
                    u = (*it & 1) ? d_->gen_inverse_images[gen].at(u) : d_->gen_images[gen].at(u);
                }
                return u;
            }
        }
        throw Error("unreachable");
    }

    std::function<VertexId(VertexId)> vertex_map(const GroupElem& g) const {
        GraphAction self = *this;
        return [self, g](VertexId v) { return self.apply(g, v); };
    }

    // Some group element carrying `from` to `to`; nullopt when they lie in
    // different orbits. Exact for the closed-form families; breadth-first
    // search over generator moves on finite graphs.
    std::optional<GroupElem> transporter(VertexId from, VertexId to) const {
        d_->graph.require_vertex(from);
        d_->graph.require_vertex(to);
        switch (d_->family) {
            case ActionFamily::Shift:
                return d_->group.power(d_->group.canonical_generators()[0], to - from);
            case ActionFamily::LeftMult: {
                std::vector<std::int32_t> a = d_->tree->decode(to);
                std::vector<std::int32_t> b = d_->tree->decode(from);
                std::reverse(b.begin(), b.end());
                for (auto& l : b) l ^= 1;
                return d_->group.from_letters(detail::reduce_concat(a, b));
            }
            case ActionFamily::Finite: {
                std::map<VertexId, GroupElem> how{{from, d_->group.identity()}};
                std::deque<VertexId> queue{from};
                auto gens = d_->group.generators();
                while (!queue.empty()) {
                    VertexId v = queue.front();
                    queue.pop_front();
                    if (v == to) return how.at(v);
                    for (const auto& s : gens) {
                        VertexId u = apply(s, v);
                        if (!how.count(u)) {
                            how.emplace(u, d_->group.product(s, how.at(v)));
                            queue.push_back(u);
                        }
                    }
                }
                return std::nullopt;
            }
        }
        throw Error("unreachable");
    }

    bool same(const GraphAction& o) const { return d_ == o.d_; }

private:
    struct Data {
        ActionFamily family = ActionFamily::Finite;
        Group group = Group::integers();
        Graph graph = Graph::line();
        const detail::CayleyTreeImpl* tree = nullptr;
        std::vector<std::map<VertexId, VertexId>> gen_images;
        std::vector<std::map<VertexId, VertexId>> gen_inverse_images;
        bool has_full_table = false;
        std::map<GroupElem, std::map<VertexId, VertexId>> full_table;
    };

    explicit GraphAction(std::shared_ptr<Data> d) : d_(std::move(d)) {}

    // For a finite acting group, tabulate every element's vertex map by
    // closing the generator images under products, checking along the way
    // that the images respect the group's relations.
    static void build_full_table(Data& d) {
        std::map<VertexId, VertexId> id;
        for (VertexId v : d.graph.vertices()) id[v] = v;
        auto gens = d.group.canonical_generators();
        std::vector<std::pair<GroupElem, const std::map<VertexId, VertexId>*>> moves;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            moves.emplace_back(gens[i], &d.gen_images[i]);
            moves.emplace_back(d.group.inverse(gens[i]), &d.gen_inverse_images[i]);
        }
        d.full_table.emplace(d.group.identity(), id);
        std::deque<GroupElem> queue{d.group.identity()};
        while (!queue.empty()) {
            GroupElem x = queue.front();
            queue.pop_front();
            std::map<VertexId, VertexId> mx = d.full_table.at(x);
            for (const auto& [s, ms] : moves) {
                GroupElem y = d.group.product(x, s);
                std::map<VertexId, VertexId> my;
                for (const auto& [v, w] : *ms) my[v] = mx.at(w);
                auto it = d.full_table.find(y);
                if (it == d.full_table.end()) {
                    d.full_table.emplace(y, std::move(my));
                    queue.push_back(y);
                } else if (it->second != my) {
                    throw ValidationError("generator images violate the group relations at the product of " +
                                          d.group.render(x) + " and " + d.group.render(s));
                }
            }
        }
        d.has_full_table = true;
    }

    std::shared_ptr<Data> d_;
};

// Orbit decomposition. For finite graphs the classes are listed in full; the
// closed-form families are transitive by construction.
struct Orbits {
    std::vector<std::vector<VertexId>> classes;
    std::vector<VertexId> reps;
    std::string note;
};

inline Orbits orbits(const GraphAction& a) {
    Orbits out;
    if (!a.graph().is_finite()) {
        out.reps = {0};
        out.note = "transitive by construction";
        return out;
    }
    std::set<VertexId> remaining(a.graph().vertices().begin(), a.graph().vertices().end());
    auto gens = a.group().generators();
    while (!remaining.empty()) {
        VertexId start = *remaining.begin();
        std::set<VertexId> cls{start};
        std::deque<VertexId> queue{start};
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            for (const auto& s : gens) {
                VertexId u = a.apply(s, v);
                if (cls.insert(u).second) queue.push_back(u);
            }
        }
        for (VertexId v : cls) remaining.erase(v);
        out.reps.push_back(start);
        out.classes.emplace_back(cls.begin(), cls.end());
    }
    return out;
}

// Stabilizer data for a vertex set: the elements carrying the set to itself
// and those fixing it pointwise. finite_certified reports whether these sets
// are known to be finite (and then listed exactly); False means provably
// infinite, with a witness in the note.
struct IsotropyResult {
    Tri finite_certified = Tri::Inconclusive;
    std::vector<GroupElem> setwise;
    std::vector<GroupElem> pointwise;
    std::string note;
};

inline IsotropyResult isotropy(const GraphAction& a, const std::vector<VertexId>& set) {
    for (VertexId v : set) a.graph().require_vertex(v);
    std::vector<VertexId> e = set;
    sort_unique(e);
    IsotropyResult out;
    const Group& g = a.group();

    auto filter = [&](const std::vector<GroupElem>& candidates) {
        for (const auto& x : candidates) {
            std::vector<VertexId> img;
            img.reserve(e.size());
            bool fixes_all = true;
            for (VertexId v : e) {
                VertexId u = a.apply(x, v);
                img.push_back(u);
                if (u != v) fixes_all = false;
            }
            std::sort(img.begin(), img.end());
            if (img == e) out.setwise.push_back(x);
            if (fixes_all) out.pointwise.push_back(x);
        }
        sort_unique(out.setwise);
        sort_unique(out.pointwise);
    };

    switch (a.family()) {
        case ActionFamily::Shift:
        case ActionFamily::LeftMult: {
            if (e.empty()) {
                out.finite_certified = Tri::False;
                out.note = "the whole group stabilizes the empty set and is infinite";
                return out;
            }
            std::vector<GroupElem> candidates;
            for (VertexId u : e) {
                auto t = a.transporter(e[0], u);
                if (t) candidates.push_back(*t);
            }
            filter(candidates);
            out.finite_certified = Tri::True;
            out.note = "exact: candidates from point transporters of a simply transitive action";
            return out;
        }
        case ActionFamily::Finite: {
            if (g.is_finite()) {
                filter(g.elements());
                out.finite_certified = Tri::True;
                out.note = "exact: acting group enumerated";
                return out;
            }
            // Infinite group, finite graph: the kernel of the vertex
            // representation has finite index, so every stabilizer is infinite.
            out.finite_certified = Tri::False;
            GroupElem gen = g.canonical_generators()[0];
            std::uint64_t ordr = 1;
            {
                // order of the generator's vertex permutation
                std::map<VertexId, VertexId> cur;
                for (VertexId v : a.graph().vertices()) cur[v] = a.apply(gen, v);
                std::map<VertexId, VertexId> acc = cur;
                auto is_id = [&](const std::map<VertexId, VertexId>& m) {
                    for (const auto& [v, w] : m)
                        if (v != w) return false;
                    return true;
                };
                while (!is_id(acc)) {
                    std::map<VertexId, VertexId> next;
                    for (const auto& [v, w] : acc) next[v] = cur.at(w);
                    acc = std::move(next);
                    ++ordr;
                }
            }
            out.note = "infinite: " + g.render(g.power(gen, static_cast<std::int64_t>(ordr))) +
                       " acts trivially, so the kernel of the vertex representation is infinite";
            return out;
        }
    }
    throw Error("unreachable");
}

// Elements g with supp and g(supp) intersecting. Exact for finite acting
// groups and for the simply transitive families; provably infinite otherwise.
struct OverlapSet {
    Tri finite_certified = Tri::Inconclusive;
    std::vector<GroupElem> elements;
    std::string note;
};

inline OverlapSet overlap_set(const GraphAction& a, const std::vector<VertexId>& supp) {
    for (VertexId v : supp) a.graph().require_vertex(v);
    std::vector<VertexId> e = supp;
    sort_unique(e);
    OverlapSet out;
    const Group& g = a.group();
    if (e.empty()) {
        out.finite_certified = Tri::True;
        out.note = "empty support never meets its translates";
        return out;
    }
    switch (a.family()) {
        case ActionFamily::Shift:
        case ActionFamily::LeftMult: {
            // g(u) = w pins g down in a simply transitive action.
            std::set<GroupElem> found;
            for (VertexId u : e)
                for (VertexId w : e) {
                    auto t = a.transporter(u, w);
                    if (t) found.insert(*t);
                }
            out.elements.assign(found.begin(), found.end());
            out.finite_certified = Tri::True;
            out.note = "exact: one transporter per ordered pair of support vertices";
            return out;
        }
        case ActionFamily::Finite: {
            if (!g.is_finite()) {
                auto iso = isotropy(a, e);
                out.finite_certified = Tri::False;
                out.note = iso.note;
                return out;
            }
            for (const auto& x : g.elements()) {
                bool meets = false;
                for (VertexId u : e) {
                    if (sorted_contains(e, a.apply(x, u))) {
                        meets = true;
                        break;
                    }
                }
                if (meets) out.elements.push_back(x);
            }
            sort_unique(out.elements);
            out.finite_certified = Tri::True;
            out.note = "exact: acting group enumerated";
            return out;
        }
    }
    throw Error("unreachable");
}

// Summary of the standing assumptions on an action, each with a certificate
// or witness. Fields are three-valued to keep bounded searches honest.
struct HypothesisReport {
    CheckedFlag free;
    CheckedFlag finite_isotropy;
    CheckedFlag fixes_star_implies_trivial;
    std::optional<std::uint64_t> orbit_count;
    std::string orbit_note;
};

inline HypothesisReport hypothesis_report(const GraphAction& a) {
    HypothesisReport out;
    const Group& g = a.group();
    switch (a.family()) {
        case ActionFamily::Shift:
            out.free = {Tri::True, "translations move every vertex of the line"};
            out.finite_isotropy = {Tri::True, "stabilizers are trivial in a free action"};
            out.fixes_star_implies_trivial = {Tri::True, "free action"};
            out.orbit_count = 1;
            out.orbit_note = "transitive by construction";
            return out;
        case ActionFamily::LeftMult:
            out.free = {Tri::True, "left multiplication on the tree is simply transitive"};
            out.finite_isotropy = {Tri::True, "stabilizers are trivial in a free action"};
            out.fixes_star_implies_trivial = {Tri::True, "free action"};
            out.orbit_count = 1;
            out.orbit_note = "transitive by construction";
            return out;
        case ActionFamily::Finite: {
            Orbits orb = orbits(a);
            out.orbit_count = orb.classes.size();
            out.orbit_note = "orbits enumerated";
            if (!g.is_finite()) {
                IsotropyResult iso = isotropy(a, {a.graph().vertices().front()});
                out.free = {Tri::False, iso.note};
                out.finite_isotropy = {Tri::False, iso.note};
                out.fixes_star_implies_trivial = {Tri::False, iso.note};
                return out;
            }
            out.free = {Tri::True, "no nonidentity element fixes a vertex"};
            for (const auto& x : g.elements()) {
                if (g.is_identity(x)) continue;
                for (VertexId v : a.graph().vertices()) {
                    if (a.apply(x, v) == v) {
                        out.free = {Tri::False, "element " + g.render(x) + " fixes vertex " + std::to_string(v)};
                        break;
                    }
                }
                if (out.free.value == Tri::False) break;
            }
            out.finite_isotropy = {Tri::True, "the acting group is finite"};
            out.fixes_star_implies_trivial = {Tri::True, "every star has trivial pointwise stabilizer"};
            for (VertexId v : a.graph().vertices()) {
                IsotropyResult iso = isotropy(a, a.graph().star(v));
                for (const auto& x : iso.pointwise) {
                    if (!g.is_identity(x)) {
                        out.fixes_star_implies_trivial =
                            {Tri::False, "element " + g.render(x) + " fixes the star of vertex " +
                                             std::to_string(v) + " pointwise"};
                        break;
                    }
                }
                if (out.fixes_star_implies_trivial.value == Tri::False) break;
            }
            return out;
        }
    }
    throw Error("unreachable");
}

// Quotient multigraph: one vertex per orbit (labelled by the least orbit
// member), one edge per orbit of unordered edges, becoming a loop when both
// endpoints fall in the same vertex orbit.
inline Multigraph quotient_graph(const GraphAction& a) {
    if (a.graph().is_finite()) {
        Orbits orb = orbits(a);
        std::map<VertexId, VertexId> rep_of;
        for (std::size_t i = 0; i < orb.classes.size(); ++i)
            for (VertexId v : orb.classes[i]) rep_of[v] = orb.reps[i];
        auto gens = a.group().generators();
        std::set<std::pair<VertexId, VertexId>> assigned;
        std::map<std::pair<VertexId, VertexId>, std::uint64_t> edges;
        for (VertexId v : a.graph().vertices()) {
            for (VertexId w : a.graph().link(v)) {
                if (w < v) continue;
                std::pair<VertexId, VertexId> e{v, w};
                if (assigned.count(e)) continue;
                std::set<std::pair<VertexId, VertexId>> cls{e};
                std::deque<std::pair<VertexId, VertexId>> queue{e};
                while (!queue.empty()) {
                    auto [x, y] = queue.front();
                    queue.pop_front();
                    for (const auto& s : gens) {
                        VertexId xs = a.apply(s, x);
                        VertexId ys = a.apply(s, y);
                        auto img = xs <= ys ? std::make_pair(xs, ys) : std::make_pair(ys, xs);
                        if (cls.insert(img).second) queue.push_back(img);
                    }
                }
                for (const auto& p : cls) assigned.insert(p);
                VertexId ra = rep_of.at(e.first);
                VertexId rb = rep_of.at(e.second);
                auto key = ra <= rb ? std::make_pair(ra, rb) : std::make_pair(rb, ra);
                edges[key] += 1;
            }
        }
        return Multigraph(orb.reps, edges);
    }
    // Simply transitive families: single vertex orbit at 0; edge orbits are
    // classified by the neighbours of 0 up to the pairing u ~ transporter
    // swap, and every class becomes a loop.
    std::map<std::pair<VertexId, VertexId>, std::uint64_t> edges;
    std::set<VertexId> remaining;
    for (VertexId u : a.graph().link(0)) remaining.insert(u);
    std::uint64_t classes = 0;
    while (!remaining.empty()) {
        VertexId u = *remaining.begin();
        remaining.erase(remaining.begin());
        auto t = a.transporter(0, u);
        if (t) {
            VertexId partner = a.apply(a.group().inverse(*t), 0);
            remaining.erase(partner);
        }
        ++classes;
    }
    edges[{0, 0}] = classes;
    return Multigraph({0}, edges);
}

// Wreath-style context: an action of G on the graph together with a fiber
// group H attached uniformly to every vertex.
class WreathContext {
public:
    WreathContext(GraphAction action, Group fiber)
        : action_(std::move(action)), product_(action_.graph(), std::move(fiber)) {}

    const GraphAction& action() const { return action_; }
    const Group& acting_group() const { return action_.group(); }
    const Group& fiber_group() const { return product_.uniform_group(); }
    const GraphProduct& product() const { return product_; }
    const Graph& graph() const { return action_.graph(); }

private:
    GraphAction action_;
    GraphProduct product_;
};

// Pair (h, g): a graph product word and an acting group element.
struct WreathElement {
    GPElement h;
    GroupElem g;
};

// Push a word through the action of g: each syllable moves from v to g(v).
inline GPElement sigma(const WreathContext& ctx, const GroupElem& g, const GPElement& h) {
    if (h.context().handle() != ctx.product().handle())
        throw DomainError("word does not belong to this context");
    return relabel(h, ctx.action().vertex_map(g));
}

inline WreathElement wreath_identity(const WreathContext& ctx) {
    return {GPElement::identity(ctx.product()), ctx.acting_group().identity()};
}

inline WreathElement wreath_multiply(const WreathContext& ctx, const WreathElement& a, const WreathElement& b) {
    return {multiply(a.h, sigma(ctx, a.g, b.h)), ctx.acting_group().product(a.g, b.g)};
}

inline WreathElement wreath_invert(const WreathContext& ctx, const WreathElement& a) {
    GroupElem ginv = ctx.acting_group().inverse(a.g);
    return {sigma(ctx, ginv, invert(a.h)), ginv};
}

inline bool wreath_equal(const WreathContext& ctx, const WreathElement& a, const WreathElement& b) {
    return a.h == b.h && ctx.acting_group().equal(a.g, b.g);
}

inline std::string wreath_render(const WreathContext& ctx, const WreathElement& z) {
    return gp_render(z.h) + " | " + ctx.acting_group().render(z.g);
}

// Literal "h | g" with h a word literal and g an element literal.
inline WreathElement wreath_parse(const WreathContext& ctx, const std::string& text) {
    std::size_t bar = text.find('|');
    if (bar == std::string::npos)
        throw ValidationError("expected \"word | element\", missing '|'");
    return {gp_parse(ctx.product(), text.substr(0, bar)),
            ctx.acting_group().parse(text.substr(bar + 1))};
}

} // namespace gwkit

#endif

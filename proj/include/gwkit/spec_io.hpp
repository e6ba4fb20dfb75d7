#ifndef GWKIT_SPEC_IO_HPP
#define GWKIT_SPEC_IO_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "action.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "util.hpp"

namespace gwkit {

using Json = nlohmann::json;

namespace detail {

inline const Json& json_field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline std::int64_t json_int(const Json& j, const std::string& key, const std::string& where) {
    const Json& f = json_field(j, key, where);
    if (!f.is_number_integer()) throw ValidationError(where + "." + key + ": expected an integer");
    return f.get<std::int64_t>();
}

inline std::string json_str(const Json& j, const std::string& key, const std::string& where) {
    const Json& f = json_field(j, key, where);
    if (!f.is_string()) throw ValidationError(where + "." + key + ": expected a string");
    return f.get<std::string>();
}

} // namespace detail

// Graph spec:
//   {"type":"finite","edges":[[0,1],...]}   optional "vertices":[...]
//   {"type":"cycle","n":5} | {"type":"path","n":4}
//   {"type":"tree","degree":3,"radius":2}
//   {"type":"line"} | {"type":"cayley_tree","rank":2}
inline Graph parse_graph_spec(const Json& j, const std::string& where = "graph") {
    std::string type = detail::json_str(j, "type", where);
    if (type == "finite") {
        const Json& edges = detail::json_field(j, "edges", where);
        if (!edges.is_array()) throw ValidationError(where + ".edges: expected an array of pairs");
        std::vector<std::pair<VertexId, VertexId>> e;
        for (const auto& pair : edges) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer())
                throw ValidationError(where + ".edges: each edge must be a pair of integers");
            e.emplace_back(pair[0].get<VertexId>(), pair[1].get<VertexId>());
        }
        std::vector<VertexId> verts;
        if (j.contains("vertices")) {
            const Json& vs = j.at("vertices");
            if (!vs.is_array()) throw ValidationError(where + ".vertices: expected an array of integers");
            for (const auto& v : vs) {
                if (!v.is_number_integer()) throw ValidationError(where + ".vertices: expected integers");
                verts.push_back(v.get<VertexId>());
            }
        }
        return Graph::finite_graph(e, verts);
    }
    if (type == "cycle") return Graph::cycle(detail::json_int(j, "n", where));
    if (type == "path") return Graph::path(detail::json_int(j, "n", where));
    if (type == "tree")
        return Graph::regular_tree(detail::json_int(j, "degree", where), detail::json_int(j, "radius", where));
    if (type == "line") return Graph::line();
    if (type == "cayley_tree") return Graph::cayley_tree(detail::json_int(j, "rank", where));
    throw ValidationError(where + ".type: unknown graph type \"" + type + "\"");
}

// Group spec:
//   {"type":"cyclic","n":4} | {"type":"integers"} | {"type":"free","rank":2}
//   {"type":"table","mul":[[...],...]}       optional "gens":[...]
//   {"type":"perm","degree":3,"gens":[[1,0,2],...]}
inline Group parse_group_spec(const Json& j, const std::string& where = "group") {
    std::string type = detail::json_str(j, "type", where);
    if (type == "cyclic") return Group::cyclic(detail::json_int(j, "n", where));
    if (type == "integers") return Group::integers();
    if (type == "free") return Group::free_group(detail::json_int(j, "rank", where));
    if (type == "table") {
        const Json& mul = detail::json_field(j, "mul", where);
        if (!mul.is_array()) throw ValidationError(where + ".mul: expected a square array");
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& row : mul) {
            if (!row.is_array()) throw ValidationError(where + ".mul: expected rows of integers");
            std::vector<std::int64_t> r;
            for (const auto& x : row) {
                if (!x.is_number_integer()) throw ValidationError(where + ".mul: expected integer entries");
                r.push_back(x.get<std::int64_t>());
            }
            rows.push_back(std::move(r));
        }
        std::vector<std::int64_t> gens;
        if (j.contains("gens")) {
            for (const auto& g : j.at("gens")) {
                if (!g.is_number_integer()) throw ValidationError(where + ".gens: expected integer indices");
                gens.push_back(g.get<std::int64_t>());
            }
        }
        return Group::table(rows, gens);
    }
    if (type == "perm") {
        std::int64_t degree = detail::json_int(j, "degree", where);
        const Json& gens = detail::json_field(j, "gens", where);
        if (!gens.is_array() || gens.empty())
            throw ValidationError(where + ".gens: expected a nonempty array of permutations");
        std::vector<std::vector<std::int64_t>> gs;
        for (const auto& g : gens) {
            if (!g.is_array()) throw ValidationError(where + ".gens: each generator must be an image list");
            std::vector<std::int64_t> p;
            for (const auto& x : g) {
                if (!x.is_number_integer()) throw ValidationError(where + ".gens: expected integer images");
                p.push_back(x.get<std::int64_t>());
            }
            gs.push_back(std::move(p));
        }
        return Group::perm(degree, gs);
    }
    throw ValidationError(where + ".type: unknown group type \"" + type + "\"");
}

// Action spec, relative to an already parsed group and graph:
//   {"generator_images":[[...],...]} | {"family":"shift"} | {"family":"left_mult"} | {"family":"trivial"}
// The spec may restate "group"/"graph"; they must then match the outer ones.
inline GraphAction parse_action_spec(const Json& j, const Group& group, const Graph& graph,
                                     const std::string& where = "action") {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    if (j.contains("generator_images")) {
        const Json& imgs = j.at("generator_images");
        if (!imgs.is_array()) throw ValidationError(where + ".generator_images: expected an array");
        std::vector<std::vector<VertexId>> images;
        for (const auto& img : imgs) {
            if (!img.is_array()) throw ValidationError(where + ".generator_images: expected image lists");
            std::vector<VertexId> m;
            for (const auto& x : img) {
                if (!x.is_number_integer())
                    throw ValidationError(where + ".generator_images: expected integer vertices");
                m.push_back(x.get<VertexId>());
            }
            images.push_back(std::move(m));
        }
        return GraphAction::finite(group, graph, images);
    }
    if (j.contains("family")) {
        std::string family = detail::json_str(j, "family", where);
        if (family == "shift") return GraphAction::shift(group, graph);
        if (family == "left_mult") return GraphAction::left_mult(group, graph);
        if (family == "trivial") return GraphAction::trivial(group, graph);
        throw ValidationError(where + ".family: unknown family \"" + family + "\"");
    }
    throw ValidationError(where + ": expected \"generator_images\" or \"family\"");
}

// Full run configuration. The graph is always required; groups and the
// action are optional and individual checks require the parts they use.
struct RunConfig {
    Graph graph = Graph::path(1);
    std::optional<Group> acting_group;
    std::optional<Group> fiber_group;
    std::optional<GraphAction> action;
    std::vector<std::string> suites;
    std::uint64_t samples = 1000;
    std::uint64_t radius = 4;
    std::uint64_t elem_radius = 2;
    std::uint64_t seed = 1;
    std::string out;
};

inline RunConfig parse_run_config(const Json& j) {
    if (!j.is_object()) throw ValidationError("config: expected a JSON object");
    RunConfig cfg;
    cfg.graph = parse_graph_spec(detail::json_field(j, "graph", "config"), "config.graph");
    if (j.contains("acting_group"))
        cfg.acting_group = parse_group_spec(j.at("acting_group"), "config.acting_group");
    if (j.contains("fiber_group"))
        cfg.fiber_group = parse_group_spec(j.at("fiber_group"), "config.fiber_group");
    if (j.contains("action")) {
        const Json& a = j.at("action");
        if (a.contains("group")) {
            if (j.contains("acting_group") && a.at("group") != j.at("acting_group"))
                throw ValidationError("config.action.group does not match config.acting_group");
            if (!cfg.acting_group) cfg.acting_group = parse_group_spec(a.at("group"), "config.action.group");
        }
        if (!cfg.acting_group) throw ValidationError("config.action: no acting group given");
        if (a.contains("graph") && a.at("graph") != j.at("graph"))
            throw ValidationError("config.action.graph does not match config.graph");
        cfg.action = parse_action_spec(a, *cfg.acting_group, cfg.graph, "config.action");
    }
    if (j.contains("suites")) {
        const Json& s = j.at("suites");
        if (!s.is_array()) throw ValidationError("config.suites: expected an array of names");
        for (const auto& name : s) {
            if (!name.is_string()) throw ValidationError("config.suites: expected strings");
            cfg.suites.push_back(name.get<std::string>());
        }
    }
    auto read_u64 = [&](const char* key, std::uint64_t& slot) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number_integer() || j.at(key).get<std::int64_t>() < 0)
            throw ValidationError(std::string("config.") + key + ": expected a nonnegative integer");
        slot = j.at(key).get<std::uint64_t>();
    };
    read_u64("samples", cfg.samples);
    read_u64("radius", cfg.radius);
    read_u64("elem_radius", cfg.elem_radius);
    read_u64("seed", cfg.seed);
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw ValidationError("config.out: expected a string path");
        cfg.out = j.at("out").get<std::string>();
    }
    return cfg;
}

} // namespace gwkit

#endif

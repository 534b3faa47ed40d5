#include "hasm/graph_json.hpp"

#include <algorithm>

namespace hasm {

using nlohmann::json;

nlohmann::json graph_to_json(const WeightedGraph& g) {
    // stable order: vertices by coordinate, edges by endpoint coordinates
    std::vector<int> order(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.vertex(a).pos < g.vertex(b).pos; });

    json verts = json::array();
    for (int i : order) {
        const auto& v = g.vertex(i);
        json jv{{"id", v.pos.str()}, {"x", v.pos.x}, {"y", v.pos.y}};
        jv["tags"] = v.tags;
        verts.push_back(jv);
    }
    std::vector<std::pair<std::pair<Coord, Coord>, const GraphEdge*>> es;
    for (const auto& e : g.edges()) {
        Coord p = g.vertex(e.u).pos, q = g.vertex(e.v).pos;
        if (q < p) std::swap(p, q);
        es.push_back({{p, q}, &e});
    }
    std::sort(es.begin(), es.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json edges = json::array();
    for (const auto& [pq, e] : es) {
        json je{{"u", pq.first.str()}, {"v", pq.second.str()}, {"w", e->w.str()}};
        je["tags"] = e->tags;
        edges.push_back(je);
    }
    return json{{"vertices", verts}, {"edges", edges}};
}

WeightedGraph graph_from_json(const nlohmann::json& j) {
    WeightedGraph g;
    for (const auto& jv : j.at("vertices")) {
        std::vector<std::string> tags;
        if (jv.contains("tags")) tags = jv["tags"].get<std::vector<std::string>>();
        g.add_vertex({jv.at("x").get<int>(), jv.at("y").get<int>()}, tags);
    }
    auto parse_coord = [](const std::string& s) {
        auto comma = s.find(',');
        return Coord{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
    };
    for (const auto& je : j.at("edges")) {
        std::vector<std::string> tags;
        if (je.contains("tags")) tags = je["tags"].get<std::vector<std::string>>();
        g.add_edge(parse_coord(je.at("u").get<std::string>()),
                   parse_coord(je.at("v").get<std::string>()),
                   Rational::parse(je.at("w").get<std::string>()), tags);
    }
    return g;
}

nlohmann::json trace_to_json(const ReductionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back(json{{"op", s.op},
                             {"params", s.params},
                             {"factor", s.factor.str()},
                             {"cumulative", s.cumulative.str()}});
    return json{{"n", t.n},
                {"steps", steps},
                {"cumulative", t.cumulative.str()},
                {"final_graph", graph_to_json(t.final_graph)}};
}

}  // namespace hasm

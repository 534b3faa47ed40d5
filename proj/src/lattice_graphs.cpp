#include "hasm/lattice_graphs.hpp"

#include <algorithm>
#include <stdexcept>

namespace hasm {

int WeightedGraph::add_vertex(Coord p, std::vector<std::string> tags) {
    if (index_.count(p)) throw std::invalid_argument("add_vertex: coordinate taken " + p.str());
    int id = (int)verts_.size();
    verts_.push_back({p, std::move(tags)});
    index_[p] = id;
    adj_.emplace_back();
    return id;
}

int WeightedGraph::ensure_vertex(Coord p) {
    auto it = index_.find(p);
    if (it != index_.end()) return it->second;
    return add_vertex(p);
}

void WeightedGraph::add_edge(int u, int v, const Rational& w, std::vector<std::string> tags) {
    if (u == v) throw std::invalid_argument("add_edge: loop");
    if (u > v) std::swap(u, v);
    if (edge_index_.count({u, v}))
        throw std::invalid_argument("add_edge: parallel edge " + verts_[u].pos.str() + " - " +
                                    verts_[v].pos.str());
    if (!(w > Rational(0))) throw std::invalid_argument("add_edge: nonpositive weight");
    int id = (int)edges_.size();
    edges_.push_back({u, v, w, std::move(tags)});
    edge_index_[{u, v}] = id;
    adj_[u].push_back({v, id});
    adj_[v].push_back({u, id});
}

void WeightedGraph::add_edge(Coord a, Coord b, const Rational& w, std::vector<std::string> tags) {
    add_edge(require_vertex(a), require_vertex(b), w, std::move(tags));
}

std::optional<int> WeightedGraph::find_vertex(Coord p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int WeightedGraph::require_vertex(Coord p) const {
    auto v = find_vertex(p);
    if (!v) throw std::invalid_argument("no vertex at " + p.str());
    return *v;
}

std::optional<int> WeightedGraph::find_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = edge_index_.find({u, v});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

const Rational& WeightedGraph::weight(int u, int v) const {
    auto e = find_edge(u, v);
    if (!e) throw std::invalid_argument("weight: no such edge");
    return edges_[*e].w;
}

void WeightedGraph::set_weight(int u, int v, const Rational& w) {
    auto e = find_edge(u, v);
    if (!e) throw std::invalid_argument("set_weight: no such edge");
    if (!(w > Rational(0))) throw std::invalid_argument("set_weight: nonpositive weight");
    edges_[*e].w = w;
}

void WeightedGraph::scale_incident_weights(int v, const Rational& lambda) {
    for (auto [u, e] : adj_[v]) edges_[e].w *= lambda;
}

std::vector<int> WeightedGraph::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(adj_[v].size());
    for (auto [u, e] : adj_[v]) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

WeightedGraph WeightedGraph::remove_vertices(const std::set<int>& dead) const {
    WeightedGraph g;
    std::vector<int> remap(verts_.size(), -1);
    for (int i = 0; i < (int)verts_.size(); ++i) {
        if (dead.count(i)) continue;
        remap[i] = g.add_vertex(verts_[i].pos, verts_[i].tags);
    }
    for (const auto& e : edges_) {
        if (remap[e.u] < 0 || remap[e.v] < 0) continue;
        g.add_edge(remap[e.u], remap[e.v], e.w, e.tags);
    }
    return g;
}

WeightedGraph WeightedGraph::translated(int dx, int dy) const {
    WeightedGraph g;
    for (const auto& v : verts_) g.add_vertex({v.pos.x + dx, v.pos.y + dy}, v.tags);
    for (const auto& e : edges_) g.add_edge(e.u, e.v, e.w, e.tags);
    return g;
}

WeightedGraph WeightedGraph::scaled(int factor) const {
    WeightedGraph g;
    for (const auto& v : verts_) g.add_vertex({v.pos.x * factor, v.pos.y * factor}, v.tags);
    for (const auto& e : edges_) g.add_edge(e.u, e.v, e.w, e.tags);
    return g;
}

void WeightedGraph::add_vertex_tag(int v, const std::string& tag) {
    verts_[v].tags.push_back(tag);
}

Coord WeightedGraph::bbox_min() const {
    if (verts_.empty()) return {0, 0};
    int mx = verts_[0].pos.x, my = verts_[0].pos.y;
    for (const auto& v : verts_) {
        mx = std::min(mx, v.pos.x);
        my = std::min(my, v.pos.y);
    }
    return {mx, my};
}

bool WeightedGraph::same_up_to_translation(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    Coord ma = a.bbox_min(), mb = b.bbox_min();
    int dx = ma.x - mb.x, dy = ma.y - mb.y;
    std::set<Coord> va, vb;
    for (const auto& v : a.verts_) va.insert(v.pos);
    for (const auto& v : b.verts_) vb.insert({v.pos.x + dx, v.pos.y + dy});
    if (va != vb) return false;
    std::map<std::pair<Coord, Coord>, Rational> ea, eb;
    auto key = [](Coord p, Coord q) {
        if (q < p) std::swap(p, q);
        return std::make_pair(p, q);
    };
    for (const auto& e : a.edges_) ea.emplace(key(a.verts_[e.u].pos, a.verts_[e.v].pos), e.w);
    for (const auto& e : b.edges_) {
        Coord p{b.verts_[e.u].pos.x + dx, b.verts_[e.u].pos.y + dy};
        Coord q{b.verts_[e.v].pos.x + dx, b.verts_[e.v].pos.y + dy};
        eb.emplace(key(p, q), e.w);
    }
    return ea == eb;
}

KeptPositions KeptPositions::of(std::vector<int> v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] >= v[i + 1]) throw std::invalid_argument("KeptPositions: not strictly increasing");
    if (!v.empty() && v.front() < 1) throw std::invalid_argument("KeptPositions: positions are 1-based");
    return KeptPositions{std::move(v)};
}

namespace {

struct SquareCoords {
    Coord L, T, R, B;
};

SquareCoords square_coords(int r, int c) {
    return {{2 * c - 2, -2 * r + 2}, {2 * c - 1, -2 * r + 3}, {2 * c, -2 * r + 2},
            {2 * c - 1, -2 * r + 1}};
}

void add_square(WeightedGraph& g, int r, int c, const Rational& w) {
    auto s = square_coords(r, c);
    std::string tag = "square:" + std::to_string(r) + "," + std::to_string(c);
    for (Coord p : {s.L, s.T, s.R, s.B}) g.ensure_vertex(p);
    g.add_edge(s.L, s.T, w, {tag});
    g.add_edge(s.T, s.R, w, {tag});
    g.add_edge(s.R, s.B, w, {tag});
    g.add_edge(s.B, s.L, w, {tag});
}

}  // namespace

WeightedGraph build_aztec_rectangle(int m, int k) {
    if (m < 1 || k < 1) throw std::invalid_argument("build_aztec_rectangle: m,k >= 1");
    WeightedGraph g;
    for (int r = 1; r <= m; ++r)
        for (int c = 1; c <= k; ++c) add_square(g, r, c, Rational(1));
    return g;
}

WeightedGraph build_aztec_rectangle_kept_bottom(int m, int k, const KeptPositions& xs) {
    WeightedGraph g = build_aztec_rectangle(m, k);
    if (!xs.xs.empty() && xs.xs.back() > k)
        throw std::invalid_argument("kept position beyond k");
    std::set<int> keep(xs.xs.begin(), xs.xs.end());
    std::set<int> dead;
    for (int p = 1; p <= k; ++p) {
        if (keep.count(p)) continue;
        dead.insert(g.require_vertex({2 * p - 1, -2 * m + 1}));
    }
    return g.remove_vertices(dead);
}

WeightedGraph build_teeth_region(int n) {
    if (n < 1) throw std::invalid_argument("build_teeth_region: n >= 1");
    std::vector<int> odds;
    for (int i = 1; i <= n; ++i) odds.push_back(2 * i - 1);
    return build_aztec_rectangle_kept_bottom(n, 2 * n - 1, KeptPositions::of(odds));
}

WeightedGraph build_gn(int n) {
    if (n < 1) throw std::invalid_argument("build_gn: n >= 1");
    WeightedGraph g;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= 2 * n; ++c)
            add_square(g, r, c, (r + c) % 2 == 0 ? Rational(1, 2) : Rational(1));
    for (int i = 1; i <= n; ++i) {
        Coord tooth{4 * i - 2, -2 * n};
        g.add_vertex(tooth, {"tooth"});
        g.add_edge(tooth, Coord{4 * i - 3, -2 * n + 1}, Rational(1));
        g.add_edge(tooth, Coord{4 * i - 1, -2 * n + 1}, Rational(1));
    }
    return g;
}

namespace {

Coord cell_center(int i, int j) { return {3 * j - 1, 3 - 3 * i}; }

}  // namespace

WeightedGraph build_fortress(int n, const BottomSpec& pending) {
    if (n < 1) throw std::invalid_argument("build_fortress: n >= 1");
    if ((int)pending.c.size() != n)
        throw std::invalid_argument("build_fortress: BottomSpec length != n");
    for (auto k : pending.c)
        if (k == BottomConstraint::Free)
            throw std::invalid_argument("build_fortress: every pending pair must be fixed");

    WeightedGraph g;
    // A pending pair is tied to the column sums: the bottom-row even cell of
    // the pair needs its downward edge exactly when its column sum is 1. For
    // odd n the even cells sit at odd positions (pair present when
    // c_i = n-1), for even n at even positions (pair present when c_i = n+1).
    auto pair_present = [&](int j) {  // pending pair covering column j
        BottomConstraint want = (n % 2 == 1) ? BottomConstraint::Low : BottomConstraint::High;
        return pending.c[(j - 1) / 2] == want;
    };

    // Even cells: inner diamond plus four unit connectors.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
            if ((i + j) % 2 != 0) continue;
            Coord c = cell_center(i, j);
            Coord W{c.x - 1, c.y}, N{c.x, c.y + 1}, E{c.x + 1, c.y}, S{c.x, c.y - 1};
            std::string tag = "cell:" + std::to_string(i) + "," + std::to_string(j);
            for (Coord p : {W, N, E, S}) g.ensure_vertex(p);
            g.add_edge(W, N, Rational(1), {tag});
            g.add_edge(N, E, Rational(1), {tag});
            g.add_edge(E, S, Rational(1), {tag});
            g.add_edge(S, W, Rational(1), {tag});
            // connectors; the south one on the bottom row is a pending edge
            g.ensure_vertex({c.x - 2, c.y});
            g.add_edge(W, Coord{c.x - 2, c.y}, Rational(1));
            g.ensure_vertex({c.x + 2, c.y});
            g.add_edge(E, Coord{c.x + 2, c.y}, Rational(1));
            g.ensure_vertex({c.x, c.y + 2});
            g.add_edge(N, Coord{c.x, c.y + 2}, Rational(1));
            if (i < n || pair_present(j)) {
                int pend = g.ensure_vertex({c.x, c.y - 2});
                if (i == n) g.add_vertex_tag(pend, "pending");
                g.add_edge(S, Coord{c.x, c.y - 2}, Rational(1));
            }
        }

    // Odd cells are plain diamonds on the connector endpoints of their even
    // neighbors; the bottom-row ones may carry a pending pendant edge.
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
            if ((i + j) % 2 == 0) continue;
            Coord c = cell_center(i, j);
            Coord W{c.x - 1, c.y}, N{c.x, c.y + 1}, E{c.x + 1, c.y}, S{c.x, c.y - 1};
            std::string tag = "cell:" + std::to_string(i) + "," + std::to_string(j);
            for (Coord p : {W, N, E, S}) g.ensure_vertex(p);
            g.add_edge(W, N, Rational(1), {tag});
            g.add_edge(N, E, Rational(1), {tag});
            g.add_edge(E, S, Rational(1), {tag});
            g.add_edge(S, W, Rational(1), {tag});
            if (i == n && pair_present(j)) {
                int pend = g.add_vertex({c.x, c.y - 2}, {"pending"});
                g.add_edge(g.require_vertex(S), pend, Rational(1));
            }
        }
    return g;
}

WeightedGraph normalize_fortress_bottom(const WeightedGraph& g0) {
    WeightedGraph g = g0;
    // Recover the cell grid from the edge tags, then give every bottom-row
    // even cell that lacks a downward edge a forced two-vertex pendant path.
    int n_rows = 0, n_cols = 0;
    for (const auto& e : g.edges())
        for (const auto& tag : e.tags) {
            if (tag.rfind("cell:", 0) != 0) continue;
            auto comma = tag.find(',');
            int i = std::stoi(tag.substr(5, comma - 5));
            int j = std::stoi(tag.substr(comma + 1));
            n_rows = std::max(n_rows, i);
            n_cols = std::max(n_cols, j);
        }
    if (n_rows == 0) throw std::invalid_argument("normalize_fortress_bottom: not a fortress");
    for (int j = 1; j <= n_cols; ++j) {
        if ((n_rows + j) % 2 != 0) continue;
        Coord c = cell_center(n_rows, j);
        Coord S{c.x, c.y - 1};
        if (g.find_vertex({c.x, c.y - 2})) continue;
        g.add_vertex({c.x, c.y - 2});
        g.add_vertex({c.x, c.y - 3});
        g.add_edge(S, Coord{c.x, c.y - 2}, Rational(1));
        g.add_edge(Coord{c.x, c.y - 2}, Coord{c.x, c.y - 3}, Rational(1));
    }
    return g;
}

WeightedGraph mirror(const WeightedGraph& g) {
    Coord mn = g.bbox_min();
    int mx = mn.x;
    for (const auto& v : g.vertices()) mx = std::max(mx, v.pos.x);
    WeightedGraph out;
    for (const auto& v : g.vertices()) out.add_vertex({mn.x + mx - v.pos.x, v.pos.y}, v.tags);
    for (const auto& e : g.edges()) out.add_edge(e.u, e.v, e.w, e.tags);
    return out;
}

}  // namespace hasm

#include "hasm/renewal.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hasm/formulas.hpp"

namespace hasm {

namespace {

struct RawSite {
    RenewalSite s;
    Coord center;  // 4 * center actually (sum of inner coords)
};

// compass role assignment; returns false when the cycle is not a proper
// diamond (no strict extremes)
bool assign_roles(const WeightedGraph& g, const std::array<int, 4>& cyc, RenewalSite& out) {
    int w = -1, n = -1, e = -1, s = -1;
    for (int v : cyc) {
        bool minx = true, maxx = true, miny = true, maxy = true;
        for (int u : cyc) {
            if (u == v) continue;
            if (g.vertex(u).pos.x <= g.vertex(v).pos.x) minx = false;
            if (g.vertex(u).pos.x >= g.vertex(v).pos.x) maxx = false;
            if (g.vertex(u).pos.y <= g.vertex(v).pos.y) miny = false;
            if (g.vertex(u).pos.y >= g.vertex(v).pos.y) maxy = false;
        }
        if (minx) w = v;
        if (maxx) e = v;
        if (miny) s = v;
        if (maxy) n = v;
    }
    if (w < 0 || n < 0 || e < 0 || s < 0) return false;
    std::set<int> roles{w, n, e, s};
    if (roles.size() != 4) return false;
    // cycle edges must be exactly w-n, n-e, e-s, s-w
    if (!g.has_edge(w, n) || !g.has_edge(n, e) || !g.has_edge(e, s) || !g.has_edge(s, w))
        return false;
    out.w = w;
    out.n = n;
    out.e = e;
    out.s = s;
    return true;
}

std::vector<RawSite> raw_renewal_sites(const WeightedGraph& g) {
    std::vector<RawSite> sites;
    int nv = g.vertex_count();
    std::set<std::array<int, 4>> seen;
    for (int a = 0; a < nv; ++a) {
        auto nbrs = g.neighbors(a);
        for (size_t i = 0; i < nbrs.size(); ++i)
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                int b = nbrs[i], d = nbrs[j];
                if (b < a || d < a) continue;  // a is the smallest id on the cycle
                for (int c : g.neighbors(b)) {
                    if (c == a || c <= a) continue;
                    if (!g.has_edge(c, d)) continue;
                    std::array<int, 4> key{a, std::min(b, d), c, std::max(b, d)};
                    std::array<int, 4> cyc{a, b, c, d};
                    if (seen.count(key)) continue;
                    seen.insert(key);
                    bool ok = true;
                    for (int v : cyc)
                        if (g.degree(v) != 3) ok = false;
                    if (!ok) continue;
                    RenewalSite site{};
                    if (!assign_roles(g, cyc, site)) continue;
                    // each inner's third edge is its attachment
                    auto outer_of = [&](int inner, int c1, int c2) -> int {
                        for (int u : g.neighbors(inner))
                            if (u != c1 && u != c2) return u;
                        return -1;
                    };
                    site.ow = outer_of(site.w, site.n, site.s);
                    site.on = outer_of(site.n, site.w, site.e);
                    site.oe = outer_of(site.e, site.n, site.s);
                    site.os = outer_of(site.s, site.w, site.e);
                    std::set<int> outs{site.ow, site.on, site.oe, site.os};
                    if (outs.size() != 4 || outs.count(-1)) continue;
                    std::set<int> inners{site.w, site.n, site.e, site.s};
                    bool disjoint = true;
                    for (int o : outs)
                        if (inners.count(o)) disjoint = false;
                    if (!disjoint) continue;
                    if (!g.weight(site.w, site.ow).is_one() || !g.weight(site.n, site.on).is_one() ||
                        !g.weight(site.e, site.oe).is_one() || !g.weight(site.s, site.os).is_one())
                        continue;
                    Coord ctr{g.vertex(site.w).pos.x + g.vertex(site.n).pos.x +
                                  g.vertex(site.e).pos.x + g.vertex(site.s).pos.x,
                              g.vertex(site.w).pos.y + g.vertex(site.n).pos.y +
                                  g.vertex(site.e).pos.y + g.vertex(site.s).pos.y};
                    sites.push_back({site, ctr});
                }
            }
    }
    std::sort(sites.begin(), sites.end(), [](const RawSite& x, const RawSite& y) {
        if (x.center.y != y.center.y) return x.center.y > y.center.y;
        return x.center.x < y.center.x;
    });
    return sites;
}

}  // namespace

std::vector<RenewalSite> find_renewal_sites(const WeightedGraph& g) {
    auto raw = raw_renewal_sites(g);
    std::vector<RenewalSite> chosen;
    std::set<int> chosen_inner, chosen_all;
    for (const auto& rs : raw) {
        std::array<int, 4> inners{rs.s.w, rs.s.n, rs.s.e, rs.s.s};
        std::array<int, 8> all{rs.s.w,  rs.s.n,  rs.s.e,  rs.s.s,
                               rs.s.ow, rs.s.on, rs.s.oe, rs.s.os};
        bool clash = false;
        for (int v : all)
            if (chosen_inner.count(v)) clash = true;
        for (int v : inners)
            if (chosen_all.count(v)) clash = true;
        if (clash) continue;
        chosen.push_back(rs.s);
        for (int v : inners) chosen_inner.insert(v);
        for (int v : all) chosen_all.insert(v);
    }
    return chosen;
}

std::optional<RenewalSite> find_site_with_north(const WeightedGraph& g, Coord north_inner) {
    auto raw = raw_renewal_sites(g);
    std::optional<RenewalSite> found;
    for (const auto& rs : raw) {
        if (!(g.vertex(rs.s.n).pos == north_inner)) continue;
        if (found) throw std::logic_error("find_site_with_north: ambiguous at " + north_inner.str());
        found = rs.s;
    }
    return found;
}

std::pair<WeightedGraph, Rational> apply_urban_renewal(const WeightedGraph& g,
                                                       const RenewalSite& site) {
    std::array<int, 4> inners{site.w, site.n, site.e, site.s};
    std::array<int, 4> outers{site.ow, site.on, site.oe, site.os};
    for (int v : inners)
        if (g.degree(v) != 3)
            throw std::invalid_argument("urban renewal: inner vertex degree != 3");
    std::set<int> outs(outers.begin(), outers.end());
    if (outs.size() != 4)
        throw std::invalid_argument("urban renewal: degenerate site (shared outer vertices)");
    for (int o : outers)
        for (int i : inners)
            if (o == i) throw std::invalid_argument("urban renewal: outer coincides with inner");
    for (auto [x, y] : std::initializer_list<std::pair<int, int>>{
             {site.ow, site.on}, {site.on, site.oe}, {site.oe, site.os}, {site.os, site.ow}})
        if (g.has_edge(x, y))
            throw std::invalid_argument(
                "urban renewal: outer vertices already adjacent (degenerate site)");
    for (auto [i, o] : std::initializer_list<std::pair<int, int>>{
             {site.w, site.ow}, {site.n, site.on}, {site.e, site.oe}, {site.s, site.os}})
        if (!g.weight(i, o).is_one())
            throw std::invalid_argument("urban renewal: attachment edge weight != 1");

    Rational a = g.weight(site.w, site.n);
    Rational d = g.weight(site.n, site.e);
    Rational c = g.weight(site.e, site.s);
    Rational b = g.weight(site.s, site.w);
    Rational delta = a * c + b * d;

    std::set<int> dead(inners.begin(), inners.end());
    WeightedGraph out = g.remove_vertices(dead);
    auto remap = [&](int old) {
        int shift = 0;
        for (int dd : dead)
            if (dd < old) ++shift;
        return old - shift;
    };
    out.add_edge(remap(site.ow), remap(site.on), c / delta);
    out.add_edge(remap(site.on), remap(site.oe), b / delta);
    out.add_edge(remap(site.oe), remap(site.os), a / delta);
    out.add_edge(remap(site.os), remap(site.ow), d / delta);
    return {out, delta};
}

WeightedGraph split_vertex_three(const WeightedGraph& g, int v, const std::vector<int>& side_a,
                                 Coord pos_a, Coord pos_mid, Coord pos_b) {
    std::set<int> aset(side_a.begin(), side_a.end());
    auto nbrs = g.neighbors(v);
    std::set<int> nset(nbrs.begin(), nbrs.end());
    for (int u : side_a)
        if (!nset.count(u)) throw std::invalid_argument("split_vertex_three: side_a not incident");
    struct Old {
        Coord to;
        Rational w;
        bool side_a;
    };
    std::vector<Old> old_edges;
    for (int u : nbrs) old_edges.push_back({g.vertex(u).pos, g.weight(v, u), aset.count(u) > 0});

    WeightedGraph out = g.remove_vertices({v});
    int ia = out.add_vertex(pos_a);
    int im = out.add_vertex(pos_mid);
    int ib = out.add_vertex(pos_b);
    out.add_edge(ia, im, Rational(1));
    out.add_edge(im, ib, Rational(1));
    for (const auto& oe : old_edges)
        out.add_edge(out.vertex(oe.side_a ? ia : ib).pos, oe.to, oe.w);
    return out;
}

std::pair<WeightedGraph, Rational> gauge_scale_vertex(const WeightedGraph& g, int v,
                                                      const Rational& lambda) {
    if (!lambda.is_positive()) throw std::invalid_argument("gauge_scale_vertex: lambda <= 0");
    WeightedGraph out = g;
    out.scale_incident_weights(v, lambda);
    return {out, lambda.inverse()};
}

StripResult strip_forced_edges(const WeightedGraph& g) {
    StripResult res{g, Rational(1), false};
    for (;;) {
        int leaf = -1;
        for (int v = 0; v < res.graph.vertex_count(); ++v) {
            if (res.graph.degree(v) == 0) {
                res.unmatchable = true;
                return res;
            }
            if (res.graph.degree(v) != 1) continue;
            if (leaf < 0 || res.graph.vertex(v).pos < res.graph.vertex(leaf).pos) leaf = v;
        }
        if (leaf < 0) return res;
        int nb = res.graph.neighbors(leaf)[0];
        res.factor *= res.graph.weight(leaf, nb);
        res.graph = res.graph.remove_vertices({leaf, nb});
        if (res.graph.vertex_count() == 0) return res;
    }
}

WeightedGraph fill_dents(const WeightedGraph& g, const DentFill& fill) {
    WeightedGraph out = g;
    std::set<Coord> fresh;
    for (Coord p : fill.vertices) {
        if (out.find_vertex(p))
            throw std::invalid_argument("fill_dents: vertex already present at " + p.str());
        out.add_vertex(p);
        fresh.insert(p);
    }
    for (auto [p, q] : fill.edges) out.add_edge(p, q, Rational(1));

    Rational before = matching_sum_pfaffian(g);
    Rational after = matching_sum_pfaffian(out);
    if (before != after)
        throw std::invalid_argument("fill_dents: added structure changes M from " + before.str() +
                                    " to " + after.str());
    if (out.vertex_count() <= 34) {
        // the added vertices must pair internally, the same way in every
        // perfect matching
        auto pms = enumerate_matchings(out);
        std::vector<std::pair<int, int>> canon;
        bool first = true;
        for (const auto& pm : pms) {
            std::vector<std::pair<int, int>> cover;
            for (auto [u, v] : pm) {
                bool nu = fresh.count(out.vertex(u).pos) > 0;
                bool nv = fresh.count(out.vertex(v).pos) > 0;
                if (nu != nv)
                    throw std::invalid_argument("fill_dents: added vertex matched externally");
                if (nu && nv) cover.push_back({u, v});
            }
            std::sort(cover.begin(), cover.end());
            if (first) {
                canon = cover;
                first = false;
            } else if (canon != cover) {
                throw std::invalid_argument("fill_dents: internal pairing not unique");
            }
        }
    }
    return out;
}

std::pair<WeightedGraph, Rational> scale_edge_class(
    const WeightedGraph& g, const std::function<bool(const WeightedGraph&, const GraphEdge&)>& cls,
    const Rational& lambda, long count_per_matching) {
    if (!lambda.is_positive()) throw std::invalid_argument("scale_edge_class: lambda <= 0");
    // the oracle check: every perfect matching hits the class exactly
    // count_per_matching times
    auto pms = enumerate_matchings(g);
    for (const auto& pm : pms) {
        long cnt = 0;
        for (auto [u, v] : pm) {
            const auto& e = g.edge(*g.find_edge(u, v));
            if (cls(g, e)) ++cnt;
        }
        if (cnt != count_per_matching)
            throw std::invalid_argument("scale_edge_class: a matching contains " +
                                        std::to_string(cnt) + " class edges, expected " +
                                        std::to_string(count_per_matching));
    }
    WeightedGraph out = g;
    for (int i = 0; i < out.edge_count(); ++i) {
        const auto& e = out.edge(i);
        if (cls(out, e)) out.set_weight(e.u, e.v, e.w / lambda);
    }
    return {out, rat_pow(lambda, (unsigned long)count_per_matching)};
}

// ---------------------------------------------------------------------------
// The scripted G_n reduction.

namespace {

std::string coord_params(const char* key, Coord p) {
    return std::string(key) + "=(" + p.str() + ")";
}

struct Pipeline {
    int n;
    VerifyLevel lvl;
    WeightedGraph g;
    ReductionTrace trace;
    Rational m_current;  // maintained under Steps verification

    Pipeline(int n_, VerifyLevel lvl_, WeightedGraph g0) : n(n_), lvl(lvl_), g(std::move(g0)) {
        trace.n = n;
        trace.cumulative = Rational(1);
        if (lvl == VerifyLevel::Steps) m_current = matching_sum_pfaffian(g);
    }

    void step(const std::string& op, const std::string& params, const Rational& factor,
              WeightedGraph next) {
        if (lvl == VerifyLevel::Steps) {
            Rational m_next = matching_sum_pfaffian(next);
            if (m_current != factor * m_next)
                throw std::logic_error("reduce_gn_once: step '" + op + " " + params +
                                       "' breaks M: " + m_current.str() + " != " + factor.str() +
                                       " * " + m_next.str());
            m_current = m_next;
        }
        g = std::move(next);
        trace.cumulative *= factor;
        trace.steps.push_back({op, params, factor, trace.cumulative});
    }

    // coordinate relabel: identical graph, new embedding
    void relabel(const std::string& params, const std::map<Coord, Coord>& moves) {
        WeightedGraph out;
        for (const auto& v : g.vertices()) {
            auto it = moves.find(v.pos);
            out.add_vertex(it == moves.end() ? v.pos : it->second, v.tags);
        }
        for (const auto& e : g.edges()) out.add_edge(e.u, e.v, e.w, e.tags);
        step("relabel_coords", params, Rational(1), std::move(out));
    }

    void scale_step(int f) { step("scale_coords", "factor=" + std::to_string(f), Rational(1), g.scaled(f)); }

    void descale_step() {
        WeightedGraph out;
        for (const auto& v : g.vertices()) {
            if (v.pos.x % 2 != 0 || v.pos.y % 2 != 0)
                throw std::logic_error("reduce_gn_once: descale hit odd coordinate " + v.pos.str());
            out.add_vertex({v.pos.x / 2, v.pos.y / 2}, v.tags);
        }
        for (const auto& e : g.edges()) out.add_edge(e.u, e.v, e.w, e.tags);
        step("scale_coords", "factor=1/2", Rational(1), std::move(out));
    }

    void split_step(Coord p, const std::vector<int>& side_a, Coord a, Coord mid, Coord b) {
        int v = g.require_vertex(p);
        auto next = split_vertex_three(g, v, side_a, a, mid, b);
        step("split_vertex", coord_params("v", p), Rational(1), std::move(next));
    }

    Rational renew_at_north(Coord north_inner) {
        auto site = find_site_with_north(g, north_inner);
        if (!site)
            throw std::logic_error("reduce_gn_once: no renewal site with north inner at " +
                                   north_inner.str());
        auto [next, factor] = apply_urban_renewal(g, *site);
        step("urban_renewal", coord_params("north", north_inner), factor, std::move(next));
        return factor;
    }

    void strip_step() {
        auto res = strip_forced_edges(g);
        if (res.unmatchable) throw std::logic_error("reduce_gn_once: strip found M = 0");
        if (res.factor != Rational(1))
            throw std::logic_error("reduce_gn_once: strip factor " + res.factor.str() +
                                   ", expected 1");
        step("strip_forced", "", res.factor, std::move(res.graph));
    }

    void checkpoint(const Rational& m_start, const char* where) {
        if (lvl == VerifyLevel::None) return;
        Rational m_here = matching_sum_pfaffian(g);
        if (m_start != trace.cumulative * m_here)
            throw std::logic_error(std::string("reduce_gn_once: M invariant broken at ") + where);
    }
};

std::vector<int> neighbors_by_direction(const WeightedGraph& g, int v, bool horizontal) {
    std::vector<int> side_a;
    Coord p = g.vertex(v).pos;
    for (int u : g.neighbors(v)) {
        Coord q = g.vertex(u).pos;
        int delta = horizontal ? q.x - p.x : q.y - p.y;
        if (delta == 0)
            throw std::logic_error("reduce_gn_once: ambiguous split direction at " + p.str());
        if (delta < 0) side_a.push_back(u);
    }
    return side_a;
}

}  // namespace

ReductionTrace reduce_gn_once(int n, VerifyLevel lvl) {
    if (n < 2) throw std::invalid_argument("reduce_gn_once: n >= 2");
    WeightedGraph g0 = build_gn(n);
    Rational m_start = (lvl == VerifyLevel::None) ? Rational(0) : matching_sum_pfaffian(g0);

    Pipeline pl(n, lvl, g0);

    // ---- phase 1: triple, renew every square, strip ----
    pl.scale_step(2);

    {
        // snapshot of the scaled G_n vertices
        struct Item {
            Coord p;
            bool tooth;
        };
        std::vector<Item> items;
        for (const auto& v : pl.g.vertices()) {
            bool tooth = false;
            for (const auto& t : v.tags)
                if (t == "tooth") tooth = true;
            items.push_back({v.pos, tooth});
        }
        std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.p < b.p; });
        for (const auto& it : items) {
            Coord p = it.p;
            if (it.tooth) {
                int v = pl.g.require_vertex(p);
                pl.split_step(p, neighbors_by_direction(pl.g, v, true), {p.x - 1, p.y}, p,
                              {p.x + 1, p.y});
                continue;
            }
            int xm = ((p.x % 4) + 4) % 4;
            if (p.y == 2 - 4 * n && xm == 2) continue;  // bottom peaks stay intact
            int v = pl.g.require_vertex(p);
            if (xm == 0)  // side vertex: left edges / right edges
                pl.split_step(p, neighbors_by_direction(pl.g, v, true), {p.x - 1, p.y}, p,
                              {p.x + 1, p.y});
            else  // peak: lower edges / upper edges
                pl.split_step(p, neighbors_by_direction(pl.g, v, false), {p.x, p.y - 1}, p,
                              {p.x, p.y + 1});
        }
    }

    {
        Rational prod(1);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= 2 * n; ++c)
                prod *= pl.renew_at_north({4 * c - 2, -4 * r + 5});
        if (prod != Rational(1))
            throw std::logic_error("reduce_gn_once: first renewal pass factor " + prod.str());
    }

    {
        // teeth copies become the bottom corners of the renewed lattice
        std::map<Coord, Coord> moves;
        for (int i = 1; i <= n; ++i) {
            moves[{8 * i - 5, -4 * n}] = {8 * i - 6, -4 * n + 2};
            moves[{8 * i - 3, -4 * n}] = {8 * i - 2, -4 * n + 2};
        }
        pl.relabel("teeth", moves);
    }

    pl.strip_step();
    pl.descale_step();
    pl.checkpoint(m_start, "after first renewal pass");

    // ---- fill the bottom dents ----
    for (int i = 1; i < n; ++i) {
        Coord F{4 * i, -2 * n - 1}, leaf{4 * i, -2 * n};
        DentFill fill;
        fill.vertices = {F, leaf};
        fill.edges = {{F, Coord{4 * i - 1, 1 - 2 * n}}, {F, Coord{4 * i + 1, 1 - 2 * n}}, {F, leaf}};
        WeightedGraph next = fill_dents(pl.g, fill);
        pl.step("fill_dents", coord_params("at", leaf), Rational(1), std::move(next));
    }
    pl.checkpoint(m_start, "after dent filling");

    // ---- phase 2: triple and renew the dual squares ----
    std::set<Coord> skip;
    for (int i = 1; i < n; ++i) {
        skip.insert({4 * i, -2 * n - 1});
        skip.insert({4 * i, -2 * n});
    }
    {
        std::vector<Coord> items;
        for (const auto& v : pl.g.vertices())
            if (!skip.count(v.pos)) items.push_back(v.pos);
        std::sort(items.begin(), items.end());
        pl.scale_step(2);
        for (Coord up : items) {
            Coord p{2 * up.x, 2 * up.y};
            int v = pl.g.require_vertex(p);
            bool even_even = (up.x % 2 == 0) && (up.y % 2 == 0);
            bool odd_odd = (up.x % 2 != 0) && (up.y % 2 != 0);
            if (even_even)  // lattice vertex of the first dual: split vertically
                pl.split_step(p, neighbors_by_direction(pl.g, v, false), {p.x, p.y - 1}, p,
                              {p.x, p.y + 1});
            else if (odd_odd)
                pl.split_step(p, neighbors_by_direction(pl.g, v, true), {p.x - 1, p.y}, p,
                              {p.x + 1, p.y});
            else
                throw std::logic_error("reduce_gn_once: unclassified vertex at " + p.str());
        }
    }

    {
        Rational prod(1);
        for (int r = 1; r <= n; ++r)
            for (int a = 1; a <= 2 * n - 1; ++a)
                prod *= pl.renew_at_north({4 * a, 3 - 4 * r});
        Rational expected = rat_pow(Rational(5, 4), (unsigned long)((n - 1) * (2 * n - 1))) *
                            rat_pow(Rational(3, 2), (unsigned long)(2 * n - 1));
        if (prod != expected)
            throw std::logic_error("reduce_gn_once: second renewal pass factor " + prod.str() +
                                   ", expected " + expected.str());
    }
    pl.checkpoint(m_start, "after second renewal pass");

    // ---- paired gauge rescaling at the dent corners ----
    {
        // identify the marks first, on the pre-gauge weights
        std::vector<std::pair<Coord, Rational>> marks;  // (vertex, lambda)
        for (int i = 1; i < n; ++i) {
            Coord leaf{8 * i, -4 * n};
            int lv = pl.g.require_vertex(leaf);
            auto nb = pl.g.neighbors(lv);
            if (nb.size() != 2) throw std::logic_error("reduce_gn_once: dent corner degree != 2");
            Rational w0 = pl.g.weight(lv, nb[0]);
            Rational w1 = pl.g.weight(lv, nb[1]);
            int heavy;  // the neighbor joined by the weight-2/3 edge
            if (w0 == Rational(2, 3) && w1 == Rational(1, 3))
                heavy = nb[0];
            else if (w1 == Rational(2, 3) && w0 == Rational(1, 3))
                heavy = nb[1];
            else
                throw std::logic_error("reduce_gn_once: dent corner weights " + w0.str() + "," +
                                       w1.str());
            marks.push_back({leaf, Rational(2)});
            marks.push_back({pl.g.vertex(heavy).pos, Rational(1, 2)});
        }
        Rational net(1);
        for (auto& [p, lambda] : marks) {
            auto [next, factor] = gauge_scale_vertex(pl.g, pl.g.require_vertex(p), lambda);
            net *= factor;
            pl.step("gauge_scale", coord_params("v", p) + " lambda=" + lambda.str(), factor,
                    std::move(next));
        }
        if (net != Rational(1))
            throw std::logic_error("reduce_gn_once: gauge net factor " + net.str());
    }

    pl.strip_step();
    pl.descale_step();
    pl.checkpoint(m_start, "after gauge and strip");

    // ---- rescale the two weight classes ----
    {
        auto cls_third = [](const WeightedGraph& gg, const GraphEdge& e) {
            return e.w == Rational(2, 3) || e.w == Rational(1, 3);
        };
        auto [g1, f1] =
            scale_edge_class(pl.g, cls_third, Rational(2, 3), 2L * n - 2);
        pl.step("scale_edge_class", "class=thirds lambda=2/3", f1, std::move(g1));

        auto cls_fifth = [](const WeightedGraph& gg, const GraphEdge& e) {
            return e.w == Rational(4, 5) || e.w == Rational(2, 5);
        };
        auto [g2, f2] =
            scale_edge_class(pl.g, cls_fifth, Rational(4, 5), 2L * (n - 1) * (n - 1));
        pl.step("scale_edge_class", "class=fifths lambda=4/5", f2, std::move(g2));
    }

    for (const auto& e : pl.g.edges())
        if (!(e.w == Rational(1) || e.w == Rational(1, 2)))
            throw std::logic_error("reduce_gn_once: leftover weight " + e.w.str());

    // ---- land on the canonical mirror image of G_{n-1} ----
    WeightedGraph target = mirror(build_gn(n - 1));
    {
        Coord want = target.bbox_min();
        Coord have = pl.g.bbox_min();
        pl.step("translate", "to-canonical", Rational(1),
                pl.g.translated(want.x - have.x, want.y - have.y));
    }
    if (!WeightedGraph::same_up_to_translation(pl.g, target))
        throw std::logic_error("reduce_gn_once: final graph is not mirror(G_{n-1})");
    Rational expect_total = gn_recursion_ratio(n);
    if (pl.trace.cumulative != expect_total)
        throw std::logic_error("reduce_gn_once: cumulative factor " + pl.trace.cumulative.str() +
                               ", expected " + expect_total.str());
    pl.checkpoint(m_start, "final");

    pl.trace.final_graph = pl.g;
    return pl.trace;
}

}  // namespace hasm

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hasm/bijections.hpp"
#include "hasm/formulas.hpp"
#include "hasm/renewal.hpp"

using namespace hasm;

namespace {

// inner diamond with four weight-1 attachments; the outers are joined into a
// ring through corner vertices, so no two outers are adjacent and the host
// has plenty of matchings
WeightedGraph renewal_host(const Rational& a, const Rational& b, const Rational& c,
                           const Rational& d, std::mt19937* rng = nullptr) {
    WeightedGraph g;
    Coord W{-1, 0}, N{0, 1}, E{1, 0}, S{0, -1};
    Coord oW{-3, 0}, oN{0, 3}, oE{3, 0}, oS{0, -3};
    Coord r1{-3, 3}, r2{3, 3}, r3{3, -3}, r4{-3, -3};
    for (Coord p : {W, N, E, S, oW, oN, oE, oS, r1, r2, r3, r4}) g.add_vertex(p);
    g.add_edge(W, N, a);
    g.add_edge(N, E, d);
    g.add_edge(E, S, c);
    g.add_edge(S, W, b);
    g.add_edge(W, oW, Rational(1));
    g.add_edge(N, oN, Rational(1));
    g.add_edge(E, oE, Rational(1));
    g.add_edge(S, oS, Rational(1));
    auto rw = [&]() {
        if (!rng) return Rational(1);
        std::uniform_int_distribution<long> dd(1, 10);
        return Rational(dd(*rng), dd(*rng));
    };
    for (auto [x, y] : {std::pair{oW, r1}, {r1, oN}, {oN, r2}, {r2, oE},
                        {oE, r3}, {r3, oS}, {oS, r4}, {r4, oW}})
        g.add_edge(x, y, rw());
    return g;
}

Rational rnd(std::mt19937& rng) {
    std::uniform_int_distribution<long> d(1, 10);
    return Rational(d(rng), d(rng));
}

}  // namespace

TEST_CASE("site discovery") {
    auto host = renewal_host(Rational(1), Rational(1), Rational(1), Rational(1));
    auto sites = find_renewal_sites(host);
    REQUIRE(sites.size() == 1);
    CHECK(host.vertex(sites[0].w).pos == Coord{-1, 0});
    CHECK(host.vertex(sites[0].on).pos == Coord{0, 3});

    // a bare 4-cycle has no attachments, hence no site
    CHECK(find_renewal_sites(build_aztec_rectangle(1, 1)).empty());

    // the normalized 3x6 fortress exposes exactly the nine even cells
    auto fort = normalize_fortress_bottom(
        build_fortress(3, BottomSpec{{BottomConstraint::Low, BottomConstraint::Low,
                                      BottomConstraint::High}}));
    auto fsites = find_renewal_sites(fort);
    CHECK(fsites.size() == 9);
}

TEST_CASE("urban renewal weight transform and factor") {
    auto host = renewal_host(Rational(1), Rational(1), Rational(1), Rational(1));
    auto sites = find_renewal_sites(host);
    auto [g2, factor] = apply_urban_renewal(host, sites[0]);
    CHECK(factor == Rational(2));
    // all four new edges carry weight 1/2
    int ow = g2.require_vertex({-3, 0}), on = g2.require_vertex({0, 3});
    CHECK(g2.weight(ow, on) == Rational(1, 2));
    CHECK(matching_sum_bruteforce(host) == factor * matching_sum_bruteforce(g2));

    auto host_half =
        renewal_host(Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2));
    auto [g3, f3] = apply_urban_renewal(host_half, find_renewal_sites(host_half)[0]);
    CHECK(f3 == Rational(1, 2));
    CHECK(g3.weight(g3.require_vertex({-3, 0}), g3.require_vertex({0, 3})) == Rational(1));
}

TEST_CASE("urban renewal on random weights preserves M") {
    std::mt19937 rng(4242);
    for (int it = 0; it < 60; ++it) {
        auto host = renewal_host(rnd(rng), rnd(rng), rnd(rng), rnd(rng), &rng);
        auto sites = find_renewal_sites(host);
        REQUIRE(sites.size() == 1);
        Rational a = host.weight(sites[0].w, sites[0].n);
        Rational d = host.weight(sites[0].n, sites[0].e);
        Rational c = host.weight(sites[0].e, sites[0].s);
        Rational b = host.weight(sites[0].s, sites[0].w);
        auto [g2, factor] = apply_urban_renewal(host, sites[0]);
        CHECK(factor == a * c + b * d);
        CHECK(matching_sum_bruteforce(host) == factor * matching_sum_bruteforce(g2));
        CHECK(matching_sum_pfaffian(host) == factor * matching_sum_pfaffian(g2));
    }
}

TEST_CASE("the weight map is an involution up to the factor") {
    std::mt19937 rng(5);
    auto host = renewal_host(rnd(rng), rnd(rng), rnd(rng), rnd(rng));
    auto site = find_renewal_sites(host)[0];
    Rational a = host.weight(site.w, site.n), d = host.weight(site.n, site.e);
    Rational c = host.weight(site.e, site.s), b = host.weight(site.s, site.w);
    auto [g2, f2] = apply_urban_renewal(host, site);

    // reconstruct attachments by splitting each corner of the renewed square
    WeightedGraph g3 = g2;
    for (Coord p : {Coord{-3, 0}, Coord{0, 3}, Coord{3, 0}, Coord{0, -3}}) {
        int v = g3.require_vertex(p);
        // the two new square edges go to the inner copy, the old ring edges
        // to the far copy
        std::vector<int> square_side;
        for (int u : g3.neighbors(v)) {
            Coord q = g3.vertex(u).pos;
            if (std::abs(q.x) + std::abs(q.y) <= 3 && (q.x == 0 || q.y == 0))
                square_side.push_back(u);
        }
        Coord inner{p.x / 3, p.y / 3}, outer{p.x * 2, p.y * 2};
        g3 = split_vertex_three(g3, v, square_side, inner, p, outer);
    }
    auto site3 = find_site_with_north(g3, {0, 1});
    REQUIRE(site3.has_value());
    auto [g4, f4] = apply_urban_renewal(g3, *site3);
    // the doubly renewed square sits on the old attachment points and has
    // recovered the original inner weights
    CHECK(g4.weight(g4.require_vertex({-3, 0}), g4.require_vertex({0, 3})) == a);
    CHECK(g4.weight(g4.require_vertex({0, 3}), g4.require_vertex({3, 0})) == d);
    CHECK(g4.weight(g4.require_vertex({3, 0}), g4.require_vertex({0, -3})) == c);
    CHECK(g4.weight(g4.require_vertex({0, -3}), g4.require_vertex({-3, 0})) == b);
    CHECK(f2 * f4 == Rational(1));
}

TEST_CASE("degenerate sites are rejected") {
    // two inner corners sharing one outer vertex
    WeightedGraph g;
    Coord W{-1, 0}, N{0, 1}, E{1, 0}, S{0, -1};
    for (Coord p : {W, N, E, S}) g.add_vertex(p);
    g.add_edge(W, N);
    g.add_edge(N, E);
    g.add_edge(E, S);
    g.add_edge(S, W);
    int shared = g.add_vertex({-4, 4});
    int o2 = g.add_vertex({4, 4});
    int o3 = g.add_vertex({4, -4});
    g.add_edge(g.require_vertex(W), shared);
    g.add_edge(g.require_vertex(N), shared);
    g.add_edge(g.require_vertex(E), o2);
    g.add_edge(g.require_vertex(S), o3);
    RenewalSite site{};
    site.w = g.require_vertex(W);
    site.n = g.require_vertex(N);
    site.e = g.require_vertex(E);
    site.s = g.require_vertex(S);
    site.ow = shared;
    site.on = shared;
    site.oe = o2;
    site.os = o3;
    CHECK_THROWS_AS(apply_urban_renewal(g, site), std::invalid_argument);
    CHECK(find_renewal_sites(g).empty());
}

TEST_CASE("vertex splitting preserves M") {
    // an isolated edge: splitting one end gives a path of four vertices
    WeightedGraph e;
    e.add_vertex({0, 0});
    e.add_vertex({2, 0});
    e.add_edge(Coord{0, 0}, Coord{2, 0}, Rational(4, 7));
    auto split = split_vertex_three(e, e.require_vertex({2, 0}), {e.require_vertex({0, 0})},
                                    {1, 0}, {2, 0}, {3, 0});
    CHECK(split.vertex_count() == 4);
    CHECK(matching_sum_bruteforce(split) == Rational(4, 7));

    // splitting an interior vertex of G_1 with the left/right partition
    auto gs = build_gn(1).scaled(2);
    int v = gs.require_vertex({4, 0});
    std::vector<int> lefts;
    for (int u : gs.neighbors(v))
        if (gs.vertex(u).pos.x < 4) lefts.push_back(u);
    auto h = split_vertex_three(gs, v, lefts, {3, 0}, {4, 0}, {5, 0});
    CHECK(matching_sum_bruteforce(h) == matching_sum_bruteforce(build_gn(1)));
    CHECK_THROWS_AS(split_vertex_three(gs, v, {v}, {30, 0}, {31, 0}, {32, 0}),
                    std::invalid_argument);
}

TEST_CASE("gauge scaling") {
    auto g = build_gn(1);
    auto [same, f1] = gauge_scale_vertex(g, 0, Rational(1));
    CHECK(f1 == Rational(1));
    CHECK(matching_sum_bruteforce(same) == matching_sum_bruteforce(g));

    std::mt19937 rng(31);
    std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
    for (int it = 0; it < 10; ++it) {
        Rational lambda = rnd(rng);
        int v = pick(rng);
        auto [h, factor] = gauge_scale_vertex(g, v, lambda);
        CHECK(factor == lambda.inverse());
        CHECK(matching_sum_bruteforce(g) == factor * matching_sum_bruteforce(h));
    }
}

TEST_CASE("forced edge stripping") {
    // disjoint pendant edge beside a 4-cycle: factor is the pendant weight
    auto g = build_aztec_rectangle(1, 1);
    g.add_vertex({10, 0});
    g.add_vertex({11, 1});
    g.add_edge(Coord{10, 0}, Coord{11, 1}, Rational(5, 3));
    auto res = strip_forced_edges(g);
    CHECK_FALSE(res.unmatchable);
    CHECK(res.factor == Rational(5, 3));
    CHECK(WeightedGraph::same_up_to_translation(res.graph, build_aztec_rectangle(1, 1)));

    // a pendant hanging off a 4-cycle cascades into an unmatchable graph
    auto bad = build_aztec_rectangle(1, 1);
    bad.add_vertex({1, 2});
    bad.add_edge(Coord{1, 2}, Coord{1, 1}, Rational(1));
    auto res2 = strip_forced_edges(bad);
    CHECK(res2.unmatchable);

    // randomized pendant decorations: M(G) = factor * M(G')
    std::mt19937 rng(8);
    for (int it = 0; it < 20; ++it) {
        auto h = build_gn(1);
        // decorate: chain of two pendant vertices off a random vertex
        std::uniform_int_distribution<int> pick(0, h.vertex_count() - 1);
        int v = pick(rng);
        Coord base = h.vertex(v).pos;
        Coord p1{base.x + 20, base.y + 1}, p2{base.x + 21, base.y + 2};
        h.add_vertex(p1);
        h.add_vertex(p2);
        Rational w1 = rnd(rng), w2 = rnd(rng);
        h.add_edge(p1, base, w1);
        h.add_edge(p2, p1, w2);
        auto r = strip_forced_edges(h);
        CHECK_FALSE(r.unmatchable);
        CHECK(matching_sum_bruteforce(h) == r.factor * matching_sum_bruteforce(r.graph));
    }
}

TEST_CASE("dent filling accepts forced structure and rejects anything else") {
    auto g = build_gn(1);
    // a disjoint weight-1 edge leaves M unchanged
    DentFill ok;
    ok.vertices = {{20, 0}, {20, 2}};
    ok.edges = {{{20, 0}, {20, 2}}};
    auto g2 = fill_dents(g, ok);
    CHECK(matching_sum_pfaffian(g2) == matching_sum_pfaffian(g));

    // a single vertex tied to an existing one changes M (odd count: M = 0)
    DentFill bad;
    bad.vertices = {{20, 0}};
    bad.edges = {{{20, 0}, {0, 0}}};
    CHECK_THROWS_AS(fill_dents(g, bad), std::invalid_argument);

    // a two-vertex bridge across the ends of a path opens a second matching
    WeightedGraph path;
    for (int i = 0; i < 4; ++i) path.add_vertex({2 * i, 0});
    for (int i = 0; i < 3; ++i) path.add_edge(Coord{2 * i, 0}, Coord{2 * i + 2, 0});
    DentFill bridge;
    bridge.vertices = {{0, 2}, {6, 2}};
    bridge.edges = {{{0, 2}, {6, 2}}, {{0, 2}, {0, 0}}, {{6, 2}, {6, 0}}};
    CHECK_THROWS_AS(fill_dents(path, bridge), std::invalid_argument);
}

TEST_CASE("edge class scaling") {
    auto g = build_gn(1);
    // empty class: factor 1, nothing changes
    auto [same, f0] = scale_edge_class(
        g, [](const WeightedGraph&, const GraphEdge& e) { return e.w == Rational(9); },
        Rational(7), 0);
    CHECK(f0 == Rational(1));
    CHECK(matching_sum_bruteforce(same) == matching_sum_bruteforce(g));

    // one single cycle edge is hit by one matching of a 4-cycle but not the
    // other: non-uniform classes are rejected
    auto cyc = build_aztec_rectangle(1, 1);
    CHECK_THROWS_AS(scale_edge_class(
                        cyc,
                        [&](const WeightedGraph& gg, const GraphEdge& e) {
                            return gg.vertex(e.u).pos == Coord{0, 0} &&
                                   gg.vertex(e.v).pos == Coord{1, 1};
                        },
                        Rational(2), 1),
                    std::invalid_argument);

    // the weight-1/2 edges of G_1 are hit exactly once per matching... not
    // true either; use the tooth edges: every matching uses exactly one
    auto [h, f1] = scale_edge_class(
        g,
        [&](const WeightedGraph& gg, const GraphEdge& e) {
            return gg.vertex(e.u).pos.y == -2 || gg.vertex(e.v).pos.y == -2;
        },
        Rational(3), 1);
    CHECK(f1 == Rational(3));
    CHECK(matching_sum_bruteforce(g) == f1 * matching_sum_bruteforce(h));
}

TEST_CASE("tripling G_2 per the reduction partition preserves M and exposes all squares") {
    // mirror what the pipeline's first phase does by hand
    int n = 2;
    auto g0 = build_gn(n);
    Rational m0 = matching_sum_bruteforce(g0);
    auto g = g0.scaled(2);
    struct Item {
        Coord p;
        bool tooth;
    };
    std::vector<Item> items;
    for (const auto& v : g.vertices()) {
        bool tooth = false;
        for (const auto& t : v.tags)
            if (t == "tooth") tooth = true;
        items.push_back({v.pos, tooth});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.p < b.p; });
    for (const auto& it : items) {
        Coord p = it.p;
        int xm = ((p.x % 4) + 4) % 4;
        if (!it.tooth && p.y == 2 - 4 * n && xm == 2) continue;
        int v = g.require_vertex(p);
        std::vector<int> side;
        bool horizontal = it.tooth || xm == 0;
        for (int u : g.neighbors(v)) {
            Coord q = g.vertex(u).pos;
            if ((horizontal ? q.x - p.x : q.y - p.y) < 0) side.push_back(u);
        }
        if (horizontal)
            g = split_vertex_three(g, v, side, {p.x - 1, p.y}, p, {p.x + 1, p.y});
        else
            g = split_vertex_three(g, v, side, {p.x, p.y - 1}, p, {p.x, p.y + 1});
    }
    CHECK(matching_sum_pfaffian(g) == m0);
    CHECK(find_renewal_sites(g).size() == 2 * n * n);
}

TEST_CASE("the full reduction at n=2") {
    auto trace = reduce_gn_once(2, VerifyLevel::Steps);
    CHECK(trace.cumulative == Rational(15, 8));
    CHECK(WeightedGraph::same_up_to_translation(trace.final_graph, mirror(build_gn(1))));
    // M(G_2) = factor * M(G_1)
    CHECK(matching_sum_pfaffian(build_gn(2)) ==
          trace.cumulative * matching_sum_pfaffian(trace.final_graph));
    // the trace is deterministic
    auto again = reduce_gn_once(2, VerifyLevel::None);
    REQUIRE(again.steps.size() == trace.steps.size());
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        CHECK(again.steps[i].op == trace.steps[i].op);
        CHECK(again.steps[i].params == trace.steps[i].params);
        CHECK(again.steps[i].factor == trace.steps[i].factor);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <queue>

#include "hasm/lattice_graphs.hpp"
#include "hasm/matchings.hpp"

using namespace hasm;

namespace {

bool bipartite(const WeightedGraph& g) {
    std::vector<int> color(g.vertex_count(), -1);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.neighbors(v)) {
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    q.push(u);
                } else if (color[u] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("aztec rectangle shape") {
    auto g = build_aztec_rectangle(2, 3);
    CHECK(g.vertex_count() == 17);
    CHECK(g.edge_count() == 24);
    for (int m = 1; m <= 3; ++m)
        for (int k = 1; k <= 4; ++k) {
            auto r = build_aztec_rectangle(m, k);
            CHECK(r.vertex_count() == m * (k + 1) + (m + 1) * k);
            CHECK(r.edge_count() == 4 * m * k);
        }
    auto one = build_aztec_rectangle(1, 1);
    CHECK(one.vertex_count() == 4);
    CHECK(one.edge_count() == 4);
}

TEST_CASE("kept-bottom variants") {
    auto g = build_aztec_rectangle_kept_bottom(1, 1, KeptPositions::of({1}));
    CHECK(g.vertex_count() == 4);
    CHECK(enumerate_matchings(g).size() == 2);

    auto h = build_aztec_rectangle_kept_bottom(1, 2, KeptPositions::of({1}));
    CHECK(h.vertex_count() == 6);
    CHECK(enumerate_matchings(h).size() == 2);

    // an unbalanced kept set leaves an odd vertex count: unmatchable
    auto odd = build_aztec_rectangle_kept_bottom(2, 3, KeptPositions::of({1}));
    CHECK(odd.vertex_count() % 2 == 1);
    CHECK(matching_sum_bruteforce(odd).is_zero());
}

TEST_CASE("teeth region equals the kept-bottom construction") {
    for (int n = 1; n <= 3; ++n) {
        std::vector<int> odds;
        for (int i = 1; i <= n; ++i) odds.push_back(2 * i - 1);
        auto a = build_teeth_region(n);
        auto b = build_aztec_rectangle_kept_bottom(n, 2 * n - 1, KeptPositions::of(odds));
        CHECK(WeightedGraph::same_up_to_translation(a, b));
        CHECK(a.vertex_count() == 4 * n * n);
    }
    auto t1 = build_teeth_region(1);
    CHECK(t1.vertex_count() == 4);
    CHECK(t1.edge_count() == 4);
    // bottom peaks of the n=3 region sit at x = 1, 5, 9
    auto t3 = build_teeth_region(3);
    for (int x : {1, 5, 9}) CHECK(t3.find_vertex({x, -5}).has_value());
    for (int x : {3, 7}) CHECK_FALSE(t3.find_vertex({x, -5}).has_value());
}

TEST_CASE("G_n weights and teeth") {
    auto g1 = build_gn(1);
    CHECK(g1.vertex_count() == 8);
    CHECK(g1.edge_count() == 10);
    // square (1,1) carries weight 1/2, square (1,2) weight 1
    CHECK(g1.weight(g1.require_vertex({0, 0}), g1.require_vertex({1, 1})) == Rational(1, 2));
    CHECK(g1.weight(g1.require_vertex({2, 0}), g1.require_vertex({3, 1})) == Rational(1));
    for (int n = 1; n <= 3; ++n) {
        auto g = build_gn(n);
        CHECK(g.vertex_count() == 4 * n * n + 4 * n);
        CHECK(g.edge_count() == 8 * n * n + 2 * n);
        for (int i = 1; i <= n; ++i) {
            int tooth = g.require_vertex({4 * i - 2, -2 * n});
            CHECK(g.degree(tooth) == 2);
            CHECK(g.weight(tooth, g.require_vertex({4 * i - 3, -2 * n + 1})) == Rational(1));
        }
    }
}

TEST_CASE("fortress counts at n=1") {
    auto low = build_fortress(1, BottomSpec::all(1, BottomConstraint::Low));
    auto high = build_fortress(1, BottomSpec::all(1, BottomConstraint::High));
    CHECK(low.vertex_count() == 12);
    CHECK(high.vertex_count() == 10);
    CHECK(matching_sum_bruteforce(low) == Rational(1));
    CHECK(matching_sum_bruteforce(high) == Rational(2));
    CHECK(matching_sum_bruteforce(low) + matching_sum_bruteforce(high) == Rational(3));
    CHECK_THROWS_AS(build_fortress(1, BottomSpec::free_spec(1)), std::invalid_argument);
}

TEST_CASE("fortress bottom normalization preserves the count") {
    for (int n = 1; n <= 2; ++n) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            BottomSpec spec = BottomSpec::free_spec(n);
            for (int i = 0; i < n; ++i)
                spec.c[i] = (mask >> i) & 1 ? BottomConstraint::Low : BottomConstraint::High;
            auto f = build_fortress(n, spec);
            auto norm = normalize_fortress_bottom(f);
            CHECK(matching_sum_bruteforce(f) == matching_sum_bruteforce(norm));
            // normalizing twice changes nothing
            CHECK(WeightedGraph::same_up_to_translation(norm, normalize_fortress_bottom(norm)));
        }
    }
    // all pairs present: nothing to normalize (n even: pairs follow c = n+1)
    auto full = build_fortress(2, BottomSpec::all(2, BottomConstraint::High));
    CHECK(WeightedGraph::same_up_to_translation(full, normalize_fortress_bottom(full)));
    auto full3 = build_fortress(3, BottomSpec::all(3, BottomConstraint::Low));
    CHECK(WeightedGraph::same_up_to_translation(full3, normalize_fortress_bottom(full3)));
}

TEST_CASE("fortress vertex and edge counts") {
    // 8n^2 + 2n + 2p vertices and 12n^2 - n + 2p edges, where p counts the
    // present pending pairs
    for (int n = 1; n <= 3; ++n)
        for (int mask = 0; mask < (1 << n); ++mask) {
            BottomSpec spec = BottomSpec::free_spec(n);
            int p = 0;
            for (int i = 0; i < n; ++i) {
                bool low = (mask >> i) & 1;
                spec.c[i] = low ? BottomConstraint::Low : BottomConstraint::High;
                bool present = (n % 2 == 1) ? low : !low;
                if (present) ++p;
            }
            auto f = build_fortress(n, spec);
            CHECK(f.vertex_count() == 8 * n * n + 2 * n + 2 * p);
            CHECK(f.edge_count() == 12 * n * n - n + 2 * p);
        }
}

TEST_CASE("the 3x6 fortress has the drawn bottom decorations") {
    // pending pattern of the order-6 example: c = (n-1, n-1, n+1)
    auto f = build_fortress(3, BottomSpec{{BottomConstraint::Low, BottomConstraint::Low,
                                           BottomConstraint::High}});
    // pendant leaves below the odd cells of present pairs
    CHECK(f.find_vertex({5, -8}).has_value());
    CHECK(f.find_vertex({11, -8}).has_value());
    // pair 3 absent: no pendant below cell (3,6), no connector below (3,5)
    CHECK_FALSE(f.find_vertex({17, -8}).has_value());
    CHECK_FALSE(f.find_vertex({14, -8}).has_value());
    // even cells of present pairs keep their south connectors
    CHECK(f.find_vertex({2, -8}).has_value());
    CHECK(f.find_vertex({8, -8}).has_value());
    // normalization appends the forced path below cell (3,5)
    auto norm = normalize_fortress_bottom(f);
    CHECK(norm.find_vertex({14, -8}).has_value());
    CHECK(norm.find_vertex({14, -9}).has_value());
    CHECK(norm.degree(norm.require_vertex({14, -9})) == 1);
}

TEST_CASE("mirror is a weight-preserving involution") {
    for (int n = 1; n <= 2; ++n) {
        auto g = build_gn(n);
        auto m = mirror(g);
        CHECK(WeightedGraph::same_up_to_translation(mirror(m), g));
        CHECK(matching_sum_bruteforce(m) == matching_sum_bruteforce(g));
        CHECK_FALSE(WeightedGraph::same_up_to_translation(m, g));  // G_n is chiral
    }
}

TEST_CASE("builders produce bipartite planar graphs") {
    CHECK(bipartite(build_aztec_rectangle(2, 3)));
    CHECK(bipartite(build_teeth_region(2)));
    CHECK(bipartite(build_gn(2)));
    CHECK(bipartite(build_fortress(2, BottomSpec::all(2, BottomConstraint::Low))));
    // planarity of the embeddings: the orientation step accepts them
    kasteleyn_orient(build_aztec_rectangle(2, 3));
    kasteleyn_orient(build_teeth_region(2));
    kasteleyn_orient(build_gn(2));
    kasteleyn_orient(build_fortress(2, BottomSpec::all(2, BottomConstraint::High)));
}

TEST_CASE("graph primitives reject misuse") {
    WeightedGraph g;
    int a = g.add_vertex({0, 0});
    int b = g.add_vertex({1, 1});
    g.add_edge(a, b, Rational(1));
    CHECK_THROWS_AS(g.add_vertex({0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(a, b, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(a, a, Rational(1)), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(a, b, Rational(0)), std::invalid_argument);
}

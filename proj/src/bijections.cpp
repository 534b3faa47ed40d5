#include "hasm/bijections.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hasm/lattice_graphs.hpp"

namespace hasm {

namespace {

// The square of entry (i,j) in the teeth region sits at center (2j-2, 3-2i);
// its corners are the West/East peaks and North/South side vertices around
// that center. Boundary squares only have some of them.
struct HoleCorners {
    std::optional<int> w, e, n, s;
};

HoleCorners hole_corners(const WeightedGraph& region, int i, int j) {
    Coord p{2 * j - 2, 3 - 2 * i};
    return {region.find_vertex({p.x - 1, p.y}), region.find_vertex({p.x + 1, p.y}),
            region.find_vertex({p.x, p.y + 1}), region.find_vertex({p.x, p.y - 1})};
}

std::vector<std::pair<int, int>> hole_edges(const WeightedGraph& region, const HoleCorners& h) {
    std::vector<std::pair<int, int>> es;
    auto push = [&](std::optional<int> a, std::optional<int> b) {
        if (a && b && region.has_edge(*a, *b)) es.push_back({std::min(*a, *b), std::max(*a, *b)});
    };
    push(h.w, h.n);
    push(h.n, h.e);
    push(h.e, h.s);
    push(h.s, h.w);
    return es;
}

int row_prefix(const AsmMatrix& a, int i, int j) {
    int s = 0;
    for (int r = 1; r <= j; ++r) s += a.at(i, r);
    return s;
}

int col_prefix(const AsmMatrix& a, int i, int j) {
    int s = 0;
    for (int l = 1; l <= i; ++l) s += a.at(l, j);
    return s;
}

bool is_perfect_matching(const WeightedGraph& g, const std::set<std::pair<int, int>>& edges) {
    std::vector<int> cover(g.vertex_count(), 0);
    for (auto [u, v] : edges) {
        if (!g.has_edge(u, v)) return false;
        ++cover[u];
        ++cover[v];
    }
    for (int c : cover)
        if (c != 1) return false;
    return true;
}

}  // namespace

std::vector<Matching> aztec_matchings_of_asm(const AsmMatrix& a, const WeightedGraph& region) {
    auto val = validate(a);
    if (!val.ok || !a.is_halved())
        throw std::invalid_argument("aztec_matchings_of_asm: invalid halved ASM");
    int n = a.order_n();

    std::set<std::pair<int, int>> base;
    auto add = [&](std::optional<int> u, std::optional<int> v, const char* what) {
        if (!u || !v || !region.has_edge(*u, *v))
            throw std::logic_error(std::string("aztec rule produced a missing edge (") + what + ")");
        base.insert({std::min(*u, *v), std::max(*u, *v)});
    };

    // choices[k] = the two edge pairs of the k-th (-1) square
    std::vector<std::array<std::pair<std::optional<int>, std::optional<int>>, 4>> minus_sites;

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
            int v = a.at(i, j);
            auto h = hole_corners(region, i, j);
            if (v == 1) continue;
            if (v == 0) {
                auto horiz = row_prefix(a, i, j) == 1 ? h.w : h.e;
                auto vert = col_prefix(a, i, j) == 1 ? h.n : h.s;
                add(horiz, vert, "zero rule");
            } else {
                minus_sites.push_back({std::make_pair(h.w, h.n), std::make_pair(h.e, h.s),
                                       std::make_pair(h.n, h.e), std::make_pair(h.s, h.w)});
            }
        }

    // tooth i is matched northwest for c_i = n-1, northeast for c_i = n+1
    auto c = bottom_values(a);
    for (int i = 1; i <= n; ++i) {
        Coord tooth{4 * i - 3, -2 * n + 1};
        Coord to = c[i - 1] == n - 1 ? Coord{4 * i - 4, -2 * n + 2} : Coord{4 * i - 2, -2 * n + 2};
        add(region.find_vertex(tooth), region.find_vertex(to), "tooth rule");
    }

    size_t k = minus_sites.size();
    std::vector<Matching> out;
    for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
        auto edges = base;
        for (size_t t = 0; t < k; ++t) {
            const auto& site = minus_sites[t];
            // choice 0 = NW+SE pair, choice 1 = NE+SW pair
            int off = (mask >> t) & 1 ? 2 : 0;
            for (int q = off; q < off + 2; ++q) {
                auto [u, v] = site[q];
                if (!u || !v || !region.has_edge(*u, *v))
                    throw std::logic_error("aztec rule: -1 square edge missing");
                edges.insert({std::min(*u, *v), std::max(*u, *v)});
            }
        }
        if (!is_perfect_matching(region, edges))
            throw std::logic_error("aztec rule: assembled edge set is not a perfect matching");
        out.push_back(Matching(edges.begin(), edges.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

AsmMatrix asm_of_aztec_matching(const WeightedGraph& region, int n, const Matching& m) {
    std::set<std::pair<int, int>> edges(m.begin(), m.end());
    AsmMatrix a = AsmMatrix::halved(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
            auto h = hole_corners(region, i, j);
            int cnt = 0;
            for (auto e : hole_edges(region, h))
                if (edges.count(e)) ++cnt;
            if (cnt > 2) throw std::logic_error("asm_of_aztec_matching: square with >2 edges");
            a.set(i, j, 1 - cnt);
        }
    auto val = validate(a);
    if (!val.ok)
        throw std::logic_error("asm_of_aztec_matching: recovered matrix invalid: " + val.message);
    return a;
}

BottomSpec pending_of(const AsmMatrix& a) {
    int n = a.order_n();
    auto c = bottom_values(a);
    BottomSpec spec = BottomSpec::free_spec(n);
    for (int i = 0; i < n; ++i)
        spec.c[i] = c[i] == n - 1 ? BottomConstraint::Low : BottomConstraint::High;
    return spec;
}

std::vector<Matching> fortress_matchings_of_asm(const AsmMatrix& a,
                                                const WeightedGraph& fortress) {
    auto val = validate(a);
    if (!val.ok || !a.is_halved())
        throw std::invalid_argument("fortress_matchings_of_asm: invalid halved ASM");
    int n = a.order_n();

    auto cell_center = [](int i, int j) { return Coord{3 * j - 1, 3 - 3 * i}; };

    std::set<std::pair<int, int>> base;
    auto add_c = [&](Coord p, Coord q, const char* what) {
        auto u = fortress.find_vertex(p), v = fortress.find_vertex(q);
        if (!u || !v || !fortress.has_edge(*u, *v))
            throw std::logic_error(std::string("fortress rule: missing edge (") + what + ") " +
                                   p.str() + " - " + q.str());
        base.insert({std::min(*u, *v), std::max(*u, *v)});
    };

    std::vector<std::array<std::pair<Coord, Coord>, 4>> two_choice_sites;

    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
            int v = a.at(i, j);
            Coord c = cell_center(i, j);
            Coord W{c.x - 1, c.y}, N{c.x, c.y + 1}, E{c.x + 1, c.y}, S{c.x, c.y - 1};
            bool even_cell = (i + j) % 2 == 0;
            if (even_cell) {
                Coord oW{c.x - 2, c.y}, oN{c.x, c.y + 2}, oE{c.x + 2, c.y}, oS{c.x, c.y - 2};
                if (v == 1) {
                    add_c(W, oW, "1-even W");
                    add_c(N, oN, "1-even N");
                    add_c(E, oE, "1-even E");
                    add_c(S, oS, "1-even S");
                } else if (v == -1) {
                    two_choice_sites.push_back(
                        {std::make_pair(W, N), std::make_pair(E, S), std::make_pair(N, E),
                         std::make_pair(S, W)});
                } else {
                    // the active connectors point away from the nearest 1 in
                    // the row and in the column
                    bool left = row_prefix(a, i, j) == 0;
                    bool up = col_prefix(a, i, j) == 0;
                    add_c(left ? W : E, left ? oW : oE, "0-even horiz");
                    add_c(up ? N : S, up ? oN : oS, "0-even vert");
                    // inner edge joining the two inactive compass corners
                    Coord h = left ? E : W;
                    Coord t = up ? S : N;
                    add_c(h, t, "0-even inner");
                }
            } else {
                // bottom pendant edges are forced no matter the entry
                if (i == n && fortress.find_vertex({c.x, c.y - 2}))
                    add_c(S, Coord{c.x, c.y - 2}, "pendant");
                if (v == -1) continue;  // corners are covered by the neighbors
                if (v == 1) {
                    two_choice_sites.push_back(
                        {std::make_pair(W, N), std::make_pair(E, S), std::make_pair(N, E),
                         std::make_pair(S, W)});
                } else {
                    bool left = row_prefix(a, i, j) == 0;
                    bool up = col_prefix(a, i, j) == 0;
                    add_c(left ? W : E, up ? N : S, "0-odd");
                }
            }
        }

    size_t k = two_choice_sites.size();
    std::vector<Matching> out;
    for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
        auto edges = base;
        for (size_t t = 0; t < k; ++t) {
            int off = (mask >> t) & 1 ? 2 : 0;
            for (int q = off; q < off + 2; ++q) {
                auto [p, r] = two_choice_sites[t][q];
                auto u = fortress.find_vertex(p), v = fortress.find_vertex(r);
                if (!u || !v || !fortress.has_edge(*u, *v))
                    throw std::logic_error("fortress rule: two-choice edge missing");
                edges.insert({std::min(*u, *v), std::max(*u, *v)});
            }
        }
        if (!is_perfect_matching(fortress, edges))
            throw std::logic_error("fortress rule: assembled edge set is not a perfect matching");
        out.push_back(Matching(edges.begin(), edges.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PartitionReport verify_partition(int n, Family family) {
    PartitionReport rep;
    auto all_asms = enumerate_halved_asms(n, BottomSpec::free_spec(n));
    if (family == Family::Teeth) {
        WeightedGraph region = build_teeth_region(n);
        auto all = enumerate_matchings(region);
        std::set<Matching> pool(all.begin(), all.end());
        rep.total_matchings = (long)all.size();
        std::set<Matching> seen;
        for (const auto& a : all_asms) {
            for (const auto& m : aztec_matchings_of_asm(a, region)) {
                if (!pool.count(m)) {
                    rep.ok = false;
                    rep.message = "matching outside the region's matching set";
                    return rep;
                }
                if (seen.count(m)) {
                    rep.ok = false;
                    rep.message = "matching claimed by two different matrices";
                    return rep;
                }
                seen.insert(m);
            }
        }
        if (seen.size() != pool.size()) {
            rep.ok = false;
            rep.message = "union misses " + std::to_string(pool.size() - seen.size()) +
                          " matchings of the region";
        }
        return rep;
    }

    // fortress family: partition per pending configuration
    std::map<std::vector<int>, std::vector<const AsmMatrix*>> by_pending;
    for (const auto& a : all_asms) by_pending[bottom_values(a)].push_back(&a);
    BigInt total = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        BottomSpec spec = BottomSpec::free_spec(n);
        std::vector<int> cvals(n);
        for (int i = 0; i < n; ++i) {
            bool low = (mask >> i) & 1;
            spec.c[i] = low ? BottomConstraint::Low : BottomConstraint::High;
            cvals[i] = low ? n - 1 : n + 1;
        }
        WeightedGraph fortress = build_fortress(n, spec);
        auto all = enumerate_matchings(fortress);
        total += (long)all.size();
        std::set<Matching> pool(all.begin(), all.end());
        std::set<Matching> seen;
        for (const AsmMatrix* a : by_pending[cvals]) {
            for (const auto& m : fortress_matchings_of_asm(*a, fortress)) {
                if (!pool.count(m)) {
                    rep.ok = false;
                    rep.message = "fortress matching outside the pool";
                    return rep;
                }
                if (seen.count(m)) {
                    rep.ok = false;
                    rep.message = "fortress matching claimed twice";
                    return rep;
                }
                seen.insert(m);
            }
        }
        if (seen.size() != pool.size()) {
            rep.ok = false;
            rep.message = "fortress union incomplete for one pending configuration";
            return rep;
        }
    }
    rep.total_matchings = total;
    return rep;
}

}  // namespace hasm

#include "hasm/matchings.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>

namespace hasm {

std::vector<Matching> enumerate_matchings(const WeightedGraph& g) {
    int n = g.vertex_count();
    std::vector<Matching> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    if (n % 2 != 0) {
        std::cerr << "enumerate_matchings: odd vertex count, no perfect matchings\n";
        return out;
    }
    std::vector<bool> used(n, false);
    Matching cur;
    std::function<void(int)> go = [&](int from) {
        int v = from;
        while (v < n && used[v]) ++v;
        if (v == n) {
            out.push_back(cur);
            return;
        }
        used[v] = true;
        for (int u : g.neighbors(v)) {
            if (used[u]) continue;
            used[u] = true;
            cur.push_back({v, u});
            go(v + 1);
            cur.pop_back();
            used[u] = false;
        }
        used[v] = false;
    };
    go(0);
    return out;
}

Rational matching_weight(const WeightedGraph& g, const Matching& m) {
    Rational w(1);
    for (auto [u, v] : m) w *= g.weight(u, v);
    return w;
}

Rational matching_sum_bruteforce(const WeightedGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return Rational(1);
    if (n % 2 != 0) return Rational(0);
    std::vector<bool> used(n, false);
    Rational total(0);
    std::function<void(int, Rational)> go = [&](int from, Rational acc) {
        int v = from;
        while (v < n && used[v]) ++v;
        if (v == n) {
            total += acc;
            return;
        }
        used[v] = true;
        for (int u : g.neighbors(v)) {
            if (used[u]) continue;
            used[u] = true;
            go(v + 1, acc * g.weight(v, u));
            used[u] = false;
        }
        used[v] = false;
    };
    go(0, Rational(1));
    return total;
}

namespace {

struct Dir {
    long dx, dy;
};

// 0 for the half-plane starting at positive x axis going CCW, 1 for the rest
int half(const Dir& d) {
    if (d.dy > 0 || (d.dy == 0 && d.dx > 0)) return 0;
    return 1;
}

// strict CCW order starting from direction (1,0)
bool angle_less(const Dir& a, const Dir& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    long cross = a.dx * b.dy - a.dy * b.dx;
    if (cross == 0) throw std::invalid_argument("kasteleyn: collinear co-directed edges");
    return cross > 0;
}

long orient2d(Coord a, Coord b, Coord c) {
    long v = (long)(b.x - a.x) * (c.y - a.y) - (long)(b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

bool on_segment(Coord a, Coord b, Coord p) {
    return orient2d(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

void check_no_crossings(const WeightedGraph& g) {
    int m = g.edge_count();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const auto& e = g.edge(i);
            const auto& f = g.edge(j);
            if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
            Coord a = g.vertex(e.u).pos, b = g.vertex(e.v).pos;
            Coord c = g.vertex(f.u).pos, d = g.vertex(f.v).pos;
            long d1 = orient2d(a, b, c), d2 = orient2d(a, b, d);
            long d3 = orient2d(c, d, a), d4 = orient2d(c, d, b);
            bool proper = d1 * d2 < 0 && d3 * d4 < 0;
            bool improper = on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
                            on_segment(c, d, b);
            if (proper || improper)
                throw std::invalid_argument("kasteleyn: crossing edges in the embedding (" +
                                            a.str() + ")-(" + b.str() + ") vs (" + c.str() +
                                            ")-(" + d.str() + ")");
        }
}

struct Embedding {
    // rot[v]: neighbor ids in CCW angular order
    std::vector<std::vector<int>> rot;
    std::vector<std::map<int, int>> pos_in_rot;  // pos_in_rot[v][u]
};

Embedding build_embedding(const WeightedGraph& g) {
    Embedding emb;
    int n = g.vertex_count();
    emb.rot.resize(n);
    emb.pos_in_rot.resize(n);
    for (int v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        Coord pv = g.vertex(v).pos;
        std::sort(nb.begin(), nb.end(), [&](int a, int b) {
            Coord pa = g.vertex(a).pos, pb = g.vertex(b).pos;
            return angle_less({pa.x - pv.x, pa.y - pv.y}, {pb.x - pv.x, pb.y - pv.y});
        });
        emb.rot[v] = nb;
        for (int i = 0; i < (int)nb.size(); ++i) emb.pos_in_rot[v][nb[i]] = i;
    }
    return emb;
}

// All faces of the rotation system as directed vertex cycles. With the CCW
// rotation and next(u->v) = v->(predecessor of u around v), every bounded
// face comes out counterclockwise (positive signed area) and the outer face
// clockwise.
std::vector<std::vector<int>> trace_faces(const WeightedGraph& g, const Embedding& emb) {
    std::map<std::pair<int, int>, bool> seen;
    std::vector<std::vector<int>> faces;
    for (const auto& e : g.edges()) {
        seen[{e.u, e.v}] = false;
        seen[{e.v, e.u}] = false;
    }
    for (auto& [he, done] : seen) {
        if (done) continue;
        std::vector<int> cycle;
        int u = he.first, v = he.second;
        while (!seen[{u, v}]) {
            seen[{u, v}] = true;
            cycle.push_back(u);
            const auto& r = emb.rot[v];
            int i = emb.pos_in_rot[v].at(u);
            int w = r[(i + (int)r.size() - 1) % r.size()];
            u = v;
            v = w;
        }
        faces.push_back(cycle);
    }
    return faces;
}

long twice_signed_area(const WeightedGraph& g, const std::vector<int>& cycle) {
    long acc = 0;
    for (size_t i = 0; i < cycle.size(); ++i) {
        Coord p = g.vertex(cycle[i]).pos;
        Coord q = g.vertex(cycle[(i + 1) % cycle.size()]).pos;
        acc += (long)p.x * q.y - (long)q.x * p.y;
    }
    return acc;
}

std::vector<int> component_of(const WeightedGraph& g, int root, std::vector<int>& comp_id,
                              int id) {
    std::vector<int> stack{root}, verts;
    comp_id[root] = id;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        verts.push_back(v);
        for (int u : g.neighbors(v))
            if (comp_id[u] < 0) {
                comp_id[u] = id;
                stack.push_back(u);
            }
    }
    return verts;
}

}  // namespace

std::vector<std::vector<int>> bounded_faces(const WeightedGraph& g) {
    auto emb = build_embedding(g);
    auto faces = trace_faces(g, emb);
    std::vector<std::vector<int>> out;
    for (auto& f : faces)
        if (twice_signed_area(g, f) > 0) out.push_back(f);
    return out;
}

KasteleynOrientation kasteleyn_orient(const WeightedGraph& g) {
    check_no_crossings(g);
    int n = g.vertex_count(), m = g.edge_count();

    // Euler count per component; a broken rotation system (crossings missed
    // by degeneracies) shows up here.
    std::vector<int> comp_id(n, -1);
    int comps = 0;
    for (int v = 0; v < n; ++v)
        if (comp_id[v] < 0) component_of(g, v, comp_id, comps++);
    auto emb = build_embedding(g);
    auto faces = trace_faces(g, emb);
    // For a planar embedding: V - E + F = 1 + C, counting one outer face per
    // component.
    long outer_count = 0;
    for (auto& f : faces)
        if (twice_signed_area(g, f) <= 0) ++outer_count;
    // Faces are traced per component, so V - E + F = 2C here.
    if (outer_count != comps || n - m + (long)faces.size() != 2L * comps)
        throw std::invalid_argument("kasteleyn: embedding fails Euler check (non-planar?)");

    KasteleynOrientation ori;
    ori.dir.assign(m, true);
    std::vector<bool> decided(m, false);

    // spanning forest oriented arbitrarily
    {
        std::vector<bool> vis(n, false);
        for (int r = 0; r < n; ++r) {
            if (vis[r]) continue;
            std::vector<int> stack{r};
            vis[r] = true;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int u : g.neighbors(v)) {
                    if (vis[u]) continue;
                    vis[u] = true;
                    int e = *g.find_edge(v, u);
                    decided[e] = true;  // direction irrelevant for tree edges
                    stack.push_back(u);
                }
            }
        }
    }

    struct FaceInfo {
        std::vector<int> cyc;
        bool done = false;
    };
    std::vector<FaceInfo> bounded;
    for (auto& f : faces)
        if (twice_signed_area(g, f) > 0) bounded.push_back({f, false});

    auto face_edges = [&](const std::vector<int>& cyc) {
        std::vector<std::pair<int, bool>> es;  // (edge id, traversed u->v along cycle?)
        for (size_t i = 0; i < cyc.size(); ++i) {
            int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
            int e = *g.find_edge(a, b);
            es.push_back({e, g.edge(e).u == a});
        }
        return es;
    };

    // Peel: a bounded face with exactly one undecided edge always exists.
    size_t remaining = bounded.size();
    while (remaining > 0) {
        bool progressed = false;
        for (auto& fi : bounded) {
            if (fi.done) continue;
            auto es = face_edges(fi.cyc);
            int undecided = -1, cnt_undecided = 0;
            int against = 0;  // edges oriented against the CCW traversal
            for (auto [e, along] : es) {
                if (!decided[e]) {
                    ++cnt_undecided;
                    undecided = e;
                } else if (ori.dir[e] != along) {
                    ++against;
                }
            }
            if (cnt_undecided != 1) continue;
            // Clockwise edges of a CCW-traversed face are exactly the ones
            // oriented against the traversal; make their number odd.
            bool make_against = (against % 2 == 0);
            for (auto [e, along] : es) {
                if (e != undecided) continue;
                ori.dir[e] = make_against ? !along : along;
            }
            decided[undecided] = true;
            fi.done = true;
            --remaining;
            progressed = true;
        }
        if (!progressed)
            throw std::logic_error("kasteleyn: orientation peeling stuck");
    }

    // Sanity: every bounded face odd-clockwise.
    for (auto& fi : bounded) {
        int against = 0;
        for (auto [e, along] : face_edges(fi.cyc))
            if (ori.dir[e] != along) ++against;
        if (against % 2 == 0) throw std::logic_error("kasteleyn: face not odd-clockwise");
    }
    return ori;
}

namespace {

// Pfaffian of an integer skew-symmetric matrix by fraction-free elimination;
// the entry at (i,j) after round k is the sub-Pfaffian on rows {0..2k+1,i,j},
// so every division is exact.
BigInt pfaffian_int(std::vector<std::vector<BigInt>> k) {
    int n = (int)k.size();
    if (n == 0) return 1;
    if (n % 2 != 0) return 0;
    int sign = 1;
    BigInt prev = 1;
    for (int s = 0; s + 2 < n; s += 2) {
        if (k[s][s + 1] == 0) {
            int j = -1;
            for (int t = s + 2; t < n; ++t)
                if (k[s][t] != 0) {
                    j = t;
                    break;
                }
            if (j < 0) return 0;  // row of sub-Pfaffians vanishes
            std::swap(k[s + 1], k[j]);
            for (int t = 0; t < n; ++t) std::swap(k[t][s + 1], k[t][j]);
            sign = -sign;
        }
        const BigInt piv = k[s][s + 1];
        for (int i = s + 2; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                BigInt val = piv * k[i][j] - k[s][i] * k[s + 1][j] + k[s][j] * k[s + 1][i];
                BigInt q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), val.get_mpz_t(), prev.get_mpz_t());
                if (r != 0) throw std::logic_error("pfaffian: inexact division");
                k[i][j] = q;
                k[j][i] = -q;
            }
        prev = piv;
    }
    return sign * k[n - 2][n - 1];
}

Rational component_pfaffian_sum(const WeightedGraph& g, const std::vector<int>& verts) {
    if (verts.size() % 2 != 0) return Rational(0);
    // induced subgraph with local ids
    WeightedGraph sub;
    std::map<int, int> local;
    for (int v : verts) local[v] = sub.add_vertex(g.vertex(v).pos);
    for (const auto& e : g.edges()) {
        auto iu = local.find(e.u), iv = local.find(e.v);
        if (iu == local.end() || iv == local.end()) continue;
        sub.add_edge(iu->second, iv->second, e.w);
    }
    auto ori = kasteleyn_orient(sub);

    BigInt denom_lcm = 1;
    for (const auto& e : sub.edges())
        mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), e.w.den().get_mpz_t());

    int n = sub.vertex_count();
    std::vector<std::vector<BigInt>> k(n, std::vector<BigInt>(n, BigInt(0)));
    for (int ei = 0; ei < sub.edge_count(); ++ei) {
        const auto& e = sub.edge(ei);
        BigInt scaled = e.w.num() * (denom_lcm / e.w.den());
        if (ori.dir[ei]) {
            k[e.u][e.v] = scaled;
            k[e.v][e.u] = -scaled;
        } else {
            k[e.u][e.v] = -scaled;
            k[e.v][e.u] = scaled;
        }
    }
    BigInt pf = pfaffian_int(std::move(k));
    if (pf < 0) pf = -pf;
    return Rational(pf, int_pow(denom_lcm, (unsigned long)(n / 2)));
}

}  // namespace

Rational matching_sum_pfaffian(const WeightedGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return Rational(1);
    if (n % 2 != 0) return Rational(0);
    std::vector<int> comp_id(n, -1);
    Rational total(1);
    int comps = 0;
    for (int v = 0; v < n; ++v) {
        if (comp_id[v] >= 0) continue;
        auto verts = component_of(g, v, comp_id, comps++);
        std::sort(verts.begin(), verts.end());
        Rational part = component_pfaffian_sum(g, verts);
        if (part.is_zero()) return Rational(0);
        total *= part;
    }
    return total;
}

}  // namespace hasm

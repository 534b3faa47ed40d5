#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hasm/asm_core.hpp"
#include "hasm/exact.hpp"

namespace hasm {

struct Coord {
    int x = 0;
    int y = 0;
    bool operator==(const Coord& o) const { return x == o.x && y == o.y; }
    bool operator<(const Coord& o) const { return x != o.x ? x < o.x : y < o.y; }
    std::string str() const { return std::to_string(x) + "," + std::to_string(y); }
};

struct GraphVertex {
    Coord pos;
    std::vector<std::string> tags;
};

struct GraphEdge {
    int u = 0;  // always u < v
    int v = 0;
    Rational w = Rational(1);
    std::vector<std::string> tags;
};

// Simple undirected graph with 2D lattice coordinates and exact positive
// edge weights. Coordinates are unique and double as stable identity; the
// rewrite operations return fresh graphs rather than mutating shared state.
class WeightedGraph {
  public:
    int add_vertex(Coord p, std::vector<std::string> tags = {});
    int ensure_vertex(Coord p);
    void add_edge(int u, int v, const Rational& w = Rational(1),
                  std::vector<std::string> tags = {});
    void add_edge(Coord a, Coord b, const Rational& w = Rational(1),
                  std::vector<std::string> tags = {});

    int vertex_count() const { return (int)verts_.size(); }
    int edge_count() const { return (int)edges_.size(); }
    const GraphVertex& vertex(int i) const { return verts_[i]; }
    const GraphEdge& edge(int i) const { return edges_[i]; }
    const std::vector<GraphVertex>& vertices() const { return verts_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    std::optional<int> find_vertex(Coord p) const;
    int require_vertex(Coord p) const;
    bool has_edge(int u, int v) const { return find_edge(u, v).has_value(); }
    std::optional<int> find_edge(int u, int v) const;
    const Rational& weight(int u, int v) const;
    void set_weight(int u, int v, const Rational& w);
    void scale_incident_weights(int v, const Rational& lambda);

    // neighbor vertex ids, ascending
    std::vector<int> neighbors(int v) const;
    int degree(int v) const { return (int)adj_[v].size(); }

    WeightedGraph remove_vertices(const std::set<int>& dead) const;
    WeightedGraph translated(int dx, int dy) const;
    WeightedGraph scaled(int factor) const;
    void add_vertex_tag(int v, const std::string& tag);

    // True when the two graphs coincide after translating b's bounding-box
    // corner onto a's: same coordinates, same edges, same weights.
    static bool same_up_to_translation(const WeightedGraph& a, const WeightedGraph& b);

    Coord bbox_min() const;

  private:
    std::vector<GraphVertex> verts_;
    std::vector<GraphEdge> edges_;
    std::map<Coord, int> index_;
    std::vector<std::vector<std::pair<int, int>>> adj_;  // (neighbor, edge idx)
    std::map<std::pair<int, int>, int> edge_index_;
};

struct KeptPositions {
    std::vector<int> xs;  // strictly increasing, 1-based bottom positions
    static KeptPositions of(std::vector<int> v);
};

// An m x k array of diamond squares. Square (r,c) is the 4-cycle on
// L=(2c-2,-2r+2), T=(2c-1,-2r+3), R=(2c,-2r+2), B=(2c-1,-2r+1); neighboring
// squares share side/peak vertices. All weights 1.
WeightedGraph build_aztec_rectangle(int m, int k);

// Same with every bottom-row peak deleted except those at the kept positions.
WeightedGraph build_aztec_rectangle_kept_bottom(int m, int k, const KeptPositions& xs);

// Halved Aztec diamond summing all 2^n boundary conditions: the n x (2n-1)
// rectangle keeping bottom peaks 1, 3, ..., 2n-1.
WeightedGraph build_teeth_region(int n);

// Weighted halved Aztec diamond G_n: n x 2n rectangle, squares (r,c) with
// r+c even carry weight 1/2, plus n tooth vertices below the bottom peaks.
WeightedGraph build_gn(int n);

// n x 2n fortress. Each pending pair of bottom edges is present or absent
// according to its pinned c_i (all entries must be fixed, none Free); the
// pair is present exactly when the even cell it covers has column sum 1,
// which means c_i = n-1 for odd n and c_i = n+1 for even n.
WeightedGraph build_fortress(int n, const BottomSpec& pending);

// Appends a forced two-vertex pendant path below every bottom-row even cell
// that has no downward edge; the matching count is unchanged.
WeightedGraph normalize_fortress_bottom(const WeightedGraph& g);

// x -> -x, translated back onto the original bounding box.
WeightedGraph mirror(const WeightedGraph& g);

}  // namespace hasm

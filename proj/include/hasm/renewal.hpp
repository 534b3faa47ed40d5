#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hasm/lattice_graphs.hpp"
#include "hasm/matchings.hpp"

namespace hasm {

// One occurrence of the urban-renewal pattern: an inner 4-cycle whose
// vertices have degree exactly 3, each attached by a weight-1 edge to a
// distinct outer vertex. Compass roles come from the coordinates (w is the
// strict minimum in x, n the strict maximum in y, and so on).
struct RenewalSite {
    int w, n, e, s;      // inner vertex ids
    int ow, on, oe, os;  // outer attachment ids
};

// All pattern occurrences, sorted by the inner square's center. Occurrences
// may share outer vertices, but a vertex that is inner in one reported site
// does not appear in any other reported site.
std::vector<RenewalSite> find_renewal_sites(const WeightedGraph& g);

// The occurrence whose inner north vertex sits at the given coordinate.
std::optional<RenewalSite> find_site_with_north(const WeightedGraph& g, Coord north_inner);

// Contract the four attachment edges and replace the inner weights a,b,c,d
// by c,d,a,b over ac+bd. Returns (G', ac+bd) with M(G) = (ac+bd) * M(G').
// A degenerate site (repeated outers, or outers already adjacent) is
// rejected with std::invalid_argument.
std::pair<WeightedGraph, Rational> apply_urban_renewal(const WeightedGraph& g,
                                                       const RenewalSite& site);

// Replace v by a path a - mid - b of weight-1 edges; the edges to side_a
// reattach to a, the rest to b. M is unchanged.
WeightedGraph split_vertex_three(const WeightedGraph& g, int v, const std::vector<int>& side_a,
                                 Coord pos_a, Coord pos_mid, Coord pos_b);

// Scale every edge at v by lambda; M scales by lambda, recorded as factor
// 1/lambda under the convention M(in) = factor * M(out).
std::pair<WeightedGraph, Rational> gauge_scale_vertex(const WeightedGraph& g, int v,
                                                      const Rational& lambda);

struct StripResult {
    WeightedGraph graph;
    Rational factor = Rational(1);  // product of removed pendant edge weights
    bool unmatchable = false;       // a degree-0 vertex appeared: M = 0
};

// Repeatedly remove a degree-1 vertex together with its neighbor (the
// pendant edge is forced). Deterministic: smallest coordinate first.
StripResult strip_forced_edges(const WeightedGraph& g);

// Weight-1 structure whose vertices pair among themselves in every perfect
// matching, so M is unchanged.
struct DentFill {
    std::vector<Coord> vertices;
    std::vector<std::pair<Coord, Coord>> edges;  // all weight 1
};

// Adds the structure and verifies (exactly, via the Pfaffian engine, plus
// exhaustively when the host is small) that M did not change.
WeightedGraph fill_dents(const WeightedGraph& g, const DentFill& fill);

// Divide the weight of every class edge by lambda. Requires (and checks by
// exhaustive enumeration) that every perfect matching contains exactly
// count_per_matching class edges; then M(G) = lambda^count * M(G').
std::pair<WeightedGraph, Rational> scale_edge_class(
    const WeightedGraph& g, const std::function<bool(const WeightedGraph&, const GraphEdge&)>& cls,
    const Rational& lambda, long count_per_matching);

enum class VerifyLevel { None, Phases, Steps };

struct TraceStep {
    std::string op;
    std::string params;
    Rational factor;
    Rational cumulative;
};

struct ReductionTrace {
    int n = 0;
    std::vector<TraceStep> steps;
    Rational cumulative = Rational(1);  // M(G_n) = cumulative * M(final)
    WeightedGraph final_graph;
};

// The scripted reduction of G_n: triple, renew every square, strip, fill the
// bottom dents, triple and renew again, apply the paired gauge rescaling,
// strip, and rescale the two weight classes. Ends in mirror(G_{n-1}) with
// cumulative factor 3 * 5^{n-1} / 2^{2n-1}; both facts are asserted, and M
// conservation is checked per step or per phase depending on the level.
ReductionTrace reduce_gn_once(int n, VerifyLevel level = VerifyLevel::Phases);

}  // namespace hasm

#pragma once

#include <utility>
#include <vector>

#include "hasm/lattice_graphs.hpp"

namespace hasm {

// A perfect matching as a sorted list of (u,v) vertex-id pairs, u < v.
using Matching = std::vector<std::pair<int, int>>;

// Every perfect matching exactly once, found by backtracking on the
// lowest-id unmatched vertex. An odd vertex count yields an empty list.
std::vector<Matching> enumerate_matchings(const WeightedGraph& g);

Rational matching_weight(const WeightedGraph& g, const Matching& m);

// Exact weighted matching generating function, by exhaustive search.
// This is the semantic reference implementation ("the oracle").
Rational matching_sum_bruteforce(const WeightedGraph& g);

// dir[e] is true when edge e is oriented from edge.u to edge.v. In a
// Kasteleyn orientation every bounded face, traversed clockwise, has an odd
// number of co-directed edges.
struct KasteleynOrientation {
    std::vector<bool> dir;
};

// Requires the straight-line embedding given by the coordinates to be
// planar; a crossing or an Euler-formula mismatch is rejected.
KasteleynOrientation kasteleyn_orient(const WeightedGraph& g);

// |Pf(K)| of the signed weighted adjacency matrix under a Kasteleyn
// orientation, with the Pfaffian computed by exact fraction-free skew
// elimination over the integers. Agrees with matching_sum_bruteforce.
Rational matching_sum_pfaffian(const WeightedGraph& g);

// Bounded faces as directed vertex cycles (interior on the left). Exposed
// for the orientation tests.
std::vector<std::vector<int>> bounded_faces(const WeightedGraph& g);

}  // namespace hasm

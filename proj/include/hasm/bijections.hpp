#pragma once

#include <string>
#include <vector>

#include "hasm/asm_core.hpp"
#include "hasm/matchings.hpp"

namespace hasm {

// The 2^{N_-(A)} perfect matchings of build_teeth_region(n) that correspond
// to the halved ASM A: each 0 entry contributes one determined edge, each -1
// one of its two opposite edge pairs, each 1 nothing; tooth i is matched
// northwest when c_i = n-1 and northeast when c_i = n+1. A rule set that
// fails to assemble into a perfect matching is a hard error.
std::vector<Matching> aztec_matchings_of_asm(const AsmMatrix& a, const WeightedGraph& region);

// Left inverse: recovers the ASM from the per-square matching edge counts
// (2, 1, 0 edges around an entry square mean -1, 0, 1).
AsmMatrix asm_of_aztec_matching(const WeightedGraph& region, int n, const Matching& m);

// The 2^{N_-even + N_+odd} matchings of the fortress built for A's pending
// pattern.
std::vector<Matching> fortress_matchings_of_asm(const AsmMatrix& a, const WeightedGraph& fortress);

BottomSpec pending_of(const AsmMatrix& a);

enum class Family { Teeth, Fortress };

struct PartitionReport {
    bool ok = true;
    std::string message;
    BigInt total_matchings = 0;  // over all boundary configurations
};

// Checks that the per-ASM matching sets are pairwise disjoint and cover all
// matchings of the region (per pending configuration for the fortress).
PartitionReport verify_partition(int n, Family family);

}  // namespace hasm

#pragma once

#include "hasm/exact.hpp"
#include "hasm/lattice_graphs.hpp"

namespace hasm {

// Matching count of an m x k Aztec rectangle with the bottom row removed
// except at the kept positions:
//   2^{C(m+1,2)} / prod_{i=1}^{m} (i-1)!  *  prod_{i<j} (x_j - x_i).
// The value does not depend on k. Non-integrality is a hard error.
BigInt aztec_rect_count(int m, const KeptPositions& xs);

// 2^{n^2}: the 2-enumeration of halved ASMs with free bottom row.
BigInt theorem1_value(int n);

// 3^n * 5^{C(n,2)}: the fortress-weighted enumeration.
BigInt theorem2_value(int n);

enum class FixedVariant { AllHigh, AllLow };  // c_i = n+1 for all i, or n-1

// Fortress-weighted enumeration with every c_i pinned.
BigInt theorem3_value(int n, FixedVariant variant);

// M(G_n) = 3^n * 5^{C(n,2)} / 2^{n^2}.
Rational gn_value(int n);

// Same value through the recursion M(G_1) = 3/2,
// M(G_n) = 3 * 5^{n-1} / 2^{2n-1} * M(G_{n-1}).
Rational gn_value_by_recursion(int n);

Rational gn_recursion_ratio(int n);  // 3 * 5^{n-1} / 2^{2n-1}

struct RemarkValues {
    BigInt full_asm_2enum;   // 2^{C(n,2)}
    BigInt fortress_2enum;   // 5^{n^2}
};

RemarkValues remark_values(int n);

}  // namespace hasm

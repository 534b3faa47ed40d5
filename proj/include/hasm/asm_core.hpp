#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hasm/exact.hpp"

namespace hasm {

// A full (k x k) or halved (n x 2n) alternating sign matrix. Entries are
// 1-based through at(), matching the usual index conventions; storage is a
// dense row-major vector.
struct AsmMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int8_t> a;  // row-major, values -1/0/1

    int at(int i, int j) const { return a[(i - 1) * cols + (j - 1)]; }
    void set(int i, int j, int v) { a[(i - 1) * cols + (j - 1)] = (int8_t)v; }

    bool is_halved() const { return cols == 2 * rows; }
    bool is_full() const { return rows == cols; }
    // Order parameter n of a halved matrix (cols = 2n).
    int order_n() const { return rows; }

    bool operator==(const AsmMatrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator<(const AsmMatrix& o) const { return a < o.a; }

    static AsmMatrix halved(int n) {
        return AsmMatrix{n, 2 * n, std::vector<int8_t>((size_t)n * 2 * n, 0)};
    }
    static AsmMatrix full(int k) {
        return AsmMatrix{k, k, std::vector<int8_t>((size_t)k * k, 0)};
    }
    static AsmMatrix from_rows(const std::vector<std::vector<int>>& rows);
};

// Heights h[i][j], 0 <= i <= rows, 0 <= j <= cols of the underlying ASM.
// Adjacent entries differ by exactly one.
struct HeightMatrix {
    std::vector<std::vector<int>> h;

    int row_count() const { return (int)h.size(); }
    int col_count() const { return h.empty() ? 0 : (int)h[0].size(); }

    bool operator==(const HeightMatrix& o) const { return h == o.h; }
};

// Constraint on the bottom height row of a halved ASM: position i of the
// pattern (n, c_1, n, c_2, ..., c_n, n) is either free or pinned to n-1/n+1.
enum class BottomConstraint : uint8_t { Free, Low, High };  // Low = n-1, High = n+1

struct BottomSpec {
    std::vector<BottomConstraint> c;  // length n

    static BottomSpec free_spec(int n) {
        return BottomSpec{std::vector<BottomConstraint>((size_t)n, BottomConstraint::Free)};
    }
    static BottomSpec all(int n, BottomConstraint k) {
        return BottomSpec{std::vector<BottomConstraint>((size_t)n, k)};
    }
};

// Counts of signed entries split by the parity of i+j (1-based indices).
struct WeightStats {
    long n_minus = 0;
    long n_minus_even = 0;
    long n_minus_odd = 0;
    long n_plus_even = 0;
    long n_plus_odd = 0;
};

struct ValidationResult {
    bool ok = true;
    std::string message;  // first violated constraint, with location
};

ValidationResult validate(const AsmMatrix& m);

// h[i][j] = i + j - 2 * sum(a[l][r], l <= i, r <= j)
HeightMatrix height_from_asm(const AsmMatrix& m);

// Inverse of height_from_asm via the mixed second difference. Throws
// std::invalid_argument on a corrupt height matrix.
AsmMatrix asm_from_height(const HeightMatrix& h);

WeightStats weight_stats(const AsmMatrix& m);

// The 2^{N_-(A)} weight and the fortress weight 2^{N_-even + N_+odd}.
BigInt domino_weight(const WeightStats& s);
BigInt fortress_weight(const WeightStats& s);

// c_i values (n-1 or n+1) read off a halved ASM's column sums.
std::vector<int> bottom_values(const AsmMatrix& m);

bool matches_bottom(const AsmMatrix& m, const BottomSpec& spec);

// All halved ASMs of order 2n whose height matrix has the constrained
// boundary shape, in lexicographic order of height-matrix rows.
std::vector<AsmMatrix> enumerate_halved_asms(int n, const BottomSpec& spec);

// All full k x k ASMs, in lexicographic order of height-matrix rows.
std::vector<AsmMatrix> enumerate_full_asms(int k);

// Left-right reflection (used by the reflection symmetry property).
AsmMatrix reflect_lr(const AsmMatrix& m);

}  // namespace hasm

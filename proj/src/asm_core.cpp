#include "hasm/asm_core.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hasm {

AsmMatrix AsmMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    AsmMatrix m;
    m.rows = (int)rows.size();
    m.cols = rows.empty() ? 0 : (int)rows[0].size();
    for (const auto& r : rows) {
        if ((int)r.size() != m.cols)
            throw std::invalid_argument("AsmMatrix: ragged rows");
        for (int v : r) m.a.push_back((int8_t)v);
    }
    return m;
}

namespace {

std::string loc(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// Nonzero entries must alternate starting and ending with +1 when sum_one,
// or alternate starting with +1 (any tail) when !sum_one.
ValidationResult check_line(const AsmMatrix& m, bool row_line, int idx, bool sum_one) {
    int len = row_line ? m.cols : m.rows;
    int expect = 1;  // next nonzero must be this
    int sum = 0;
    for (int t = 1; t <= len; ++t) {
        int i = row_line ? idx : t;
        int j = row_line ? t : idx;
        int v = m.at(i, j);
        if (v != -1 && v != 0 && v != 1)
            return {false, "entry not in {-1,0,1} at " + loc(i, j)};
        if (v == 0) continue;
        if (v != expect) {
            if (expect == 1 && v == -1) {
                std::string what = row_line ? "row" : "column";
                return {false, what + " " + std::to_string(idx) +
                                   ": nonzero entries fail to alternate starting with 1 at " +
                                   loc(i, j)};
            }
            return {false, (row_line ? std::string("row ") : std::string("column ")) +
                               std::to_string(idx) + ": consecutive nonzeros equal at " + loc(i, j)};
        }
        expect = -expect;
        sum += v;
    }
    if (sum_one && sum != 1)
        return {false, (row_line ? std::string("row ") : std::string("column ")) +
                           std::to_string(idx) + " sum is " + std::to_string(sum) + ", expected 1"};
    return {true, ""};
}

}  // namespace

ValidationResult validate(const AsmMatrix& m) {
    if (m.rows <= 0 || m.cols <= 0) return {false, "empty matrix"};
    if (!m.is_full() && !m.is_halved())
        return {false, "shape is neither k x k nor n x 2n"};
    for (int i = 1; i <= m.rows; ++i) {
        auto r = check_line(m, true, i, true);
        if (!r.ok) return r;
    }
    for (int j = 1; j <= m.cols; ++j) {
        // Columns alternate starting with 1 (topmost nonzero is 1). A full
        // ASM additionally has column sums 1.
        auto r = check_line(m, false, j, m.is_full());
        if (!r.ok) return r;
    }
    return {true, ""};
}

HeightMatrix height_from_asm(const AsmMatrix& m) {
    auto v = validate(m);
    if (!v.ok) throw std::invalid_argument("height_from_asm: invalid ASM: " + v.message);
    int R = m.rows, C = m.cols;
    HeightMatrix hm;
    hm.h.assign(R + 1, std::vector<int>(C + 1, 0));
    // partial[j] accumulates the column prefix sums row by row
    std::vector<int> partial(C + 1, 0);
    for (int j = 0; j <= C; ++j) hm.h[0][j] = j;
    for (int i = 1; i <= R; ++i) {
        int rowacc = 0;
        hm.h[i][0] = i;
        for (int j = 1; j <= C; ++j) {
            rowacc += m.at(i, j);
            partial[j] += rowacc;  // now the sum over l <= i, r <= j
            hm.h[i][j] = i + j - 2 * partial[j];
        }
    }
    return hm;
}

AsmMatrix asm_from_height(const HeightMatrix& hm) {
    int R = hm.row_count() - 1, C = hm.col_count() - 1;
    if (R <= 0 || C <= 0) throw std::invalid_argument("asm_from_height: empty");
    for (int i = 0; i <= R; ++i)
        for (int j = 0; j <= C; ++j) {
            if (i < R && std::abs(hm.h[i][j] - hm.h[i + 1][j]) != 1)
                throw std::invalid_argument("asm_from_height: vertical step != 1 at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            if (j < C && std::abs(hm.h[i][j] - hm.h[i][j + 1]) != 1)
                throw std::invalid_argument("asm_from_height: horizontal step != 1 at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
    AsmMatrix m;
    m.rows = R;
    m.cols = C;
    m.a.assign((size_t)R * C, 0);
    for (int i = 1; i <= R; ++i)
        for (int j = 1; j <= C; ++j) {
            int d = hm.h[i][j] - hm.h[i - 1][j] - hm.h[i][j - 1] + hm.h[i - 1][j - 1];
            if (d != -2 && d != 0 && d != 2)
                throw std::invalid_argument("asm_from_height: corrupt mixed difference at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            m.set(i, j, -d / 2);
        }
    return m;
}

WeightStats weight_stats(const AsmMatrix& m) {
    auto v = validate(m);
    if (!v.ok) throw std::invalid_argument("weight_stats: invalid ASM: " + v.message);
    WeightStats s;
    for (int i = 1; i <= m.rows; ++i)
        for (int j = 1; j <= m.cols; ++j) {
            int val = m.at(i, j);
            if (val == 0) continue;
            bool even = ((i + j) % 2) == 0;
            if (val == -1) {
                ++s.n_minus;
                (even ? s.n_minus_even : s.n_minus_odd)++;
            } else {
                (even ? s.n_plus_even : s.n_plus_odd)++;
            }
        }
    return s;
}

BigInt domino_weight(const WeightStats& s) {
    return int_pow(2, (unsigned long)s.n_minus);
}

BigInt fortress_weight(const WeightStats& s) {
    return int_pow(2, (unsigned long)(s.n_minus_even + s.n_plus_odd));
}

std::vector<int> bottom_values(const AsmMatrix& m) {
    if (!m.is_halved()) throw std::invalid_argument("bottom_values: not a halved ASM");
    int n = m.order_n();
    std::vector<int> c(n);
    for (int i = 1; i <= n; ++i) {
        int colsum = 0;
        for (int l = 1; l <= n; ++l) colsum += m.at(l, 2 * i - 1);
        // c_i = n + 1 - 2 * colsum(2i-1)
        c[i - 1] = n + 1 - 2 * colsum;
    }
    return c;
}

bool matches_bottom(const AsmMatrix& m, const BottomSpec& spec) {
    auto c = bottom_values(m);
    int n = m.order_n();
    for (int i = 0; i < n; ++i) {
        if (spec.c[i] == BottomConstraint::Low && c[i] != n - 1) return false;
        if (spec.c[i] == BottomConstraint::High && c[i] != n + 1) return false;
    }
    return true;
}

namespace {

// Backtracking over height-matrix rows. Each new row must step by one both
// against the previous row and within itself; pins fix individual entries.
void enumerate_heights(int R, int C, const std::vector<std::vector<int>>& pins,
                       const std::function<void(const HeightMatrix&)>& emit) {
    HeightMatrix hm;
    hm.h.assign(R + 1, std::vector<int>(C + 1, 0));
    for (int j = 0; j <= C; ++j) hm.h[0][j] = j;  // top boundary is always 0..C

    std::function<void(int, int)> place = [&](int i, int j) {
        if (i > R) {
            emit(hm);
            return;
        }
        if (j > C) {
            place(i + 1, 0);
            return;
        }
        int pin = pins[i][j];
        // candidates in increasing order keeps the stream lexicographic
        for (int v : {hm.h[i - 1][j] - 1, hm.h[i - 1][j] + 1}) {
            if (pin != INT32_MIN && v != pin) continue;
            if (j > 0 && std::abs(v - hm.h[i][j - 1]) != 1) continue;
            hm.h[i][j] = v;
            place(i, j + 1);
        }
    };
    place(1, 0);
}

}  // namespace

std::vector<AsmMatrix> enumerate_halved_asms(int n, const BottomSpec& spec) {
    if (n < 1) throw std::invalid_argument("enumerate_halved_asms: n must be >= 1");
    if ((int)spec.c.size() != n)
        throw std::invalid_argument("enumerate_halved_asms: BottomSpec length != n");
    int R = n, C = 2 * n;
    const int unpinned = INT32_MIN;
    std::vector<std::vector<int>> pins(R + 1, std::vector<int>(C + 1, unpinned));
    for (int i = 1; i <= R; ++i) {
        pins[i][0] = i;
        pins[i][C] = C - i;
    }
    for (int j = 0; j <= C; j += 2) pins[R][j] = n;
    for (int i = 1; i <= n; ++i) {
        if (spec.c[i - 1] == BottomConstraint::Low) pins[R][2 * i - 1] = n - 1;
        if (spec.c[i - 1] == BottomConstraint::High) pins[R][2 * i - 1] = n + 1;
    }
    std::vector<AsmMatrix> out;
    enumerate_heights(R, C, pins, [&](const HeightMatrix& hm) {
        out.push_back(asm_from_height(hm));
    });
    return out;
}

std::vector<AsmMatrix> enumerate_full_asms(int k) {
    if (k < 1) throw std::invalid_argument("enumerate_full_asms: k must be >= 1");
    const int unpinned = INT32_MIN;
    std::vector<std::vector<int>> pins(k + 1, std::vector<int>(k + 1, unpinned));
    for (int i = 1; i <= k; ++i) {
        pins[i][0] = i;
        pins[i][k] = k - i;
    }
    for (int j = 0; j <= k; ++j) pins[k][j] = k - j;
    std::vector<AsmMatrix> out;
    enumerate_heights(k, k, pins, [&](const HeightMatrix& hm) {
        out.push_back(asm_from_height(hm));
    });
    return out;
}

AsmMatrix reflect_lr(const AsmMatrix& m) {
    AsmMatrix r = m;
    for (int i = 1; i <= m.rows; ++i)
        for (int j = 1; j <= m.cols; ++j) r.set(i, j, m.at(i, m.cols + 1 - j));
    return r;
}

}  // namespace hasm

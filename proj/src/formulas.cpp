#include "hasm/formulas.hpp"

#include <stdexcept>

namespace hasm {

BigInt aztec_rect_count(int m, const KeptPositions& xs) {
    if ((int)xs.xs.size() != m)
        throw std::invalid_argument("aztec_rect_count: need exactly m kept positions");
    BigInt numer = int_pow(2, (unsigned long)(binom((unsigned long)m + 1, 2).get_ui()));
    for (size_t i = 0; i < xs.xs.size(); ++i)
        for (size_t j = i + 1; j < xs.xs.size(); ++j) numer *= xs.xs[j] - xs.xs[i];
    BigInt denom = 1;
    BigInt fact = 1;
    for (int i = 1; i <= m; ++i) {
        denom *= fact;  // (i-1)!
        fact *= i;
    }
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
    if (r != 0) throw std::logic_error("aztec_rect_count: non-integral value");
    return q;
}

BigInt theorem1_value(int n) {
    if (n < 1) throw std::invalid_argument("theorem1_value: n >= 1");
    return int_pow(2, (unsigned long)n * n);
}

BigInt theorem2_value(int n) {
    if (n < 1) throw std::invalid_argument("theorem2_value: n >= 1");
    return int_pow(3, (unsigned long)n) * int_pow(5, binom((unsigned long)n, 2).get_ui());
}

BigInt theorem3_value(int n, FixedVariant variant) {
    if (n < 1) throw std::invalid_argument("theorem3_value: n >= 1");
    BigInt five = int_pow(5, binom((unsigned long)n, 2).get_ui());
    bool doubled;
    if (variant == FixedVariant::AllHigh)
        doubled = (n % 2 == 1);  // 2^n 5^{C(n,2)} for odd n
    else
        doubled = (n % 2 == 0);
    return doubled ? int_pow(2, (unsigned long)n) * five : five;
}

Rational gn_value(int n) {
    if (n < 1) throw std::invalid_argument("gn_value: n >= 1");
    return Rational(theorem2_value(n), theorem1_value(n));
}

Rational gn_recursion_ratio(int n) {
    if (n < 2) throw std::invalid_argument("gn_recursion_ratio: n >= 2");
    return Rational(3 * int_pow(5, (unsigned long)n - 1), int_pow(2, 2 * (unsigned long)n - 1));
}

Rational gn_value_by_recursion(int n) {
    if (n < 1) throw std::invalid_argument("gn_value_by_recursion: n >= 1");
    Rational v(3, 2);
    for (int i = 2; i <= n; ++i) v *= gn_recursion_ratio(i);
    return v;
}

RemarkValues remark_values(int n) {
    if (n < 1) throw std::invalid_argument("remark_values: n >= 1");
    return {int_pow(2, binom((unsigned long)n, 2).get_ui()),
            int_pow(5, (unsigned long)n * n)};
}

}  // namespace hasm

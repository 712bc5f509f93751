#pragma once

// Exact coefficient layer for the L_p Steiner expansion.
//
// Everything here is exact rational arithmetic; the floating-point mirrors
// (suffix _d) evaluate the same sums in double for the geometry paths, where
// the exponent p need not be rational.
//
// Conventions (used consistently everywhere):
//   gen_binom(alpha, k) = 1                          if k = 0,
//                         0                          if k < 0 or alpha = 0,
//                         alpha(alpha-1)...(alpha-k+1)/k!   otherwise.
//   multinomial(i_1..i_l) = (i_1+...+i_l)! / (i_1! ... i_l!), 0 if any i_j < 0.
//   0^0 = 1 throughout.

#include "lpsteiner/compositions.hpp"
#include "lpsteiner/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lpsteiner {

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline Rational gen_binom(const Rational& alpha, int k) {
    if (k == 0) return Rational(1);
    if (k < 0 || alpha == Rational(0)) return Rational(0);
    Rational prod(1);
    for (int j = 0; j < k; ++j) {
        prod *= (alpha - Rational(j));
        prod /= Rational(j + 1);
    }
    return prod;
}

inline double gen_binom_d(double alpha, int k) {
    if (k == 0) return 1.0;
    if (k < 0 || alpha == 0.0) return 0.0;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= (alpha - j) / (j + 1);
    return prod;
}

// Integer binomial as a BigInt; 0 outside the triangle.
inline BigInt binom_int(int n, int k) {
    if (k < 0 || n < 0 || k > n) return BigInt(0);
    BigInt num = 1, den = 1;
    for (int j = 0; j < k; ++j) {
        num *= (n - j);
        den *= (j + 1);
    }
    return num / den;
}

inline Rational multinomial(const std::vector<int>& parts) {
    BigInt q = 0;
    for (int ij : parts) {
        if (ij < 0) return Rational(0);
        q += ij;
    }
    BigInt result = 1;
    BigInt upto = 0;
    // Product of binomials: (i_1+...+i_l)!/(i_1!...i_l!) = prod binom(partial sums, i_j).
    for (int ij : parts) {
        BigInt num = 1, den = 1;
        for (int j = 0; j < ij; ++j) {
            num *= (upto + 1 + j);
            den *= (j + 1);
        }
        result *= num / den;
        upto += ij;
    }
    return Rational(result);
}

namespace detail {
inline void require_valid_np(int n, const Rational& p) {
    if (n < 2) throw std::domain_error("coefficients: dimension n must be >= 2");
    if (p == Rational(-n)) throw std::domain_error("coefficients: p = -n is a pole");
}
}  // namespace detail

// Per-composition coefficient: gen_binom(n/(n+p), i_1+...+i_{n-1}) times the
// multinomial of the tuple.
inline Rational c_npi(int n, const Rational& p, const WeightedComposition& comp) {
    detail::require_valid_np(n, p);
    Rational a = Rational(n) / (Rational(n) + p);
    return gen_binom(a, composition_size(comp)) * multinomial(comp);
}

// Weight-m composition sum F_m = sum over {i: sum j*i_j = m} of
// c_npi * prod_j binom(n-1, j)^{i_j}.  F_0 = 1.
inline Rational F_m(int n, const Rational& p, int m) {
    detail::require_valid_np(n, p);
    if (m < 0) throw std::domain_error("F_m: m must be >= 0");
    Rational total(0);
    for (const auto& comp : weighted_compositions(m, n - 1)) {
        Rational term = c_npi(n, p, comp);
        for (std::size_t j = 0; j < comp.size(); ++j) {
            if (comp[j] == 0) continue;
            Rational b(binom_int(n - 1, static_cast<int>(j + 1)));
            for (int e = 0; e < comp[j]; ++e) term *= b;
        }
        total += term;
    }
    return total;
}

// Degree-k coefficient of the unit-ball expansion, assembled the long way:
// C(n,p,k) = sum_{m=0}^{k} gen_binom(n(1-p)/(n+p), k-m) * F_m(n,p,m).
inline Rational C_npk(int n, const Rational& p, int k) {
    detail::require_valid_np(n, p);
    if (k < 0) throw std::domain_error("C_npk: k must be >= 0");
    Rational beta = Rational(n) * (Rational(1) - p) / (Rational(n) + p);
    Rational total(0);
    for (int m = 0; m <= k; ++m) total += gen_binom(beta, k - m) * F_m(n, p, m);
    return total;
}

// The same coefficient in closed form: gen_binom(n(n-p)/(n+p), k).
inline Rational C_npk_closed(int n, const Rational& p, int k) {
    detail::require_valid_np(n, p);
    if (k < 0) throw std::domain_error("C_npk_closed: k must be >= 0");
    Rational alpha = Rational(n) * (Rational(n) - p) / (Rational(n) + p);
    return gen_binom(alpha, k);
}

// Predicted sign of C(n,p,k) from the case analysis of the exponent
// alpha = n(n-p)/(n+p) (independent of the composition sum):
//   k = 0                              -> positive (coefficient 1)
//   alpha = 0            (p = n)       -> zero for k >= 1
//   alpha = l integer> 0 (p=n(n-l)/(n+l)) -> positive k <= l, zero k > l
//   alpha < 0            (p<-n or p>n) -> (-1)^k
//   else  T = floor(alpha):            -> positive k <= T+1,
//                                         (-1)^(k-(T+1)) after.
inline Sign sign_prediction(int n, const Rational& p, int k) {
    detail::require_valid_np(n, p);
    if (k < 0) throw std::domain_error("sign_prediction: k must be >= 0");
    if (k == 0) return Sign::positive;
    Rational alpha = Rational(n) * (Rational(n) - p) / (Rational(n) + p);
    if (alpha == Rational(0)) return Sign::zero;
    if (alpha.sign() < 0) return (k % 2 == 0) ? Sign::positive : Sign::negative;
    if (alpha.is_integer()) {
        return (Rational(k) <= alpha) ? Sign::positive : Sign::zero;
    }
    BigInt threshold = alpha.floor() + 1;  // floor(n - 2p + 2p^2/(n+p)) + 1
    if (BigInt(k) <= threshold) return Sign::positive;
    BigInt excess = BigInt(k) - threshold;
    return (excess % 2 == 0) ? Sign::positive : Sign::negative;
}

inline Sign sign_of(const Rational& r) {
    int s = r.sign();
    return s == 0 ? Sign::zero : (s < 0 ? Sign::negative : Sign::positive);
}

}  // namespace lpsteiner

// Exact-rational evaluation of the windowed expectations. Big-integer
// binomials and an exact rational rho make this the arbitrary-precision
// reference the floating-point kernel is tested against.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

#include "capsim/model.hpp"

namespace capsim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Viability probability as an exact rational in (0, 1].
class RationalProb {
  public:
    static RationalProb from_fraction(const BigInt& num, const BigInt& den) {
        if (den <= 0) throw std::invalid_argument("rho: denominator must be positive");
        Rational v(num, den);
        if (v <= 0 || v > 1) throw std::invalid_argument("rho: must be in (0, 1]");
        return RationalProb(v);
    }

    // Exact value of the double (every finite double is a binary rational),
    // so kernel and oracle evaluate the same mathematical rho.
    static RationalProb from_double(double rho) {
        if (!std::isfinite(rho)) throw std::invalid_argument("rho: must be finite");
        int exp = 0;
        double frac = std::frexp(rho, &exp);  // rho = frac * 2^exp, frac in [0.5, 1)
        BigInt num = static_cast<std::int64_t>(std::ldexp(frac, 53));
        exp -= 53;
        BigInt den = 1;
        if (exp >= 0) {
            num <<= exp;
        } else {
            den <<= -exp;
        }
        return from_fraction(num, den);
    }

    const Rational& value() const { return rational_; }

  private:
    explicit RationalProb(Rational v) : rational_(std::move(v)) {}
    Rational rational_;
};

struct ExactExpectation {
    Rational variety;
    Rational avg_complexity;
};

inline constexpr int kMaxExactN = 64;

namespace detail {

inline BigInt big_binomial(int n, int k) {
    BigInt result = 1;
    for (int i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;  // exact: product of j consecutive integers divides by j!
    }
    return result;
}

}  // namespace detail

// Exact windowed moments: variety sum C(n,s) rho^s and the complexity
// ratio sum s C(n,s) rho^s / variety, both as reduced rationals.
inline ExactExpectation exact_expectation(int n, int l, WindowRadius r,
                                          const RationalProb& rho) {
    if (n < 0 || n > kMaxExactN) {
        throw std::invalid_argument("n: exact oracle requires 0 <= n <= " +
                                    std::to_string(kMaxExactN) + ", got " + std::to_string(n));
    }
    if (l < 0 || l > n) {
        throw std::invalid_argument("l: must satisfy 0 <= l <= n, got l=" + std::to_string(l) +
                                    " n=" + std::to_string(n));
    }
    const int s_min = r.is_bounded() ? std::max(0, l - r.value()) : 0;
    Rational m0 = 0, m1 = 0;
    Rational rho_pow = 1;
    for (int s = 0; s < s_min; ++s) rho_pow *= rho.value();
    for (int s = s_min; s <= l; ++s) {
        Rational term = Rational(detail::big_binomial(n, s)) * rho_pow;
        m0 += term;
        m1 += s * term;
        rho_pow *= rho.value();
    }
    ExactExpectation e;
    e.variety = m0;
    e.avg_complexity = m0 != 0 ? m1 / m0 : Rational(0);
    return e;
}

inline double rational_to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace capsim

#pragma once

#include <vector>

#include "semistatic/rational.hpp"

namespace semistatic {

// n!! for odd n >= -1; throws DomainError otherwise.
Integer double_factorial(long n);

// sum over k_1+...+k_m = p of multinomial(p; k) * (prod (2k_i - 1)!! - 1), by brute force.
Integer multinomial_lhs(long p, long m);
// 4^p p! m^(p-1)
Integer multinomial_rhs(long p, long m);

struct BoundReport {
    long p = 0;
    long m = 0;
    Integer lhs;
    Integer rhs;
    bool p_below_m = false;  // p < m
    bool holds() const { return lhs <= rhs; }
};

// Every pair 1 <= p <= p_max, 1 <= m <= m_max, plus every 1 <= p < m <= m_max.
std::vector<BoundReport> verify_multinomial_inequality(long p_max, long m_max);

// sigma^(2p) (t - s)^p (1 + 4^p p! / m); needs 1 <= p < m, s < t, sigma >= 0.
Rational dm2_bound(long p, long m, const Rational& sigma_bar, const Rational& s, const Rational& t);

// (2k - 1)!! sigma^(2k) t^k for k >= 0.
Rational moment_bound(long k, const Rational& sigma_bar, const Rational& t);

}  // namespace semistatic

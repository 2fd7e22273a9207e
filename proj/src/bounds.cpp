#include "semistatic/bounds.hpp"

#include <algorithm>
#include <functional>

#include "semistatic/errors.hpp"

namespace semistatic {

namespace {

Integer factorial(long n)
{
    Integer r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational power(const Rational& base, long e)
{
    Rational r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

Integer double_factorial(long n)
{
    if (n < -1 || n % 2 == 0) throw DomainError("double factorial needs an odd argument >= -1, got " + std::to_string(n));
    Integer r = 1;
    for (long i = n; i > 1; i -= 2) r *= i;
    return r;
}

Integer multinomial_lhs(long p, long m)
{
    if (p < 1 || m < 1) throw DomainError("multinomial_lhs needs p >= 1 and m >= 1");
    const Integer p_fact = factorial(p);
    Integer total = 0;
    std::vector<long> k(static_cast<std::size_t>(m), 0);
    std::function<void(std::size_t, long)> walk = [&](std::size_t i, long left) {
        if (i + 1 == k.size()) {
            k[i] = left;
            Integer denom = 1;
            Integer prod = 1;
            for (long ki : k) {
                denom *= factorial(ki);
                prod *= double_factorial(2 * ki - 1);
            }
            total += (p_fact / denom) * (prod - 1);
            return;
        }
        for (long v = 0; v <= left; ++v) {
            k[i] = v;
            walk(i + 1, left - v);
        }
    };
    walk(0, p);
    return total;
}

Integer multinomial_rhs(long p, long m)
{
    Integer r = factorial(p);
    for (long i = 0; i < p; ++i) r *= 4;
    for (long i = 0; i + 1 < p; ++i) r *= m;
    return r;
}

std::vector<BoundReport> verify_multinomial_inequality(long p_max, long m_max)
{
    if (p_max < 1 || m_max < 1) throw DomainError("verify_multinomial_inequality needs p_max, m_max >= 1");
    std::vector<BoundReport> out;
    for (long m = 1; m <= m_max; ++m) {
        const long top = std::max(p_max, m - 1);
        for (long p = 1; p <= top; ++p)
            out.push_back(BoundReport{p, m, multinomial_lhs(p, m), multinomial_rhs(p, m), p < m});
    }
    return out;
}

Rational dm2_bound(long p, long m, const Rational& sigma_bar, const Rational& s, const Rational& t)
{
    if (p < 1 || p >= m) throw DomainError("dm2_bound needs 1 <= p < m");
    if (!(s < t)) throw DomainError("dm2_bound needs s < t");
    if (sgn(sigma_bar) < 0) throw DomainError("dm2_bound needs a nonnegative volatility bound");
    const Rational factor = 1 + Rational(multinomial_rhs(p, 1)) / m;  // 4^p p! / m
    return power(sigma_bar, 2 * p) * power(t - s, p) * factor;
}

Rational moment_bound(long k, const Rational& sigma_bar, const Rational& t)
{
    if (k < 0) throw DomainError("moment_bound needs k >= 0");
    return Rational(double_factorial(2 * k - 1)) * power(sigma_bar, 2 * k) * power(t, k);
}

}  // namespace semistatic

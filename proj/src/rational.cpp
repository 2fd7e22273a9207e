#include "semistatic/rational.hpp"

#include <algorithm>
#include <cctype>

#include "semistatic/errors.hpp"

namespace semistatic {

Rational ratio(long num, long den)
{
    if (den == 0) throw DomainError("zero denominator");
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::vector<std::string> to_strings(const Vector& values)
{
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (!is_integer_literal(num) || (slash != std::string_view::npos && !is_digits(den)))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    if (num.front() == '+') num.remove_prefix(1);
    Integer p(std::string(num), 10);
    Integer q(1);
    if (slash != std::string_view::npos) {
        q = Integer(std::string(den), 10);
        if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit(std::size_t n, std::size_t index)
{
    Vector v = zeros(n);
    v.at(index) = 1;
    return v;
}

bool is_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational sum(const Vector& v)
{
    Rational s = 0;
    for (const auto& x : v) s += x;
    return s;
}

Rational dot(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational weighted_dot(const Vector& weights, const Vector& a, const Vector& b)
{
    if (a.size() != b.size() || weights.size() != a.size()) throw ShapeMismatch("weighted_dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(weights[i]) != 0) s += weights[i] * a[i] * b[i];
    return s;
}

Vector add(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("add: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector subtract(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("subtract: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector scale(const Vector& v, const Rational& factor)
{
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * factor;
    return r;
}

Vector hadamard(const Vector& a, const Vector& b)
{
    if (a.size() != b.size()) throw ShapeMismatch("hadamard: length mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return r;
}

Vector primitive(const Vector& v)
{
    Integer lcm_den = 1;
    for (const auto& x : v)
        if (sgn(x) != 0) lcm_den = lcm(lcm_den, Integer(x.get_den()));
    Integer g = 0;
    for (const auto& x : v)
        if (sgn(x) != 0) g = gcd(g, Integer(x.get_num() * (lcm_den / x.get_den())));
    if (g == 0) return v;
    Vector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Integer n = v[i].get_num() * (lcm_den / v[i].get_den());
        r[i] = Rational(Integer(n / g));
    }
    return r;
}

Vector primitive_oriented(const Vector& v)
{
    Vector r = primitive(v);
    for (const auto& x : r) {
        if (sgn(x) == 0) continue;
        if (sgn(x) < 0)
            for (auto& y : r) y = -y;
        break;
    }
    return r;
}

}  // namespace semistatic

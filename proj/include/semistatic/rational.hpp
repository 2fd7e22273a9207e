#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace semistatic {

using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

// num/den in lowest terms; den must be nonzero.
Rational ratio(long num, long den);

// Canonical text form: gcd-reduced, positive denominator, integers without "/1".
std::string to_string(const Rational& value);
std::vector<std::string> to_strings(const Vector& values);

// Accepts "p", "-p", "p/q", "-p/q". Throws ParseError on anything else or q = 0.
Rational parse_rational(std::string_view text);

Vector zeros(std::size_t n);
Vector unit(std::size_t n, std::size_t index);
bool is_zero(const Vector& v);
Rational sum(const Vector& v);
Rational dot(const Vector& a, const Vector& b);
Rational weighted_dot(const Vector& weights, const Vector& a, const Vector& b);

Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Vector& v, const Rational& factor);
Vector hadamard(const Vector& a, const Vector& b);

// Smallest integer vector with the same direction (signs kept).
Vector primitive(const Vector& v);
// primitive() with the first nonzero entry made positive.
Vector primitive_oriented(const Vector& v);

}  // namespace semistatic

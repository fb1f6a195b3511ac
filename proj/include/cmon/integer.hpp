#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cmon {

using Integer = mpz_class;
using Rational = mpq_class;

/* Floor division and the matching nonnegative remainder for m > 0. */
Integer floor_div(const Integer& n, const Integer& m);
Integer mod_floor(const Integer& n, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer isqrt(const Integer& n);   // floor(sqrt(n)), n >= 0
bool is_square(const Integer& n, Integer* root = nullptr);
bool is_probable_prime(const Integer& n);
int sign(const Integer& n);
int sign(const Rational& r);
Rational abs(const Rational& r);

/* Exponent of the prime p in n (n != 0). */
unsigned valuation_of(Integer n, const Integer& p);

std::int64_t to_int64(const Integer& n);   // throws if out of range
std::string to_string(const Integer& n);
std::string to_string(const Rational& r);
Rational make_rational(const Integer& num, const Integer& den = 1);

}  // namespace cmon

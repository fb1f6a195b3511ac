#include "cmon/integer.hpp"

#include <limits>

#include "cmon/error.hpp"

namespace cmon {

Integer floor_div(const Integer& n, const Integer& m) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return q;
}

Integer mod_floor(const Integer& n, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer isqrt(const Integer& n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n, Integer* root) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

int sign(const Integer& n) { return sgn(n); }
int sign(const Rational& r) { return sgn(r); }
Rational abs(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

unsigned valuation_of(Integer n, const Integer& p) {
  if (n == 0) fail(ErrorCode::ZeroInput, "valuation of zero");
  unsigned v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

std::int64_t to_int64(const Integer& n) {
  if (!n.fits_slong_p())
    fail(ErrorCode::ScaleExceeded, "integer " + n.get_str() + " exceeds 64 bits");
  return n.get_si();
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace cmon

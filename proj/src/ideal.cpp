#include "cmon/ideal.hpp"

#include <algorithm>
#include <map>

#include "cmon/error.hpp"

namespace cmon {

namespace {

struct Row {
  Integer x, y;
  std::vector<Integer> coef;
};

void axpy(Row& dst, const Integer& k, const Row& src) {
  dst.x -= k * src.x;
  dst.y -= k * src.y;
  for (std::size_t i = 0; i < dst.coef.size(); ++i) dst.coef[i] -= k * src.coef[i];
}

void negate(Row& r) {
  r.x = -r.x;
  r.y = -r.y;
  for (auto& c : r.coef) c = -c;
}

// Euclidean elimination on one coordinate; leaves at most one row with a
// nonzero entry there and returns its index (or -1), entry made positive.
int eliminate(std::vector<Row>& rows, const std::vector<int>& active, bool on_y) {
  auto coord = [on_y](const Row& r) -> const Integer& { return on_y ? r.y : r.x; };
  for (;;) {
    int best = -1;
    int nonzero = 0;
    for (int i : active) {
      if (coord(rows[i]) == 0) continue;
      ++nonzero;
      if (best < 0 || abs(coord(rows[i])) < abs(coord(rows[best]))) best = i;
    }
    if (nonzero <= 1) {
      if (best >= 0 && coord(rows[best]) < 0) negate(rows[best]);
      return best;
    }
    for (int i : active) {
      if (i == best || coord(rows[i]) == 0) continue;
      Integer k = floor_div(coord(rows[i]), coord(rows[best]));
      axpy(rows[i], k, rows[best]);
    }
  }
}

struct Hermite {
  Integer a, b, c;
  Row arow, brow;  // (a, 0) and (b, c)
};

Hermite hermite(std::vector<Row> rows, bool quadratic) {
  std::vector<int> all(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) all[i] = static_cast<int>(i);
  Hermite h;
  int piv = -1;
  if (quadratic) {
    piv = eliminate(rows, all, true);
    if (piv < 0) fail(ErrorCode::Internal, "lattice is not of full rank");
  }
  std::vector<int> rest;
  for (int i : all)
    if (i != piv) rest.push_back(i);
  int ar = eliminate(rows, rest, false);
  if (ar < 0) fail(ErrorCode::Internal, "lattice is not of full rank");
  h.arow = rows[ar];
  h.a = h.arow.x;
  if (quadratic) {
    h.brow = rows[piv];
    Integer k = floor_div(h.brow.x, h.a);
    axpy(h.brow, k, h.arow);
    h.b = h.brow.x;
    h.c = h.brow.y;
  } else {
    h.b = 0;
    h.c = 1;
    h.brow.coef.assign(rows.size(), 0);
  }
  return h;
}

Integer common_denominator(const std::vector<Element>& xs) {
  Integer D = 1;
  for (const auto& x : xs) {
    D = lcm(D, x.p().get_den());
    D = lcm(D, x.q().get_den());
  }
  return D;
}

std::vector<Row> integral_rows(const std::vector<Element>& xs, const Integer& D) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational px = xs[i].p() * Rational(D), qx = xs[i].q() * Rational(D);
    Row r{px.get_num(), qx.get_num(), std::vector<Integer>(xs.size(), 0)};
    r.coef[i] = 1;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Coefficients expressing (tx, ty) in the Hermite basis, if it lies in the lattice.
std::optional<std::vector<Integer>> express(const Hermite& h, const Integer& tx, const Integer& ty) {
  if (!mpz_divisible_p(ty.get_mpz_t(), h.c.get_mpz_t())) return std::nullopt;
  Integer k = ty / h.c;
  Integer rem = tx - k * h.b;
  if (!mpz_divisible_p(rem.get_mpz_t(), h.a.get_mpz_t())) return std::nullopt;
  Integer l = rem / h.a;
  std::vector<Integer> coef(h.arow.coef.size());
  for (std::size_t i = 0; i < coef.size(); ++i) coef[i] = k * h.brow.coef[i] + l * h.arow.coef[i];
  return coef;
}

Integer tonelli_shanks(const Integer& n, const Integer& p) {
  // p odd prime, n a nonzero square mod p.
  if (p % 4 == 3) {
    Integer r;
    Integer e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Integer q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer m = s, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), n.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  while (t != 1) {
    unsigned i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Integer b = c;
    for (unsigned j = 0; j + 1 + i < m.get_ui(); ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

}  // namespace

Ideal Ideal::from_lattice(const NumberField& K, const std::vector<Element>& zgens) {
  if (zgens.empty()) fail(ErrorCode::ZeroInput, "ideal with no generators");
  Integer D = common_denominator(zgens);
  std::vector<Row> rows = integral_rows(zgens, D);
  bool nonzero = false;
  for (const auto& r : rows)
    if (r.x != 0 || r.y != 0) nonzero = true;
  if (!nonzero) fail(ErrorCode::ZeroInput, "zero ideal");
  Hermite h = hermite(std::move(rows), K.is_quadratic());
  Ideal I(K);
  Integer content = K.is_quadratic() ? gcd(gcd(h.a, h.b), h.c) : h.a;
  Integer g = gcd(D, content);
  I.den_ = D / g;
  I.a_ = h.a / g;
  if (K.is_quadratic()) {
    I.b_ = h.b / g;
    I.c_ = h.c / g;
  }
  return I;
}

Ideal Ideal::unit(const NumberField& K) { return Ideal(K); }

Ideal Ideal::principal(const Element& x) {
  if (x.is_zero()) fail(ErrorCode::ZeroInput, "principal ideal of zero");
  return generated_by(x.field(), {x});
}

Ideal Ideal::generated_by(const NumberField& K, const std::vector<Element>& gens) {
  std::vector<Element> z;
  for (const auto& g : gens) {
    require_same_field(K, g.field());
    if (g.is_zero()) continue;
    z.push_back(g);
    if (K.is_quadratic()) z.push_back(g * Element::omega(K));
  }
  if (z.empty()) fail(ErrorCode::ZeroInput, "zero ideal");
  return from_lattice(K, z);
}

Ideal Ideal::parse(const NumberField& K, const std::string& spec) {
  std::vector<Element> gens;
  std::string s = spec;
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = s.find(',', start);
    std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    gens.push_back(Element::parse(K, part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  bool nonzero = std::any_of(gens.begin(), gens.end(), [](const Element& g) { return !g.is_zero(); });
  if (!nonzero) fail(ErrorCode::Parse, "ideal spec '" + spec + "' generates the zero ideal");
  return generated_by(K, gens);
}

bool Ideal::is_unit() const { return den_ == 1 && a_ == 1 && c_ == 1; }

Integer Ideal::integral_norm() const {
  if (!is_integral()) fail(ErrorCode::Precondition, "integral norm of a non-integral ideal");
  return K_.is_quadratic() ? Integer(a_ * c_) : a_;
}

Rational Ideal::norm() const {
  Integer n = K_.is_quadratic() ? Integer(a_ * c_) : a_;
  Integer d = K_.is_quadratic() ? Integer(den_ * den_) : den_;
  return make_rational(n, d);
}

const Integer& Ideal::min_integer() const {
  if (!is_integral()) fail(ErrorCode::Precondition, "min_integer of a non-integral ideal");
  return a_;
}

std::vector<Element> Ideal::basis() const {
  Rational s = scale();
  std::vector<Element> out{Element(K_, Rational(a_) * s, 0)};
  if (K_.is_quadratic()) out.emplace_back(K_, Rational(b_) * s, Rational(c_) * s);
  return out;
}

bool Ideal::contains(const Element& x) const {
  require_same_field(K_, x.field());
  if (x.is_zero()) return true;
  Rational px = x.p() * Rational(den_), qx = x.q() * Rational(den_);
  if (px.get_den() != 1 || qx.get_den() != 1) return false;
  Integer p = px.get_num(), q = qx.get_num();
  if (K_.is_rational()) return mpz_divisible_p(p.get_mpz_t(), a_.get_mpz_t()) != 0;
  if (!mpz_divisible_p(q.get_mpz_t(), c_.get_mpz_t())) return false;
  Integer rem = p - (q / c_) * b_;
  return mpz_divisible_p(rem.get_mpz_t(), a_.get_mpz_t()) != 0;
}

bool Ideal::is_subset_of(const Ideal& J) const {
  require_same_field(K_, J.K_);
  for (const auto& e : basis())
    if (!J.contains(e)) return false;
  return true;
}

bool Ideal::is_rational_multiple() const {
  return K_.is_rational() || (b_ == 0 && a_ == c_);
}

Ideal Ideal::conj() const {
  if (K_.is_rational()) return *this;
  std::vector<Element> z;
  for (const auto& e : basis()) z.push_back(e.conj());
  return from_lattice(K_, z);
}

Ideal Ideal::inverse() const {
  if (K_.is_rational()) {
    Ideal I(K_);
    I.a_ = den_;
    I.den_ = a_;
    return I;
  }
  Rational n = norm();
  std::vector<Element> z;
  for (const auto& e : conj().basis()) z.push_back(e * Rational(1 / n));
  return from_lattice(K_, z);
}

Ideal Ideal::operator*(const Ideal& J) const {
  require_same_field(K_, J.K_);
  std::vector<Element> z;
  for (const auto& x : basis())
    for (const auto& y : J.basis()) z.push_back(x * y);
  return from_lattice(K_, z);
}

Ideal Ideal::operator*(const Element& x) const {
  if (x.is_zero()) fail(ErrorCode::ZeroInput, "ideal times zero");
  std::vector<Element> z;
  for (const auto& e : basis()) z.push_back(e * x);
  return from_lattice(K_, z);
}

Ideal Ideal::operator+(const Ideal& J) const {
  require_same_field(K_, J.K_);
  std::vector<Element> z = basis();
  for (const auto& y : J.basis()) z.push_back(y);
  return from_lattice(K_, z);
}

Ideal Ideal::intersect(const Ideal& J) const { return (*this * J) * (*this + J).inverse(); }

Ideal Ideal::pow(int n) const {
  Ideal base = n < 0 ? inverse() : *this;
  unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
  Ideal r = unit(K_);
  while (e) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

std::string Ideal::to_string() const {
  Rational s = scale();
  if (is_rational_multiple()) return cmon::to_string(Rational(a_) * s);
  std::string out;
  for (const auto& e : basis()) {
    if (!out.empty()) out += ",";
    out += e.to_string();
  }
  return "(" + out + ")";
}

bool ideal_less(const Ideal& x, const Ideal& y) {
  if (int c = cmp(x.norm(), y.norm())) return c < 0;
  if (x.den() != y.den()) return x.den() < y.den();
  if (x.a() != y.a()) return x.a() < y.a();
  if (x.b() != y.b()) return x.b() < y.b();
  return x.c() < y.c();
}

std::size_t IdealHash::operator()(const Ideal& I) const {
  auto h = [](const Integer& n) { return std::hash<long>()(mpz_get_si(n.get_mpz_t())); };
  return ((h(I.den()) * 1000003u ^ h(I.a())) * 1000003u ^ h(I.b())) * 1000003u ^ h(I.c());
}

Integer PrimeIdeal::norm() const { return residue_degree == 1 ? under : Integer(under * under); }

bool prime_less(const PrimeIdeal& x, const PrimeIdeal& y) { return ideal_less(x.ideal, y.ideal); }

std::vector<PrimeIdeal> primes_above(const NumberField& K, const Integer& p) {
  if (!is_probable_prime(p)) fail(ErrorCode::InvalidArgument, p.get_str() + " is not prime");
  if (K.is_rational()) return {PrimeIdeal{Ideal::generated_by(K, {from_integer(K, p)}), p, 1, false}};
  // Roots of w^2 - B w - A modulo p give the primes (p, w - r).
  const Integer& A = K.wsq_const();
  const Integer& B = K.wsq_lin();
  std::vector<Integer> roots;
  if (p == 2) {
    for (Integer r = 0; r < 2; ++r)
      if (mod_floor(r * r - B * r - A, p) == 0) roots.push_back(r);
  } else {
    Integer disc = mod_floor(B * B + 4 * A, p);
    Integer inv2 = (p + 1) / 2;
    if (disc == 0) {
      roots.push_back(mod_floor(B * inv2, p));
    } else if (mpz_legendre(disc.get_mpz_t(), p.get_mpz_t()) == 1) {
      Integer s = tonelli_shanks(disc, p);
      roots.push_back(mod_floor((B + s) * inv2, p));
      roots.push_back(mod_floor((B - s) * inv2, p));
    }
  }
  std::vector<PrimeIdeal> out;
  Element w = Element::omega(K);
  if (roots.empty()) {
    out.push_back(PrimeIdeal{Ideal::generated_by(K, {from_integer(K, p)}), p, 2, false});
    return out;
  }
  bool ramified = roots.size() == 1 || roots[0] == roots[1];
  if (ramified) roots.resize(1);
  for (const auto& r : roots) {
    Ideal P = Ideal::generated_by(K, {from_integer(K, p), w - from_integer(K, r)});
    out.push_back(PrimeIdeal{P, p, 1, ramified});
  }
  std::sort(out.begin(), out.end(), prime_less);
  return out;
}

std::vector<PrimeIdeal> primes_up_to(const NumberField& K, const Integer& bound) {
  std::vector<PrimeIdeal> out;
  for (Integer p = 2; p <= bound; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t())) {
    for (auto& P : primes_above(K, p))
      if (P.norm() <= bound) out.push_back(P);
  }
  std::sort(out.begin(), out.end(), prime_less);
  return out;
}

std::optional<PrimeIdeal> as_prime(const Ideal& I) {
  if (!I.is_integral() || I.is_unit()) return std::nullopt;
  Integer n = I.integral_norm();
  Integer p = n;
  // The norm of a prime is p or p^2.
  Integer r;
  if (!is_probable_prime(p)) {
    if (!is_square(n, &r) || !is_probable_prime(r)) return std::nullopt;
    p = r;
  }
  for (auto& P : primes_above(I.field(), p))
    if (P.ideal == I) return P;
  return std::nullopt;
}

PrimeIdeal require_prime(const Ideal& I) {
  auto P = as_prime(I);
  if (!P) fail(ErrorCode::InvalidArgument, "ideal " + I.to_string() + " is not prime");
  return *P;
}

namespace {

std::vector<Integer> rational_prime_divisors(Integer n, long bound) {
  std::vector<Integer> out;
  n = abs(n);
  for (long p = 2; p <= bound && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) n /= p;
    }
  }
  if (n > 1) {
    if (n > bound)
      fail(ErrorCode::FactorBoundExceeded,
           "norm has a cofactor " + n.get_str() + " beyond the trial-division bound " + std::to_string(bound));
    out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

long integral_valuation(const Ideal& J, const PrimeIdeal& P) {
  long v = 0;
  Ideal Pk = P.ideal;
  while (J.is_subset_of(Pk)) {
    ++v;
    Pk = Pk * P.ideal;
  }
  return v;
}

}  // namespace

std::vector<PrimePower> factor(const Ideal& I, long trial_bound) {
  const NumberField& K = I.field();
  Integer numer = K.is_quadratic() ? Integer(I.a() * I.c()) : I.a();
  std::vector<PrimePower> out;
  for (const auto& p : rational_prime_divisors(numer * I.den(), trial_bound)) {
    for (auto& P : primes_above(K, p)) {
      long v = valuation(I, P);
      if (v != 0) out.push_back(PrimePower{P, v});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& x, const PrimePower& y) { return prime_less(x.prime, y.prime); });
  return out;
}

Ideal from_factorization(const NumberField& K, const std::vector<PrimePower>& f) {
  Ideal I = Ideal::unit(K);
  for (const auto& pp : f) I = I * pp.prime.ideal.pow(static_cast<int>(pp.exponent));
  return I;
}

std::vector<PrimeIdeal> support(const Ideal& I) {
  std::vector<PrimeIdeal> out;
  for (auto& pp : factor(I)) out.push_back(pp.prime);
  return out;
}

long valuation(const Ideal& I, const PrimeIdeal& P) {
  require_same_field(I.field(), P.ideal.field());
  Ideal J = I * from_integer(I.field(), I.den());
  long v = integral_valuation(J, P);
  if (I.den() != 1 && mpz_divisible_p(I.den().get_mpz_t(), P.under.get_mpz_t()))
    v -= static_cast<long>(valuation_of(I.den(), P.under)) * P.ramification();
  return v;
}

long valuation(const Element& x, const PrimeIdeal& P) {
  if (x.is_zero()) fail(ErrorCode::ZeroInput, "valuation of zero");
  return valuation(Ideal::principal(x), P);
}

Element reduce_mod(const Element& x, const Ideal& I) {
  require_same_field(x.field(), I.field());
  if (!I.is_integral()) fail(ErrorCode::Precondition, "reduction modulo a non-integral ideal");
  if (!x.is_integral()) fail(ErrorCode::Precondition, "reduction of a non-integral element");
  const NumberField& K = x.field();
  Integer p = x.p().get_num(), q = x.q().get_num();
  if (K.is_rational()) return from_integer(K, mod_floor(p, I.a()));
  Integer ry = mod_floor(q, I.c());
  Integer k = (q - ry) / I.c();
  Integer rx = mod_floor(p - k * I.b(), I.a());
  return Element(K, Rational(rx), Rational(ry));
}

bool congruent(const Element& x, const Element& y, const Ideal& I) { return I.contains(x - y); }

std::vector<Element> residue_representatives(const Ideal& I) {
  if (!I.is_integral()) fail(ErrorCode::Precondition, "residues modulo a non-integral ideal");
  const NumberField& K = I.field();
  std::vector<Element> out;
  Integer cy = K.is_quadratic() ? I.c() : Integer(1);
  for (Integer x = 0; x < I.a(); ++x)
    for (Integer y = 0; y < cy; ++y) out.emplace_back(K, Rational(x), Rational(y));
  std::sort(out.begin(), out.end(), [](const Element& u, const Element& v) {
    if (int c = cmp(u.q(), v.q())) return c < 0;
    return cmp(u.p(), v.p()) < 0;
  });
  return out;
}

std::optional<std::pair<Element, Element>> split_in_sum(const Element& target, const Ideal& I,
                                                        const Ideal& J) {
  require_same_field(I.field(), J.field());
  const NumberField& K = I.field();
  std::vector<Element> gens = I.basis();
  std::size_t nI = gens.size();
  for (auto& e : J.basis()) gens.push_back(e);
  gens.push_back(target);
  Integer D = common_denominator(gens);
  gens.pop_back();
  std::vector<Row> rows = integral_rows(gens, D);
  Hermite h = hermite(rows, K.is_quadratic());
  Rational tx = target.p() * Rational(D), ty = target.q() * Rational(D);
  auto coef = express(h, tx.get_num(), ty.get_num());
  if (!coef) return std::nullopt;
  Element u(K);
  for (std::size_t i = 0; i < nI; ++i) u += gens[i] * Rational((*coef)[i]);
  Element v = target - u;
  if (!I.contains(u) || !J.contains(v)) fail(ErrorCode::Internal, "split_in_sum produced a bad decomposition");
  return std::make_pair(u, v);
}

bool coprime(const Ideal& I, const Ideal& J) { return (I + J).is_unit(); }

bool coprime(const Element& x, const Ideal& I) {
  if (x.is_zero()) return I.is_unit();
  return coprime(Ideal::principal(x), I);
}

Element crt_solve(const std::vector<Congruence>& system) {
  if (system.empty()) fail(ErrorCode::InvalidArgument, "empty congruence system");
  const NumberField& K = system.front().modulus.field();
  for (const auto& c : system) {
    if (!c.modulus.is_integral()) fail(ErrorCode::Precondition, "CRT modulus must be integral");
    if (!c.target.is_integral()) fail(ErrorCode::Precondition, "CRT target must be integral");
  }
  for (std::size_t i = 0; i < system.size(); ++i)
    for (std::size_t j = i + 1; j < system.size(); ++j)
      if (!coprime(system[i].modulus, system[j].modulus))
        fail(ErrorCode::NonCoprimeModuli,
             "moduli " + system[i].modulus.to_string() + " and " + system[j].modulus.to_string() + " are not coprime");
  Element x = reduce_mod(system.front().target, system.front().modulus);
  Ideal M = system.front().modulus;
  for (std::size_t i = 1; i < system.size(); ++i) {
    const auto& [t, J] = system[i];
    auto split = split_in_sum(from_integer(K, 1), M, J);
    const Element& e = split->first;   // e ∈ M, e ≡ 1 mod J
    const Element& f = split->second;  // f ∈ J, f ≡ 1 mod M
    M = M * J;
    x = reduce_mod(x * f + t * e, M);
  }
  return x;
}

Element totally_positive_lift(const Element& y, const Ideal& I) {
  if (!I.is_integral()) fail(ErrorCode::Precondition, "lift modulo a non-integral ideal");
  if (!y.is_integral()) fail(ErrorCode::Precondition, "lift of a non-integral element");
  const NumberField& K = y.field();
  const Integer& m = I.min_integer();
  double worst = 0;
  for (int w = 0; w < K.real_embedding_count(); ++w) worst = std::min(worst, y.approx_at(w));
  // Floating start point, then exact correction in both directions.
  Integer k = 0;
  if (worst < 0) {
    double guess = -worst / m.get_d() - 2.0;
    if (guess > 0) k = Integer(guess);
  }
  auto ok = [&](const Integer& kk) { return (y + from_integer(K, kk * m)).is_totally_positive(); };
  while (!ok(k)) ++k;
  while (k > 0 && ok(k - 1)) --k;
  return y + from_integer(K, k * m);
}

}  // namespace cmon

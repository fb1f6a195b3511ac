#include "cmon/field.hpp"

#include <cctype>
#include <cmath>
#include <tuple>

#include "cmon/error.hpp"

namespace cmon {

namespace {

bool squarefree(std::int64_t d) {
  std::uint64_t n = d < 0 ? static_cast<std::uint64_t>(-(d + 1)) + 1 : static_cast<std::uint64_t>(d);
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

Rational parse_rational(const std::string& text, const std::string& whole) {
  if (text.empty()) fail(ErrorCode::Parse, "malformed element literal '" + whole + "'");
  for (char ch : text)
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/'))
      fail(ErrorCode::Parse, "malformed element literal '" + whole + "'");
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(Integer(text));
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (num.empty() || den.empty() || den.find('/') != std::string::npos)
    fail(ErrorCode::Parse, "malformed element literal '" + whole + "'");
  Integer dn(den);
  if (dn == 0) fail(ErrorCode::DivisionByZero, "zero denominator in '" + whole + "'");
  return make_rational(Integer(num), dn);
}

}  // namespace

NumberField NumberField::rational() { return NumberField(); }

NumberField NumberField::quadratic(std::int64_t d) {
  if (d == 0 || d == 1) fail(ErrorCode::InvalidArgument, "d must differ from 0 and 1");
  if (!squarefree(d)) fail(ErrorCode::InvalidArgument, "d = " + std::to_string(d) + " is not squarefree");
  NumberField K;
  K.quadratic_ = true;
  K.d_ = d;
  if (((d % 4) + 4) % 4 == 1) {
    K.form_ = OmegaForm::Half;
    K.wsq_const_ = (d - 1) / 4;
    K.wsq_lin_ = 1;
  } else {
    K.form_ = OmegaForm::Sqrt;
    K.wsq_const_ = d;
    K.wsq_lin_ = 0;
  }
  return K;
}

NumberField NumberField::parse(const std::string& raw) {
  std::string s = strip(raw);
  if (s == "Q") return rational();
  const std::string head = "Q(sqrt,";
  if (s.rfind(head, 0) == 0 && s.size() > head.size() + 1 && s.back() == ')') {
    std::string num = s.substr(head.size(), s.size() - head.size() - 1);
    std::size_t used = 0;
    long long d = 0;
    try {
      d = std::stoll(num, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "malformed field spec '" + raw + "'");
    }
    if (used != num.size()) fail(ErrorCode::Parse, "malformed field spec '" + raw + "'");
    return quadratic(d);
  }
  fail(ErrorCode::Parse, "malformed field spec '" + raw + "' (expected Q or Q(sqrt,<d>))");
}

Integer NumberField::discriminant() const {
  if (!quadratic_) return 1;
  return form_ == OmegaForm::Half ? Integer(d_) : Integer(4 * d_);
}

int NumberField::real_embedding_count() const {
  if (!quadratic_) return 1;
  return d_ > 0 ? 2 : 0;
}

std::vector<int> NumberField::real_embeddings() const {
  std::vector<int> out;
  for (int i = 0; i < real_embedding_count(); ++i) out.push_back(i);
  return out;
}

std::string NumberField::spec() const {
  return quadratic_ ? "Q(sqrt," + std::to_string(d_) + ")" : "Q";
}

void require_same_field(const NumberField& x, const NumberField& y) {
  if (!(x == y)) fail(ErrorCode::FieldMismatch, "field mismatch: " + x.spec() + " vs " + y.spec());
}

Element::Element(NumberField K, Rational p, Rational q)
    : K_(std::move(K)), p_(std::move(p)), q_(std::move(q)) {
  p_.canonicalize();
  q_.canonicalize();
  if (K_.is_rational() && sgn(q_) != 0)
    fail(ErrorCode::InvalidArgument, "element of Q with nonzero w-coordinate");
}

Element Element::omega(const NumberField& K) {
  if (K.is_rational()) fail(ErrorCode::InvalidArgument, "Q has no generator w");
  return Element(K, 0, 1);
}

Element Element::parse(const NumberField& K, const std::string& raw) {
  std::string s = strip(raw);
  if (s.empty()) fail(ErrorCode::Parse, "empty element literal");
  Rational p = 0, q = 0;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sgn_term = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sgn_term = -1;
      ++i;
    } else if (any) {
      fail(ErrorCode::Parse, "malformed element literal '" + raw + "'");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) fail(ErrorCode::Parse, "malformed element literal '" + raw + "'");
    if (term.back() == 'w') {
      if (K.is_rational()) fail(ErrorCode::Parse, "literal '" + raw + "' uses w over Q");
      std::string coeff = term.substr(0, term.size() - 1);
      if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
      Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff, raw);
      q += sgn_term * c;
    } else {
      p += sgn_term * parse_rational(term, raw);
    }
    any = true;
    i = j;
  }
  return Element(K, p, q);
}

bool Element::is_integral() const { return p_.get_den() == 1 && q_.get_den() == 1; }

bool Element::is_rational_integer() const { return sgn(q_) == 0 && p_.get_den() == 1; }

Element Element::conj() const {
  if (K_.is_rational()) return *this;
  if (K_.omega_form() == OmegaForm::Sqrt) return Element(K_, p_, -q_);
  return Element(K_, p_ + q_, -q_);
}

Rational Element::norm() const {
  if (K_.is_rational()) return p_;
  Rational r = p_ * p_ + p_ * q_ * Rational(K_.wsq_lin()) - q_ * q_ * Rational(K_.wsq_const());
  r.canonicalize();
  return r;
}

Rational Element::trace() const {
  if (K_.is_rational()) return p_;
  Rational r = 2 * p_ + q_ * Rational(K_.wsq_lin());
  r.canonicalize();
  return r;
}

Element Element::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of the zero element");
  if (K_.is_rational()) return Element(K_, 1 / p_, 0);
  Rational n = norm();
  Element c = conj();
  return Element(K_, c.p_ / n, c.q_ / n);
}

int Element::sign_at(int embedding) const {
  if (embedding < 0 || embedding >= K_.real_embedding_count())
    fail(ErrorCode::InvalidArgument, "no real embedding with label " + std::to_string(embedding));
  if (K_.is_rational()) return sgn(p_);
  // Value u + v*sqrt(d), decided exactly by comparing u^2 with v^2 d.
  Rational u = p_, v = q_;
  if (K_.omega_form() == OmegaForm::Half) {
    u = p_ + q_ / 2;
    v = q_ / 2;
  }
  if (embedding == 1) v = -v;
  int su = sgn(u), sv = sgn(v);
  if (sv == 0) return su;
  if (su == 0 || su == sv) return sv;
  Rational lhs = u * u, rhs = v * v * Rational(K_.d());
  return cmp(lhs, rhs) > 0 ? su : sv;
}

bool Element::is_totally_positive() const {
  for (int w = 0; w < K_.real_embedding_count(); ++w)
    if (sign_at(w) <= 0) return false;
  return true;
}

double Element::approx_at(int embedding) const {
  if (K_.is_rational()) return p_.get_d();
  double s = std::sqrt(static_cast<double>(K_.d()));
  if (embedding == 1) s = -s;
  double w = K_.omega_form() == OmegaForm::Half ? (1.0 + s) / 2.0 : s;
  return p_.get_d() + q_.get_d() * w;
}

std::string Element::to_string() const {
  if (sgn(q_) == 0) return cmon::to_string(p_);
  std::string wterm;
  Rational aq = abs(q_);
  wterm = aq == 1 ? "w" : cmon::to_string(aq) + "*w";
  if (sgn(p_) == 0) return (sgn(q_) < 0 ? "-" : "") + wterm;
  return cmon::to_string(p_) + (sgn(q_) < 0 ? "-" : "+") + wterm;
}

Rational Element::height() const {
  Rational a = abs(p_), b = abs(q_);
  return cmp(a, b) >= 0 ? a : b;
}

Element& Element::operator+=(const Element& y) {
  require_same_field(K_, y.K_);
  p_ += y.p_;
  q_ += y.q_;
  return *this;
}

Element& Element::operator-=(const Element& y) {
  require_same_field(K_, y.K_);
  p_ -= y.p_;
  q_ -= y.q_;
  return *this;
}

Element& Element::operator*=(const Element& y) {
  require_same_field(K_, y.K_);
  Rational qq = q_ * y.q_;
  Rational np = p_ * y.p_ + qq * Rational(K_.wsq_const());
  Rational nq = p_ * y.q_ + q_ * y.p_ + qq * Rational(K_.wsq_lin());
  p_ = np;
  q_ = nq;
  p_.canonicalize();
  q_.canonicalize();
  return *this;
}

Element& Element::operator/=(const Element& y) {
  require_same_field(K_, y.K_);
  return *this *= y.inverse();
}

Element operator-(Element x) {
  x.p_ = -x.p_;
  x.q_ = -x.q_;
  return x;
}

Element Element::operator*(const Rational& r) const { return Element(K_, p_ * r, q_ * r); }

Element from_integer(const NumberField& K, const Integer& n) { return Element(K, Rational(n), 0); }

Element pow(Element x, unsigned n) {
  Element r = from_integer(x.field(), 1);
  while (n) {
    if (n & 1u) r *= x;
    x *= x;
    n >>= 1u;
  }
  return r;
}

bool search_less(const Element& x, const Element& y) {
  Rational nx = abs(x.norm()), ny = abs(y.norm());
  if (int c = cmp(nx, ny)) return c < 0;
  if (int c = cmp(abs(x.q()), abs(y.q()))) return c < 0;
  if (int c = cmp(abs(x.p()), abs(y.p()))) return c < 0;
  bool xp = sgn(x.p()) < 0, yp = sgn(y.p()) < 0;
  if (xp != yp) return !xp;
  bool xq = sgn(x.q()) < 0, yq = sgn(y.q()) < 0;
  if (xq != yq) return !xq;
  return false;
}

bool CoordLess::operator()(const Element& x, const Element& y) const {
  if (int c = cmp(x.p(), y.p())) return c < 0;
  return cmp(x.q(), y.q()) < 0;
}

std::size_t ElementHash::operator()(const Element& x) const {
  auto h = [](const Rational& r) {
    return std::hash<long>()(mpz_get_si(r.get_num_mpz_t())) * 31u +
           std::hash<long>()(mpz_get_si(r.get_den_mpz_t()));
  };
  return h(x.p()) * 1000003u ^ h(x.q());
}

}  // namespace cmon

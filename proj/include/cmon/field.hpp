#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmon/integer.hpp"

namespace cmon {

enum class OmegaForm { Sqrt, Half };

// K = Q or Q(sqrt d) with d squarefree. The integral basis is {1, w} where
// w = sqrt d, or w = (1 + sqrt d)/2 when d = 1 mod 4, so Z[w] is maximal.
class NumberField {
 public:
  static NumberField rational();
  static NumberField quadratic(std::int64_t d);
  static NumberField parse(const std::string& spec);

  bool is_rational() const { return !quadratic_; }
  bool is_quadratic() const { return quadratic_; }
  bool is_real() const { return !quadratic_ || d_ > 0; }
  bool is_imaginary() const { return quadratic_ && d_ < 0; }
  int degree() const { return quadratic_ ? 2 : 1; }

  std::int64_t d() const { return d_; }
  OmegaForm omega_form() const { return form_; }
  Integer discriminant() const;

  // w^2 = wsq_const + wsq_lin * w.
  const Integer& wsq_const() const { return wsq_const_; }
  const Integer& wsq_lin() const { return wsq_lin_; }

  int real_embedding_count() const;
  std::vector<int> real_embeddings() const;

  std::string spec() const;

  friend bool operator==(const NumberField& x, const NumberField& y) {
    return x.quadratic_ == y.quadratic_ && x.d_ == y.d_;
  }

 private:
  NumberField() = default;

  bool quadratic_ = false;
  std::int64_t d_ = 1;
  OmegaForm form_ = OmegaForm::Sqrt;
  Integer wsq_const_ = 0;
  Integer wsq_lin_ = 0;
};

void require_same_field(const NumberField& x, const NumberField& y);

// p + q w with exact rational coordinates; q = 0 over Q.
class Element {
 public:
  explicit Element(NumberField K) : K_(std::move(K)) {}
  Element(NumberField K, Rational p, Rational q = 0);

  static Element parse(const NumberField& K, const std::string& literal);
  static Element omega(const NumberField& K);

  const NumberField& field() const { return K_; }
  const Rational& p() const { return p_; }
  const Rational& q() const { return q_; }

  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_integral() const;
  bool is_rational_integer() const;

  Element conj() const;
  Rational norm() const;
  Rational trace() const;
  Element inverse() const;

  // Sign of the image under the real embedding with the given label.
  int sign_at(int embedding) const;
  bool is_totally_positive() const;
  double approx_at(int embedding) const;

  std::string to_string() const;

  // Largest absolute rational coordinate; bounds enumeration boxes.
  Rational height() const;

  Element& operator+=(const Element& y);
  Element& operator-=(const Element& y);
  Element& operator*=(const Element& y);
  Element& operator/=(const Element& y);

  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(Element x, const Element& y) { return x *= y; }
  friend Element operator/(Element x, const Element& y) { return x /= y; }
  friend Element operator-(Element x);

  Element operator*(const Rational& r) const;

  friend bool operator==(const Element& x, const Element& y) {
    return x.K_ == y.K_ && cmp(x.p_, y.p_) == 0 && cmp(x.q_, y.q_) == 0;
  }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

 private:
  NumberField K_;
  Rational p_ = 0;
  Rational q_ = 0;
};

Element from_integer(const NumberField& K, const Integer& n);
Element pow(Element x, unsigned n);

// Total order used by every search: absolute norm, then |q|, then |p|,
// then nonnegative p before negative, then nonnegative q before negative.
bool search_less(const Element& x, const Element& y);

// Plain coordinate order (p, then q); only for map keys.
struct CoordLess {
  bool operator()(const Element& x, const Element& y) const;
};

struct ElementHash {
  std::size_t operator()(const Element& x) const;
};

}  // namespace cmon

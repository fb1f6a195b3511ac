#include "cmon/search.hpp"

#include <algorithm>
#include <cmath>

#include "cmon/error.hpp"

namespace cmon {

namespace {

Integer ceil_div(const Integer& n, const Integer& m) { return -floor_div(-n, m); }

// Smallest x >= lo with x = r mod a.
Integer first_in_class(const Integer& lo, const Integer& r, const Integer& a) {
  return lo + mod_floor(r - lo, a);
}

}  // namespace

std::vector<Element> lattice_points(const Ideal& J, const Integer& norm_bound,
                                    const Integer& height_bound) {
  if (!J.is_integral()) fail(ErrorCode::Precondition, "lattice points of a non-integral ideal");
  const NumberField& K = J.field();
  std::vector<Element> out;
  if (norm_bound < 1) return out;
  const Integer& a = J.a();
  if (K.is_rational()) {
    for (Integer k = a; k <= norm_bound; k += a) {
      out.push_back(from_integer(K, k));
      out.push_back(from_integer(K, -k));
    }
    std::sort(out.begin(), out.end(), search_less);
    return out;
  }
  const Integer& b = J.b();
  const Integer& c = J.c();
  const Integer absd = abs(Integer(K.d()));
  const bool half = K.omega_form() == OmegaForm::Half;
  Integer ymax;
  if (K.is_imaginary()) {
    ymax = half ? isqrt(4 * norm_bound / absd) : isqrt(norm_bound / absd);
  } else {
    ymax = height_bound;
  }
  Integer ystart = -floor_div(ymax, c) * c;
  for (Integer y = ystart; y <= ymax; y += c) {
    Integer r = mod_floor((y / c) * b, a);
    Integer xlo, xhi;
    if (K.is_imaginary()) {
      if (half) {
        Integer rad = 4 * norm_bound - absd * y * y;
        if (rad < 0) continue;
        Integer s = isqrt(rad);
        xlo = ceil_div(-s - y, 2);
        xhi = floor_div(s - y, 2);
      } else {
        Integer rad = norm_bound - absd * y * y;
        if (rad < 0) continue;
        Integer s = isqrt(rad);
        xlo = -s;
        xhi = s;
      }
    } else {
      xlo = -height_bound;
      xhi = height_bound;
    }
    for (Integer x = first_in_class(xlo, r, a); x <= xhi; x += a) {
      if (x == 0 && y == 0) continue;
      Element e(K, Rational(x), Rational(y));
      if (abs(e.norm()) <= Rational(norm_bound)) out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), search_less);
  return out;
}

std::vector<Element> norm_solutions_at(const Ideal& J, const Integer& n, const Integer& level) {
  const NumberField& K = J.field();
  std::vector<Element> out;
  if (K.is_rational()) {
    if (level == 0) {
      for (int s : {1, -1}) {
        Element e = from_integer(K, s * n);
        if (J.contains(e)) out.push_back(e);
      }
    }
    return out;
  }
  const Integer d = K.d();
  const bool half = K.omega_form() == OmegaForm::Half;
  std::vector<Integer> ys{level};
  if (level != 0) ys.push_back(-level);
  std::vector<int> signs{1};
  if (K.is_real()) signs.push_back(-1);
  for (const Integer& y : ys) {
    for (int s : signs) {
      Integer rhs = half ? Integer(4 * s * n + d * y * y) : Integer(s * n + d * y * y);
      Integer r;
      if (!is_square(rhs, &r)) continue;
      std::vector<Integer> roots{r};
      if (r != 0) roots.push_back(-r);
      for (const Integer& root : roots) {
        Integer x;
        if (half) {
          Integer t = root - y;
          if (!mpz_divisible_ui_p(t.get_mpz_t(), 2)) continue;
          x = t / 2;
        } else {
          x = root;
        }
        Element e(K, Rational(x), Rational(y));
        if (e.is_zero() || !J.contains(e)) continue;
        if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end(), search_less);
  return out;
}

double lattice_point_estimate(const Ideal& J, const Integer& norm_bound, const Integer& height_bound) {
  const NumberField& K = J.field();
  double n = J.integral_norm().get_d();
  if (K.is_rational()) return 2.0 * norm_bound.get_d() / n;
  if (K.is_imaginary()) {
    double absd = std::fabs(static_cast<double>(K.d()));
    double area = K.omega_form() == OmegaForm::Half ? 2.0 * M_PI / std::sqrt(absd) : M_PI / std::sqrt(absd);
    return area * norm_bound.get_d() / n + 4.0;
  }
  double h = 2.0 * height_bound.get_d() + 1.0;
  return h * h / n;
}

std::optional<Element> least_satisfying(const Ideal& J, const Integer& norm_bound, const Integer& height_bound,
                                        const std::function<bool(const Element&)>& pred, double max_points) {
  const NumberField& K = J.field();
  if (norm_bound < 1) return std::nullopt;
  if (K.is_real() && K.is_quadratic()) {
    Integer prev = 0;
    for (Integer h = 1;; h *= 2) {
      if (h > height_bound) h = height_bound;
      if (lattice_point_estimate(J, norm_bound, h) > max_points) return std::nullopt;
      for (const auto& e : lattice_points(J, norm_bound, h)) {
        if (e.height() <= Rational(prev)) continue;
        if (pred(e)) return e;
      }
      if (h >= height_bound) return std::nullopt;
      prev = h;
    }
  }
  Integer prev = 0;
  for (Integer n = J.integral_norm();; n *= 2) {
    if (n > norm_bound) n = norm_bound;
    if (lattice_point_estimate(J, n, n) > max_points) return std::nullopt;
    for (const auto& e : lattice_points(J, n, n)) {
      if (abs(e.norm()) <= Rational(prev)) continue;
      if (pred(e)) return e;
    }
    if (n >= norm_bound) return std::nullopt;
    prev = n;
  }
}

}  // namespace cmon

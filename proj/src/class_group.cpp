#include "cmon/class_group.hpp"

#include <algorithm>
#include <cmath>

#include "cmon/error.hpp"
#include "cmon/search.hpp"

namespace cmon {

std::optional<Element> principal_generator(const Ideal& I) {
  const NumberField& K = I.field();
  if (K.is_rational()) return Element(K, Rational(I.a()) * I.scale(), 0);
  Ideal J = I * from_integer(K, I.den());
  Integer n = J.integral_norm();
  // Some unit multiple of any generator has both embeddings within
  // sqrt(n * eps) in absolute value, which bounds the w-coordinate.
  Integer ymax;
  if (K.is_imaginary()) {
    Integer absd = -Integer(K.d());
    ymax = K.omega_form() == OmegaForm::Half ? isqrt(4 * n / absd) : isqrt(n / absd);
  } else {
    double eps = unit_group(K).fundamental->approx_at(0);
    double bound = 2.0 * std::sqrt(n.get_d() * eps) / std::sqrt(static_cast<double>(K.d()));
    ymax = Integer(bound) + 2;
  }
  for (Integer y = 0; y <= ymax; y += J.c()) {
    auto sols = norm_solutions_at(J, n, y);
    if (!sols.empty()) return sols.front() * make_rational(1, I.den());
  }
  return std::nullopt;
}

bool is_principal(const Ideal& I) { return principal_generator(I).has_value(); }

std::vector<Ideal> integral_ideals_up_to(const NumberField& K, const Integer& bound) {
  std::vector<Ideal> out{Ideal::unit(K)};
  if (bound < 1) return {};
  for (const auto& P : primes_up_to(K, bound)) {
    std::size_t n = out.size();
    Integer NP = P.norm();
    for (std::size_t i = 0; i < n; ++i) {
      Ideal I = out[i];
      Integer N = I.integral_norm() * NP;
      while (N <= bound) {
        I = I * P.ideal;
        out.push_back(I);
        N *= NP;
      }
    }
  }
  std::sort(out.begin(), out.end(), ideal_less);
  return out;
}

Integer minkowski_bound(const NumberField& K) {
  if (K.is_rational()) return 1;
  double disc = std::fabs(K.discriminant().get_d());
  double b = K.is_imaginary() ? 2.0 / M_PI * std::sqrt(disc) : std::sqrt(disc) / 2.0;
  return Integer(std::floor(b));
}

ClassGroup::ClassGroup(const NumberField& K) : K_(K) {
  for (const auto& I : integral_ideals_up_to(K, std::max(Integer(1), minkowski_bound(K)))) {
    bool found = false;
    for (const auto& R : reps_)
      if (equivalent(I, R)) {
        found = true;
        break;
      }
    if (!found) reps_.push_back(I);
  }
}

bool ClassGroup::equivalent(const Ideal& I, const Ideal& J) const {
  return is_principal(I * J.inverse());
}

int ClassGroup::class_index(const Ideal& I) const {
  require_same_field(K_, I.field());
  for (std::size_t i = 0; i < reps_.size(); ++i)
    if (equivalent(I, reps_[i])) return static_cast<int>(i);
  fail(ErrorCode::Internal, "ideal " + I.to_string() + " matches no class representative");
}

int ClassGroup::multiply(int i, int j) const { return class_index(reps_[i] * reps_[j]); }

}  // namespace cmon

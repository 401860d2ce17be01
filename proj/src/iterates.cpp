#include "expcensus/iterates.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "expcensus/errors.hpp"

namespace expcensus {
namespace {

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::Domain, "radius must be positive and finite");
}

void require_depth(int m, int min_depth) {
  if (m < min_depth) throw Error(ErrorKind::Domain, "iterate depth out of range");
}

// f_1(r), ..., f_n(r); index 0 holds f_0 = 0 and is never used as a factor.
std::vector<LevelIndex> real_iterates(int n, double r) {
  std::vector<LevelIndex> f(static_cast<std::size_t>(n) + 1);
  if (n == 0) return f;
  const SignedTower log_r = SignedTower::from_real(std::log(static_cast<Real>(r)));
  f[1] = LevelIndex::from_real(r);
  for (int j = 1; j < n; ++j) f[j + 1] = exp_signed(log_r + SignedTower{false, f[j]});
  return f;
}

ComplexIterateValue add_reciprocal(const ComplexIterateValue& d, std::complex<double> z) {
  // 1/z + d; when d is log-polar the reciprocal is far below its precision.
  if (!d.is_exact()) return d;
  return ComplexIterateValue::exact(1.0 / z + d.value());
}

}  // namespace

FamilyPoint FamilyPoint::parameter(std::complex<double> lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::ZeroParameter, "lambda must be nonzero");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw Error(ErrorKind::Domain, "non-finite parameter");
  }
  return FamilyPoint(lambda, std::abs(lambda), std::arg(lambda));
}

FamilyPoint FamilyPoint::polar(double r, double theta) {
  require_radius(r);
  if (!(theta > -std::numbers::pi && theta <= std::numbers::pi)) {
    throw Error(ErrorKind::Domain, "angle must lie in (-pi, pi]");
  }
  const std::complex<double> v = theta == 0.0 ? std::complex<double>(r, 0.0) : std::polar(r, theta);
  return FamilyPoint(v, r, theta);
}

IterateProfile eval_f(int m, const FamilyPoint& z) {
  require_depth(m, 1);
  IterateProfile profile;
  profile.m = m;

  if (z.is_positive_real()) {
    const double r = z.modulus();
    const std::vector<LevelIndex> f = real_iterates(m, r);
    const LevelIndex inverse_r = LevelIndex::from_real(1.0L / r);
    LevelIndex derivative = LevelIndex::one();
    for (int j = 1; j < m; ++j) derivative = f[j + 1] * (inverse_r + derivative);
    profile.value = f[m];
    profile.derivative = derivative;
    if (f[m] >= LevelIndex::one()) profile.log_value = log(f[m]);
    return profile;
  }

  const ComplexIterateValue point = ComplexIterateValue::exact(z.value(), z.argument());
  ComplexIterateValue value = point;
  ComplexIterateValue derivative = ComplexIterateValue::exact(1.0, 0.0);
  for (int j = 1; j < m; ++j) {
    value = times_exp(point, value);
    derivative = value * add_reciprocal(derivative, z.value());
  }
  profile.value = value;
  profile.derivative = derivative;
  return profile;
}

LevelIndex iterate(int m, double r) {
  require_depth(m, 1);
  require_radius(r);
  return real_iterates(m, r)[static_cast<std::size_t>(m)];
}

IterateJet iterate_jet(int m, std::complex<double> z) noexcept {
  if (m <= 0) return {};
  std::complex<double> value = z;
  std::complex<double> derivative = 1.0;
  for (int j = 1; j < m; ++j) {
    // (z e^{f})' = e^{f} (1 + z f'), which stays finite at z = 0.
    const std::complex<double> e = std::exp(value);
    value = z * e;
    derivative = e * (1.0 + z * derivative);
  }
  return {value, derivative};
}

std::complex<double> iterate_value(int m, std::complex<double> z) noexcept {
  if (m <= 0) return {};
  std::complex<double> value = z;
  for (int j = 1; j < m; ++j) value = z * std::exp(value);
  return value;
}

LevelIndex eval_F(int k, double r) {
  require_depth(k, 0);
  require_radius(r);
  const std::vector<LevelIndex> f = real_iterates(k, r);
  SignedTower log_product;
  for (int j = 1; j <= k; ++j) log_product = log_product + log_signed(f[j]);
  return exp_signed(log_product);
}

namespace {

// P_j = F_{k-1} / F_j = f_{j+1} ... f_{k-1} for j = 0..k-1.
std::vector<LevelIndex> partial_products(int k, const std::vector<LevelIndex>& f) {
  std::vector<LevelIndex> p(static_cast<std::size_t>(k));
  p[k - 1] = LevelIndex::one();
  for (int j = k - 2; j >= 0; --j) p[j] = p[j + 1] * f[j + 1];
  return p;
}

}  // namespace

LevelIndex eval_a(int k, double r) {
  require_depth(k, 1);
  require_radius(r);
  const std::vector<LevelIndex> f = real_iterates(k - 1, r);
  const std::vector<LevelIndex> p = partial_products(k, f);
  LevelIndex sum;
  for (int j = 0; j < k; ++j) sum = sum + p[j];
  return sum;
}

LevelIndex eval_b(int k, double r) {
  require_depth(k, 1);
  require_radius(r);
  if (k == 1) return LevelIndex{};
  const std::vector<LevelIndex> f = real_iterates(k - 1, r);
  const std::vector<LevelIndex> p = partial_products(k, f);
  // d ln P_j / d ln r = a_{j+1} + ... + a_{k-1}
  std::vector<LevelIndex> a(static_cast<std::size_t>(k));
  for (int i = 1; i < k; ++i) a[i] = eval_a(i, r);
  LevelIndex sum;
  LevelIndex tail;
  for (int j = k - 2; j >= 0; --j) {
    tail = tail + a[j + 1];
    sum = sum + p[j] * tail;
  }
  return sum;
}

std::complex<double> expm1(std::complex<double> z) noexcept {
  const double x = z.real();
  const double y = z.imag();
  const double half_sin = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

std::complex<double> log_increment(int k, double r, std::complex<double> tau) {
  require_depth(k, 1);
  require_radius(r);
  const std::vector<LevelIndex> f = real_iterates(k - 1, r);
  std::complex<double> increment = 0.0;
  for (int j = 1; j < k; ++j) {
    const double fj = f[j].to_double();
    if (!std::isfinite(fj)) throw Error(ErrorKind::TowerOverflow, "f_j(r) exceeds double range");
    increment = fj * expm1(tau + increment);
    if (!std::isfinite(increment.real()) || !std::isfinite(increment.imag())) {
      throw Error(ErrorKind::TowerOverflow, "iterate increment overflow");
    }
  }
  return tau + increment;
}

std::string_view to_string(AsymptoticKind kind) {
  switch (kind) {
    case AsymptoticKind::TheoremRhs: return "theorem_rhs";
    case AsymptoticKind::Prop2Rhs: return "prop2_rhs";
    case AsymptoticKind::E4Rhs: return "e4_rhs";
    case AsymptoticKind::GOfR: return "g_of_r";
    case AsymptoticKind::RGPrime: return "r_gprime";
  }
  return "unknown";
}

LevelIndex eval_asymptotic(const AsymptoticModel& model, double r) {
  if (model.k < 1 || model.l < 1) throw Error(ErrorKind::InvalidModel, "k and l must be positive");
  const int depth = model.depth();
  if (depth < 3) throw Error(ErrorKind::InvalidModel, "asymptotic right-hand sides need k + l >= 3");
  require_radius(r);

  const std::vector<LevelIndex> f = real_iterates(depth - 1, r);
  const SignedTower log_constant = SignedTower::from_real(std::log(static_cast<Real>(kSqrtTwoPiCubed)));
  const SignedTower log_top = log_signed(f[depth - 1]);
  SignedTower log_next = log_signed(f[depth - 2]);
  log_next.magnitude = log_next.magnitude * LevelIndex::from_real(0.5L);

  if (model.kind == AsymptoticKind::TheoremRhs) {
    return exp_signed(log_top + log_next - log_constant);
  }

  SignedTower log_g = log_top - log_next - log_constant;
  for (int j = 1; j <= depth - 3; ++j) log_g = log_g - log_signed(f[j]);
  const LevelIndex g = exp_signed(log_g);
  if (model.kind != AsymptoticKind::RGPrime) return g;

  LevelIndex subtracted = eval_a(depth - 2, r) * LevelIndex::from_real(0.5L);
  for (int j = 1; j <= depth - 3; ++j) subtracted = subtracted + eval_a(j, r);
  return g * difference(eval_a(depth - 1, r), subtracted);
}

}  // namespace expcensus

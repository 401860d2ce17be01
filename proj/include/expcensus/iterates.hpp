#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <variant>

#include "expcensus/complex_value.hpp"
#include "expcensus/tower.hpp"

namespace expcensus {

/// A parameter lambda != 0, or a point r e^{i theta} with r > 0 and
/// theta in (-pi, pi].
class FamilyPoint {
 public:
  static FamilyPoint parameter(std::complex<double> lambda);
  static FamilyPoint polar(double r, double theta);

  std::complex<double> value() const noexcept { return value_; }
  double modulus() const noexcept { return modulus_; }
  double argument() const noexcept { return argument_; }
  bool is_positive_real() const noexcept { return value_.imag() == 0.0 && value_.real() > 0.0; }

 private:
  FamilyPoint(std::complex<double> v, double modulus, double argument)
      : value_(v), modulus_(modulus), argument_(argument) {}

  std::complex<double> value_;
  double modulus_;
  double argument_;
};

/// f_m and f_m' at one point. On the positive real axis every entry is a
/// LevelIndex; elsewhere they are ComplexIterateValue.
struct IterateProfile {
  int m = 0;
  std::variant<LevelIndex, ComplexIterateValue> value;
  std::variant<LevelIndex, ComplexIterateValue> derivative;
  /// log f_m(r) for real arguments with f_m(r) >= 1.
  std::optional<LevelIndex> log_value;

  bool is_real() const noexcept { return std::holds_alternative<LevelIndex>(value); }
  const LevelIndex& real_value() const { return std::get<LevelIndex>(value); }
  const LevelIndex& real_derivative() const { return std::get<LevelIndex>(derivative); }
  const ComplexIterateValue& complex_value() const { return std::get<ComplexIterateValue>(value); }
  const ComplexIterateValue& complex_derivative() const { return std::get<ComplexIterateValue>(derivative); }
};

/// f_1(z) = z, f_{m+1}(z) = z e^{f_m(z)}, with f_{m+1}' = f_{m+1} (1/z + f_m').
IterateProfile eval_f(int m, const FamilyPoint& z);

/// f_m(r) for real r > 0.
LevelIndex iterate(int m, double r);

/// Value and derivative in plain complex doubles, f_0 = 0. For inner loops:
/// no exceptions, overflow shows up as non-finite components.
struct IterateJet {
  std::complex<double> value;
  std::complex<double> derivative;
};
IterateJet iterate_jet(int m, std::complex<double> z) noexcept;
std::complex<double> iterate_value(int m, std::complex<double> z) noexcept;

/// F_k(r) = f_1(r) ... f_k(r), F_0 = 1.
LevelIndex eval_F(int k, double r);
/// a_k(r) = r f_k'(r) / f_k(r) from the closed form F_{k-1} sum_j 1/F_j.
LevelIndex eval_a(int k, double r);
/// b_k(r) = r a_k'(r), differentiated analytically from the closed form of a_k.
LevelIndex eval_b(int k, double r);

/// log f_k(r e^tau) - log f_k(r) on the branch that is real on the positive
/// axis, computed without cancellation through the increments
/// D_j = f_j(r e^tau) - f_j(r) = f_j(r) expm1(tau + D_{j-1}).
std::complex<double> log_increment(int k, double r, std::complex<double> tau);

/// Accurate e^z - 1 for complex z.
std::complex<double> expm1(std::complex<double> z) noexcept;

enum class AsymptoticKind { TheoremRhs, Prop2Rhs, E4Rhs, GOfR, RGPrime };

std::string_view to_string(AsymptoticKind kind);

/// Right-hand sides of the growth asymptotics, parameterized by (k, l);
/// everything depends on k + l only.
struct AsymptoticModel {
  int k = 1;
  int l = 1;
  AsymptoticKind kind = AsymptoticKind::TheoremRhs;

  /// T(r, f_m) prediction: (k, l) = (m - 1, 1).
  static AsymptoticModel prop2(int m) { return {m - 1, 1, AsymptoticKind::Prop2Rhs}; }
  int depth() const noexcept { return k + l; }
};

/// sqrt(2 pi^3)
inline constexpr double kSqrtTwoPiCubed = 7.8748049728612098;

/// Evaluated in log space and exponentiated once at the end.
///  - TheoremRhs: f_{M-1} sqrt(f_{M-2}) / sqrt(2 pi^3)
///  - Prop2Rhs, E4Rhs, GOfR: g = f_{M-1} / (sqrt(2 pi^3) sqrt(f_{M-2}) F_{M-3})
///  - RGPrime: r g'(r) = g (a_{M-1} - a_{M-2}/2 - sum_{j <= M-3} a_j)
/// with M = k + l >= 3.
LevelIndex eval_asymptotic(const AsymptoticModel& model, double r);

}  // namespace expcensus

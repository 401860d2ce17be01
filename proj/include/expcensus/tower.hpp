#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace expcensus {

/// Working real type for tower residuals. Long double keeps round trips
/// through exp/log inside one double ulp of the residual.
using Real = long double;

/// Residuals at level >= 1 live in [kPromotionLog, e^kPromotionLog).
inline constexpr Real kPromotionLog = 30.0L;

/// Positive real stored as an iterated-exponential tower: the value is
/// exp applied `level()` times to `residual()`.
///
/// Canonical form: level 0 with residual in [0, E0), or level >= 1 with
/// residual in [ln E0, E0), where E0 = e^30. Every constructor normalizes,
/// so two LevelIndex values compare exactly by (level, residual).
class LevelIndex {
 public:
  LevelIndex() = default;

  /// x must be finite and >= 0.
  static LevelIndex from_real(Real x);
  static LevelIndex one() { return from_real(1.0L); }

  int level() const noexcept { return level_; }
  Real residual() const noexcept { return residual_; }
  bool is_zero() const noexcept { return level_ == 0 && residual_ == 0; }

  /// Plain value, +inf when it exceeds the range of Real.
  Real to_real() const noexcept;
  double to_double() const noexcept { return static_cast<double>(to_real()); }

  /// "E^n(x)" with x printed to 17 significant digits.
  std::string str() const;
  static LevelIndex parse(std::string_view text);

  friend bool operator==(const LevelIndex&, const LevelIndex&) = default;
  friend std::strong_ordering operator<=>(const LevelIndex& a, const LevelIndex& b) noexcept {
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    if (a.residual_ < b.residual_) return std::strong_ordering::less;
    if (a.residual_ > b.residual_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  friend LevelIndex normalize(int level, Real residual);
  LevelIndex(int level, Real residual) : level_(level), residual_(residual) {}

  int level_ = 0;
  Real residual_ = 0;
};

/// Brings any (level, residual) pair with residual >= 0 to canonical form.
LevelIndex normalize(int level, Real residual);

LevelIndex exp(const LevelIndex& x);
/// Natural log as a tower; requires x >= 1 (the result must be non-negative).
LevelIndex log(const LevelIndex& x);
/// Natural log as a plain signed real; throws TowerOverflow when |ln x| is
/// beyond the range of Real.
Real ln(const LevelIndex& x);

LevelIndex operator+(const LevelIndex& a, const LevelIndex& b);
LevelIndex operator*(const LevelIndex& a, const LevelIndex& b);
LevelIndex operator/(const LevelIndex& a, const LevelIndex& b);
/// a - b for a >= b. Close operands at level >= 2 throw PrecisionLoss.
LevelIndex difference(const LevelIndex& a, const LevelIndex& b);
LevelIndex pow(const LevelIndex& a, Real p);
inline LevelIndex sqrt(const LevelIndex& a) { return pow(a, 0.5L); }

/// a/b - 1, evaluated as expm1 of the log difference. Returns +inf when a/b
/// overflows and -1 when it underflows.
double rel_gap(const LevelIndex& a, const LevelIndex& b);

/// Signed real whose magnitude is a tower. Logarithms of LevelIndex values
/// (which may be negative) and sums of such logarithms live here.
struct SignedTower {
  bool negative = false;
  LevelIndex magnitude;

  static SignedTower from_real(Real x);
  bool is_zero() const noexcept { return magnitude.is_zero(); }
  /// Plain signed value; +-inf outside the range of Real.
  Real to_real() const noexcept;
};

SignedTower operator-(const SignedTower& s);
SignedTower operator+(const SignedTower& a, const SignedTower& b);
SignedTower operator-(const SignedTower& a, const SignedTower& b);
SignedTower log_signed(const LevelIndex& x);
LevelIndex exp_signed(const SignedTower& s);

}  // namespace expcensus

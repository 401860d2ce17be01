#include "expcensus/tower.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "expcensus/errors.hpp"

namespace expcensus {
namespace {

const Real kPromotionThreshold = std::exp(kPromotionLog);

// Beyond this log gap the smaller operand of a sum or difference is below
// the working precision of the larger one.
const LevelIndex kNegligibleGap = LevelIndex::from_real(64.0L);

// expm1 of anything larger overflows long double.
const LevelIndex kMaxExpArgument = LevelIndex::from_real(11350.0L);

LevelIndex sum_positive(const LevelIndex& a, const LevelIndex& b);
LevelIndex difference_positive(const LevelIndex& a, const LevelIndex& b);

}  // namespace

LevelIndex normalize(int level, Real residual) {
  if (level < 0 || std::isnan(residual) || residual < 0) {
    throw Error(ErrorKind::Domain, "tower with negative level or residual");
  }
  if (std::isinf(residual)) throw Error(ErrorKind::TowerOverflow, "infinite residual");
  while (residual >= kPromotionThreshold) {
    residual = std::log(residual);
    ++level;
  }
  while (level > 0 && residual < kPromotionLog) {
    residual = std::exp(residual);
    --level;
  }
  return LevelIndex(level, residual);
}

LevelIndex LevelIndex::from_real(Real x) { return normalize(0, x); }

Real LevelIndex::to_real() const noexcept {
  switch (level_) {
    case 0: return residual_;
    case 1: return std::exp(residual_);
    default: return HUGE_VALL;
  }
}

std::string LevelIndex::str() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "E^%d(%.17Lg)", level_, residual_);
  return buf;
}

LevelIndex LevelIndex::parse(std::string_view text) {
  auto fail = [&] { return Error(ErrorKind::Parse, "bad tower literal '" + std::string(text) + "'"); };
  if (text.size() < 6 || text.substr(0, 2) != "E^" || text.back() != ')') throw fail();
  const auto open = text.find('(');
  if (open == std::string_view::npos || open <= 2) throw fail();
  const std::string level_text(text.substr(2, open - 2));
  const std::string residual_text(text.substr(open + 1, text.size() - open - 2));
  char* end = nullptr;
  errno = 0;
  const long level = std::strtol(level_text.c_str(), &end, 10);
  if (errno || *end != '\0' || level < 0 || level > 1000) throw fail();
  const Real residual = std::strtold(residual_text.c_str(), &end);
  if (errno || *end != '\0' || residual_text.empty()) throw fail();
  return normalize(static_cast<int>(level), residual);
}

LevelIndex exp(const LevelIndex& x) { return normalize(x.level() + 1, x.residual()); }

LevelIndex log(const LevelIndex& x) {
  if (x.is_zero()) throw Error(ErrorKind::NonPositive, "log of zero");
  if (x.level() >= 1) return normalize(x.level() - 1, x.residual());
  if (x.residual() < 1) throw Error(ErrorKind::Domain, "log of a value below 1 is negative");
  return LevelIndex::from_real(std::log(x.residual()));
}

Real ln(const LevelIndex& x) {
  if (x.is_zero()) throw Error(ErrorKind::NonPositive, "log of zero");
  switch (x.level()) {
    case 0: return std::log(x.residual());
    case 1: return x.residual();
    case 2: {
      const Real v = std::exp(x.residual());
      if (std::isinf(v)) throw Error(ErrorKind::TowerOverflow, "log exceeds real range");
      return v;
    }
    default: throw Error(ErrorKind::TowerOverflow, "log exceeds real range");
  }
}

// ---------------------------------------------------------------------------
// Signed towers

SignedTower SignedTower::from_real(Real x) {
  return SignedTower{x < 0, LevelIndex::from_real(std::fabs(x))};
}

Real SignedTower::to_real() const noexcept {
  const Real v = magnitude.to_real();
  return negative ? -v : v;
}

SignedTower operator-(const SignedTower& s) {
  if (s.is_zero()) return s;
  return SignedTower{!s.negative, s.magnitude};
}

SignedTower operator+(const SignedTower& a, const SignedTower& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.negative == b.negative) return SignedTower{a.negative, sum_positive(a.magnitude, b.magnitude)};
  const auto c = a.magnitude <=> b.magnitude;
  if (c == 0) return SignedTower{};
  if (c > 0) return SignedTower{a.negative, difference_positive(a.magnitude, b.magnitude)};
  return SignedTower{b.negative, difference_positive(b.magnitude, a.magnitude)};
}

SignedTower operator-(const SignedTower& a, const SignedTower& b) { return a + (-b); }

SignedTower log_signed(const LevelIndex& x) {
  if (x.is_zero()) throw Error(ErrorKind::NonPositive, "log of zero");
  if (x.level() >= 1) return SignedTower{false, normalize(x.level() - 1, x.residual())};
  return SignedTower::from_real(std::log(x.residual()));
}

LevelIndex exp_signed(const SignedTower& s) {
  if (!s.negative) return exp(s.magnitude);
  if (s.magnitude.level() == 0) return LevelIndex::from_real(std::exp(-s.magnitude.residual()));
  return LevelIndex{};
}

namespace {

LevelIndex sum_positive(const LevelIndex& x, const LevelIndex& y) {
  const bool swap = x < y;
  const LevelIndex& a = swap ? y : x;
  const LevelIndex& b = swap ? x : y;
  if (b.is_zero()) return a;
  if (a.level() == 0) return LevelIndex::from_real(a.residual() + b.residual());
  const SignedTower la = log_signed(a);
  const SignedTower gap = la - log_signed(b);
  if (gap.magnitude > kNegligibleGap) return a;
  const Real increment = std::log1p(std::exp(-gap.magnitude.to_real()));
  return exp_signed(la + SignedTower::from_real(increment));
}

LevelIndex difference_positive(const LevelIndex& a, const LevelIndex& b) {
  if (b.is_zero()) return a;
  const auto c = a <=> b;
  if (c == 0) return LevelIndex{};
  if (c < 0) throw Error(ErrorKind::Domain, "negative tower difference");
  if (a.level() == 0) return LevelIndex::from_real(a.residual() - b.residual());
  const SignedTower la = log_signed(a);
  const SignedTower gap = la - log_signed(b);
  if (gap.magnitude > kNegligibleGap) return a;
  if (a.level() >= 2) {
    throw Error(ErrorKind::PrecisionLoss, "difference of close towers at level >= 2");
  }
  // a is at level 1, so its log is the plain residual.
  const Real log_result = a.residual() + std::log(-std::expm1(-gap.magnitude.to_real()));
  return exp_signed(SignedTower::from_real(log_result));
}

}  // namespace

LevelIndex operator+(const LevelIndex& a, const LevelIndex& b) { return sum_positive(a, b); }

LevelIndex difference(const LevelIndex& a, const LevelIndex& b) { return difference_positive(a, b); }

LevelIndex operator*(const LevelIndex& a, const LevelIndex& b) {
  if (a.is_zero() || b.is_zero()) return LevelIndex{};
  if (a.level() == 0 && b.level() == 0) return LevelIndex::from_real(a.residual() * b.residual());
  return exp_signed(log_signed(a) + log_signed(b));
}

LevelIndex operator/(const LevelIndex& a, const LevelIndex& b) {
  if (b.is_zero()) throw Error(ErrorKind::NonPositive, "division by zero tower");
  if (a.is_zero()) return LevelIndex{};
  if (a.level() == 0 && b.level() == 0) return LevelIndex::from_real(a.residual() / b.residual());
  return exp_signed(log_signed(a) - log_signed(b));
}

LevelIndex pow(const LevelIndex& a, Real p) {
  if (p == 0) return LevelIndex::one();
  if (a.is_zero()) {
    if (p < 0) throw Error(ErrorKind::NonPositive, "negative power of zero");
    return a;
  }
  if (a.level() == 0) {
    const Real v = std::pow(a.residual(), p);
    if (std::isfinite(v)) return LevelIndex::from_real(v);
  }
  const SignedTower la = log_signed(a);
  const SignedTower scaled{la.negative != (p < 0), la.magnitude * LevelIndex::from_real(std::fabs(p))};
  return exp_signed(scaled);
}

double rel_gap(const LevelIndex& a, const LevelIndex& b) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::NonPositive, "relative gap of zero tower");
  if (a == b) return 0.0;
  if (a.level() == 0 && b.level() == 0) {
    return static_cast<double>((a.residual() - b.residual()) / b.residual());
  }
  const SignedTower d = log_signed(a) - log_signed(b);
  if (d.is_zero()) throw Error(ErrorKind::PrecisionLoss, "distinct towers with unresolvable ratio");
  if (d.magnitude > kMaxExpArgument) return d.negative ? -1.0 : HUGE_VAL;
  return static_cast<double>(std::expm1(d.to_real()));
}

}  // namespace expcensus

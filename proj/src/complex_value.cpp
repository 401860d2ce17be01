#include "expcensus/complex_value.hpp"

#include <cmath>

#include "expcensus/errors.hpp"

namespace expcensus {

ComplexIterateValue ComplexIterateValue::exact(std::complex<double> v, double argument) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw Error(ErrorKind::TowerOverflow, "non-finite complex value");
  }
  const double modulus = std::abs(v);
  const double log_modulus = std::log(modulus);
  if (log_modulus >= kLogOverflow) throw Error(ErrorKind::TowerOverflow, "complex value too large for exact form");
  return ComplexIterateValue(Form::Exact, v, log_modulus, argument);
}

ComplexIterateValue ComplexIterateValue::polar(double log_modulus, double argument) {
  if (std::isnan(log_modulus) || log_modulus == HUGE_VAL) {
    throw Error(ErrorKind::TowerOverflow, "non-finite log-modulus");
  }
  if (log_modulus < kLogOverflow) {
    const std::complex<double> v = std::polar(std::exp(log_modulus), argument);
    return ComplexIterateValue(Form::Exact, v, log_modulus, argument);
  }
  return ComplexIterateValue(Form::LogPolar, {}, log_modulus, argument);
}

std::complex<double> ComplexIterateValue::value() const {
  if (form_ != Form::Exact) throw Error(ErrorKind::TowerOverflow, "log-polar value has no exact form");
  return value_;
}

ComplexIterateValue times_exp(const ComplexIterateValue& z, const ComplexIterateValue& w) {
  if (!w.is_exact()) throw Error(ErrorKind::TowerOverflow, "exponential of a log-polar value");
  const std::complex<double> e = w.value();
  const double log_modulus = z.log_modulus() + e.real();
  const double argument = z.argument() + e.imag();
  if (z.is_exact() && log_modulus < kLogOverflow) {
    const std::complex<double> v = z.value() * std::exp(e);
    if (std::isfinite(v.real()) && std::isfinite(v.imag())) {
      return ComplexIterateValue::exact(v, argument);
    }
  }
  return ComplexIterateValue::polar(log_modulus, argument);
}

ComplexIterateValue operator*(const ComplexIterateValue& z, const ComplexIterateValue& w) {
  const double log_modulus = z.log_modulus() + w.log_modulus();
  const double argument = z.argument() + w.argument();
  if (z.is_exact() && w.is_exact() && log_modulus < kLogOverflow) {
    return ComplexIterateValue::exact(z.value() * w.value(), argument);
  }
  return ComplexIterateValue::polar(log_modulus, argument);
}

}  // namespace expcensus

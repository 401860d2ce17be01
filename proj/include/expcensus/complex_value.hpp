#pragma once

#include <cmath>
#include <complex>

namespace expcensus {

/// Exact complex values are allowed up to modulus e^kLogOverflow.
inline constexpr double kLogOverflow = 700.0;

/// Complex value held either exactly or in log-polar form. The argument is
/// tracked continuously and never reduced modulo 2*pi; reducing it is the
/// caller's call.
class ComplexIterateValue {
 public:
  enum class Form { Exact, LogPolar };

  /// Throws TowerOverflow if v is non-finite or |v| >= e^kLogOverflow.
  static ComplexIterateValue exact(std::complex<double> v, double argument);
  static ComplexIterateValue exact(std::complex<double> v) { return exact(v, std::arg(v)); }
  /// Switches to Exact automatically when log_modulus is small enough.
  static ComplexIterateValue polar(double log_modulus, double argument);

  Form form() const noexcept { return form_; }
  bool is_exact() const noexcept { return form_ == Form::Exact; }

  /// Throws TowerOverflow for LogPolar values.
  std::complex<double> value() const;
  double log_modulus() const noexcept { return log_modulus_; }
  double argument() const noexcept { return argument_; }

 private:
  ComplexIterateValue(Form form, std::complex<double> v, double log_modulus, double argument)
      : form_(form), value_(v), log_modulus_(log_modulus), argument_(argument) {}

  Form form_ = Form::Exact;
  std::complex<double> value_{};
  double log_modulus_ = -HUGE_VAL;
  double argument_ = 0.0;
};

/// z * exp(w) with the argument of the result continued as arg(z) + Im w.
/// Throws TowerOverflow when w is LogPolar (its exponential is unrepresentable).
ComplexIterateValue times_exp(const ComplexIterateValue& z, const ComplexIterateValue& w);

/// z * w in the same representation, arguments added.
ComplexIterateValue operator*(const ComplexIterateValue& z, const ComplexIterateValue& w);

}  // namespace expcensus

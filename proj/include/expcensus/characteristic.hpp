#pragma once

#include <string_view>

#include "expcensus/check.hpp"
#include "expcensus/quadrature.hpp"

namespace expcensus {

enum class CharacteristicMethod { Direct, Split, DoubleExponential };

std::string_view to_string(CharacteristicMethod method);

/// Nevanlinna characteristic T(r, f) of an entire f, i.e. the circle mean of
/// log+|f|, together with quadrature diagnostics.
struct QuadratureReport {
  double r = 0.0;
  int m = 0;  // 0 for exp(exp(z))
  CharacteristicMethod method = CharacteristicMethod::Direct;
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long nodes_used = 0;
  std::size_t kinks = 0;

  // Split method only: delta(r) = F_{m-2}(r)^{-2/5}, the two normalized
  // contributions (|theta| <= delta and delta <= |theta| <= pi) and the
  // tail bound f_{m-1}(r) / f_{m-2}(r) that the outer part must respect.
  double delta_r = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  LevelIndex outer_bound;
};

/// log|f_m(r e^{i theta})| = ln r + Re f_{m-1}(r e^{i theta}), without forming f_m.
double log_modulus_on_circle(int m, double r, double theta);

/// Pilot grid size used for kink search: 4096 points, or 16 per period of
/// the inner oscillation cos(a_{m-1}(r) theta) when that is larger.
std::size_t pilot_points(int m, double r);

QuadratureReport characteristic_direct(int m, double r, const QuadratureOptions& options = {});
/// Same integral, panelled at delta(r) so the central Gaussian range and the
/// tail are reported separately. Requires m >= 3.
QuadratureReport characteristic_split(int m, double r, const QuadratureOptions& options = {});
/// T(r, exp(exp(z))) with log|exp(exp(z))| = e^{r cos t} cos(r sin t).
QuadratureReport characteristic_ee(double r, const QuadratureOptions& options = {});

/// |f_m(re^{it}) / (f_m(r) exp(i a t - b t^2 / 2)) - 1| with a = a_m(r), b = b_m(r).
double admissibility_inner_deviation(int m, double r, double theta);
/// |f_m(re^{it})| sqrt(b_m(r)) / f_m(r).
double admissibility_outer_ratio(int m, double r, double theta);

/// Samples the Gaussian approximation of f_m on |theta| <= delta(r) and the
/// tail bound on delta(r) <= |theta| <= pi. Envelopes:
/// eps_in = 10 * 6 * 3^{3(m-1)} F_{m-1} F_{m-2}^2 delta^3 and
/// eps_out = f_{m-1}(r)^{-1/2}. Inconclusive while eps_in >= 1.
CheckResult admissibility_probe(int m, double r);

}  // namespace expcensus

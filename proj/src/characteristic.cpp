#include "expcensus/characteristic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "expcensus/errors.hpp"
#include "expcensus/iterates.hpp"

namespace expcensus {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinPilot = 4096;

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::Domain, "radius must be positive and finite");
}

QuadratureOptions circle_options(const QuadratureOptions& options) {
  // Tolerances are stated for T = (1/pi) * integral over [0, pi].
  QuadratureOptions scaled = options;
  scaled.abs_tol *= kPi;
  return scaled;
}

std::vector<double> panel_edges(double a, double b, const std::vector<double>& kinks) {
  std::vector<double> edges{a};
  for (double k : kinks) {
    if (k > a && k < b) edges.push_back(k);
  }
  edges.push_back(b);
  return edges;
}

std::size_t checked_pilot(double periods, long node_budget) {
  const double wanted = std::max<double>(kMinPilot, std::ceil(16.0 * periods));
  if (wanted > static_cast<double>(node_budget)) {
    throw Error(ErrorKind::NonConvergence, "oscillation needs more pilot points than the node budget");
  }
  return static_cast<std::size_t>(wanted);
}

}  // namespace

std::string_view to_string(CharacteristicMethod method) {
  switch (method) {
    case CharacteristicMethod::Direct: return "direct";
    case CharacteristicMethod::Split: return "split";
    case CharacteristicMethod::DoubleExponential: return "ee";
  }
  return "unknown";
}

double log_modulus_on_circle(int m, double r, double theta) {
  if (m < 1) throw Error(ErrorKind::Domain, "iterate depth must be positive");
  if (m == 1) return std::log(r);
  const std::complex<double> inner = iterate_value(m - 1, std::polar(r, theta));
  if (!std::isfinite(inner.real())) throw Error(ErrorKind::TowerOverflow, "f_{m-1} overflows on the circle");
  return std::log(r) + inner.real();
}

std::size_t pilot_points(int m, double r) {
  if (m <= 1) return kMinPilot;
  // cos(a_{m-1} theta) completes a_{m-1} / 2 periods on [0, pi].
  const double a = eval_a(m - 1, r).to_double();
  return checked_pilot(0.5 * a, QuadratureOptions{}.node_budget);
}

QuadratureReport characteristic_direct(int m, double r, const QuadratureOptions& options) {
  require_radius(r);
  if (m < 1) throw Error(ErrorKind::Domain, "iterate depth must be positive");
  auto g = [m, r](double t) { return log_modulus_on_circle(m, r, t); };
  auto integrand = [&g](double t) { return std::max(0.0, g(t)); };

  const std::size_t pilot = pilot_points(m, r);
  const std::vector<double> kinks = m == 1 ? std::vector<double>{} : find_sign_changes(g, 0.0, kPi, pilot);
  const std::vector<double> edges = panel_edges(0.0, kPi, kinks);
  const QuadratureResult q = integrate(integrand, edges, circle_options(options));

  QuadratureReport report;
  report.r = r;
  report.m = m;
  report.method = CharacteristicMethod::Direct;
  report.value = q.value / kPi;
  report.abs_error_estimate = q.abs_error / kPi;
  report.nodes_used = q.nodes + static_cast<long>(pilot);
  report.kinks = kinks.size();
  return report;
}

QuadratureReport characteristic_split(int m, double r, const QuadratureOptions& options) {
  require_radius(r);
  if (m < 3) throw Error(ErrorKind::Domain, "split method needs m >= 3");
  const int k = m - 1;
  const double delta = std::min(kPi, pow(eval_F(k - 1, r), -0.4L).to_double());

  auto g = [m, r](double t) { return log_modulus_on_circle(m, r, t); };
  auto integrand = [&g](double t) { return std::max(0.0, g(t)); };
  const std::size_t pilot = pilot_points(m, r);
  const std::vector<double> kinks = find_sign_changes(g, 0.0, kPi, pilot);

  QuadratureOptions half = circle_options(options);
  half.abs_tol *= 0.5;
  half.rel_tol *= 0.5;
  const QuadratureResult inner = integrate(integrand, panel_edges(0.0, delta, kinks), half);
  const QuadratureResult outer = integrate(integrand, panel_edges(delta, kPi, kinks), half);

  QuadratureReport report;
  report.r = r;
  report.m = m;
  report.method = CharacteristicMethod::Split;
  report.inner = inner.value / kPi;
  report.outer = outer.value / kPi;
  report.value = report.inner + report.outer;
  report.abs_error_estimate = (inner.abs_error + outer.abs_error) / kPi;
  report.nodes_used = inner.nodes + outer.nodes + static_cast<long>(pilot);
  report.kinks = kinks.size();
  report.delta_r = delta;
  report.outer_bound = iterate(k, r) / iterate(k - 1, r);
  return report;
}

QuadratureReport characteristic_ee(double r, const QuadratureOptions& options) {
  require_radius(r);
  if (r > 700.0) throw Error(ErrorKind::TowerOverflow, "e^{r cos t} overflows for r > 700");
  auto sign = [r](double t) { return std::cos(r * std::sin(t)); };
  auto integrand = [r](double t) {
    return std::max(0.0, std::exp(r * std::cos(t)) * std::cos(r * std::sin(t)));
  };
  // r sin t sweeps 2r / (2 pi) periods of the cosine on [0, pi].
  const std::size_t pilot = checked_pilot(r / kPi, options.node_budget);
  const std::vector<double> kinks = find_sign_changes(sign, 0.0, kPi, pilot);
  const QuadratureResult q = integrate(integrand, panel_edges(0.0, kPi, kinks), circle_options(options));

  QuadratureReport report;
  report.r = r;
  report.m = 0;
  report.method = CharacteristicMethod::DoubleExponential;
  report.value = q.value / kPi;
  report.abs_error_estimate = q.abs_error / kPi;
  report.nodes_used = q.nodes + static_cast<long>(pilot);
  report.kinks = kinks.size();
  return report;
}

double admissibility_inner_deviation(int m, double r, double theta) {
  const double a = eval_a(m, r).to_double();
  const double b = eval_b(m, r).to_double();
  const std::complex<double> t(0.0, theta);
  const std::complex<double> log_ratio = log_increment(m, r, t) - a * t + std::complex<double>(0.5 * b * theta * theta, 0.0);
  return std::abs(expm1(log_ratio));
}

double admissibility_outer_ratio(int m, double r, double theta) {
  const double b = eval_b(m, r).to_double();
  const double log_ratio = log_increment(m, r, {0.0, theta}).real() + 0.5 * std::log(b);
  return std::exp(log_ratio);
}

CheckResult admissibility_probe(int m, double r) {
  if (m < 2) throw Error(ErrorKind::Domain, "admissibility probe needs m >= 2");
  require_radius(r);
  const auto start = std::chrono::steady_clock::now();

  const LevelIndex F1 = eval_F(m - 1, r);
  const LevelIndex F2 = eval_F(m - 2, r);
  const double delta = std::min(kPi, pow(F1, -0.4L).to_double());
  const LevelIndex eps_in = LevelIndex::from_real(60.0L * std::pow(27.0L, m - 1)) * F1 * F2 * F2 *
                            LevelIndex::from_real(static_cast<Real>(delta) * delta * delta);
  const LevelIndex eps_out = pow(iterate(m - 1, r), -0.5L);

  double inner = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double theta = delta * std::cos((2.0 * i + 1.0) * kPi / 32.0);
    inner = std::max(inner, admissibility_inner_deviation(m, r, theta));
  }
  double outer = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double theta = delta + (kPi - delta) * static_cast<double>(j) / 63.0;
    outer = std::max(outer, admissibility_outer_ratio(m, r, theta));
  }

  CheckResult result;
  result.suite = "admissibility";
  result.name = "gaussian_window";
  result.params = {{"m", std::to_string(m)}, {"r", format_double(r)}};
  result.observed = inner;
  result.target = eps_in;
  result.relation = Relation::LessEqual;
  const bool vacuous = eps_in >= LevelIndex::one();
  const bool inner_ok = LevelIndex::from_real(inner) <= eps_in;
  const bool outer_ok = LevelIndex::from_real(outer) <= eps_out;
  result.status = vacuous ? Status::Inconclusive : (inner_ok && outer_ok ? Status::Pass : Status::Fail);
  result.notes = "outer=" + format_double(outer) + " eps_out=" + eps_out.str() +
                 (vacuous ? " inner envelope >= 1" : "");
  result.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace expcensus

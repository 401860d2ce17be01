#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace expcensus {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  double rel_tol = 1e-10;
  long node_budget = 1L << 22;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  long nodes = 0;
};

/// Globally adaptive Gauss-Kronrod (15-point Gauss inside 31-point Kronrod)
/// over the panels given by `breakpoints` (sorted, endpoints included).
/// The panel with the largest |K31 - G15| is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol |value|). Panel values are
/// summed in left-to-right order, so the result is independent of the
/// refinement history. Throws NonConvergence when the node budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

/// Points where g changes sign on [a, b]: g is sampled on a uniform pilot
/// grid and each bracketed sign change is bisected down to `width`.
std::vector<double> find_sign_changes(const std::function<double(double)>& g, double a, double b,
                                      std::size_t pilot_points, double width = 1e-12);

/// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values);

}  // namespace expcensus

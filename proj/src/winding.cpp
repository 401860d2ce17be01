#include "expcensus/winding.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "expcensus/errors.hpp"

namespace expcensus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxStep = 0.5 * std::numbers::pi;

struct Arc {
  double t0;
  double t1;
  std::complex<double> w0;
  std::complex<double> w1;
};

}  // namespace

int circle_winding(const ComplexMap& h, std::complex<double> centre, double radius,
                   std::complex<double> target, const WindingOptions& options) {
  long nodes = 0;
  auto sample = [&](double t) {
    ++nodes;
    const std::complex<double> w = h(centre + std::polar(radius, t)) - target;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw Error(ErrorKind::TowerOverflow, "function is not finite on the contour");
    }
    if (w == 0.0) throw Error(ErrorKind::ContourZero, "zero on the contour");
    return w;
  };

  const int base = options.initial_nodes;
  std::vector<std::complex<double>> ring(base);
  for (int i = 0; i < base; ++i) ring[i] = sample(kTwoPi * i / base);

  double total = 0.0;
  std::vector<Arc> stack;
  for (int i = 0; i < base; ++i) {
    const double t0 = kTwoPi * i / base;
    const double t1 = kTwoPi * (i + 1) / base;
    stack.push_back({t0, t1, ring[i], ring[(i + 1) % base]});
    // Depth first, right half pushed first, so arcs are consumed in angular order.
    while (!stack.empty()) {
      const Arc arc = stack.back();
      stack.pop_back();
      const double step = std::arg(arc.w1 / arc.w0);
      if (std::fabs(step) < kMaxStep) {
        total += step;
        continue;
      }
      if (nodes >= options.node_cap) throw Error(ErrorKind::ContourZero, "phase step stays >= pi/2 at the node cap");
      const double mid = 0.5 * (arc.t0 + arc.t1);
      const std::complex<double> wm = sample(mid);
      stack.push_back({mid, arc.t1, wm, arc.w1});
      stack.push_back({arc.t0, mid, arc.w0, wm});
    }
  }

  const double turns = total / kTwoPi;
  const double rounded = std::round(turns);
  if (std::fabs(turns - rounded) > 1e-3) throw Error(ErrorKind::NonInteger, "winding is not an integer");
  return static_cast<int>(rounded);
}

}  // namespace expcensus

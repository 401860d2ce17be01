#pragma once

#include <complex>
#include <functional>

namespace expcensus {

using ComplexMap = std::function<std::complex<double>(std::complex<double>)>;

struct WindingOptions {
  int initial_nodes = 1024;
  long node_cap = 1L << 24;
};

/// Winding number of h - target along the circle |z - centre| = radius,
/// by continuous argument tracking. An arc is bisected while the phase step
/// across it is at least pi/2. Throws ContourZero when the node cap is hit
/// first or h - target vanishes on a node, and NonInteger when the total is
/// more than 1e-3 away from an integer.
int circle_winding(const ComplexMap& h, std::complex<double> centre, double radius,
                   std::complex<double> target = 0.0, const WindingOptions& options = {});

}  // namespace expcensus

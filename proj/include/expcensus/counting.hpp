#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "expcensus/census.hpp"

namespace expcensus {

enum class CountMethod { Winding, Census, Both };

/// Parameters lambda with 0 < |lambda| <= r solving E^k(0) = E^{k+l}(0)
/// while E^i(0) != E^j(0) for 0 < i < j < k + l.
struct CountReport {
  double r = 0.0;
  int k = 0;
  int l = 0;
  int n_A = 0;              // distinct solutions of the A-equation
  int n_B = 0;              // distinct solutions of at least one pair equation
  int n = 0;                // A-solutions that pass every pair test
  int n_paper_formula = 0;  // n_A - n_B
  double N = 0.0;           // sum of ln(r / |lambda|) over the n kept roots
  double N_A_bar = 0.0;     // the same sum over all A-solutions
  CountMethod method = CountMethod::Both;
  double contour_radius_used = 0.0;
  bool certified = false;   // every branch matched its winding count
  bool conjugation_symmetric = false;
  bool all_simple = false;           // every root carries simplicity winding 1
  double worst_residual_ratio = 0.0; // max residual / 1e-10 max(1, 2 pi |m|)
  std::vector<std::complex<double>> kept;  // canonical order

  // Companion columns filled by count_sweep.
  double T = 0.0;            // T(r, f_{k+l})
  double theorem_rhs = 0.0;  // NaN when k + l < 3
  double e4_rhs = 0.0;
  double r_g_prime = 0.0;
};

/// Sum of ln(r / |lambda|); roots on or just outside the circle contribute 0.
double counting_function(const std::vector<std::complex<double>>& roots, double r);

CountReport count_parameters(int k, int l, double r, const CensusOptions& options = {});

/// Reports in grid order, with T and the asymptotic models attached.
/// Throws ConsistencyError when n decreases along the grid.
std::vector<CountReport> count_sweep(int k, int l, const std::vector<double>& r_grid,
                                     const CensusOptions& options = {});

inline constexpr const char* kCountCsvHeader = "r,k,l,n_A,n_B,n,n_paper_formula,N,T,theorem_rhs,ratio_N_T,ratio_n_thm";

void write_count_csv(std::ostream& out, const std::vector<CountReport>& reports);

}  // namespace expcensus

#include "expcensus/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "expcensus/characteristic.hpp"
#include "expcensus/check.hpp"
#include "expcensus/errors.hpp"

namespace expcensus {
namespace {

std::vector<std::complex<double>> lambdas(const std::vector<RootRecord>& roots) {
  std::vector<std::complex<double>> out;
  out.reserve(roots.size());
  for (const RootRecord& root : roots) out.push_back(root.lambda);
  return out;
}

std::vector<RootRecord> distinct_union(const std::vector<std::vector<RootRecord>>& sets) {
  std::vector<RootRecord> out;
  for (const auto& set : sets) {
    for (const RootRecord& root : set) {
      const double tol = 1e-8 * std::max(1.0, root.modulus);
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const RootRecord& known) { return std::abs(known.lambda - root.lambda) <= tol; });
      if (!seen) out.push_back(root);
    }
  }
  return out;
}

}  // namespace

double counting_function(const std::vector<std::complex<double>>& roots, double r) {
  std::vector<double> terms;
  terms.reserve(roots.size());
  for (const auto& lambda : roots) terms.push_back(std::max(0.0, std::log(r / std::abs(lambda))));
  std::sort(terms.begin(), terms.end());
  return compensated_sum(terms);
}

CountReport count_parameters(int k, int l, double r, const CensusOptions& options) {
  const Census a = newton_census(BranchEquation::a(k, l), r, options);

  std::vector<std::vector<RootRecord>> pair_sets;
  bool certified = true;
  for (const BranchEquation& eq : pair_equations(k, l)) {
    Census pair = newton_census(eq, r, options);
    certified = certified && pair.winding_total() == static_cast<int>(pair.roots.size());
    pair_sets.push_back(std::move(pair.roots));
  }
  bool all_simple = true;
  double worst = 0.0;
  auto inspect = [&](const std::vector<RootRecord>& roots) {
    for (const RootRecord& root : roots) {
      all_simple = all_simple && root.simplicity_winding == 1;
      worst = std::max(worst, root.residual / (1e-10 * std::max(1.0, 2.0 * std::numbers::pi * std::abs(root.branch_m))));
    }
  };
  inspect(a.roots);
  for (const auto& set : pair_sets) inspect(set);

  const std::vector<RootRecord> b_roots = distinct_union(pair_sets);
  const FilterResult filtered = filter_b2(a.roots, b_roots, k, l);

  CountReport report;
  report.r = r;
  report.k = k;
  report.l = l;
  report.n_A = a.winding_total();
  report.n_B = static_cast<int>(b_roots.size());
  report.n = static_cast<int>(filtered.kept.size());
  report.n_paper_formula = report.n_A - report.n_B;
  report.kept = lambdas(filtered.kept);
  report.N = counting_function(report.kept, r);
  report.N_A_bar = counting_function(lambdas(a.roots), r);
  report.method = CountMethod::Both;
  report.contour_radius_used = contour_radius(r);
  report.certified = certified && report.n_A == static_cast<int>(a.roots.size());
  report.conjugation_symmetric = conjugation_symmetric(a.roots);
  report.all_simple = all_simple;
  report.worst_residual_ratio = worst;
  if (!report.certified) throw Error(ErrorKind::IncompleteCensus, "census and winding counts disagree");
  return report;
}

std::vector<CountReport> count_sweep(int k, int l, const std::vector<double>& r_grid, const CensusOptions& options) {
  if (!std::is_sorted(r_grid.begin(), r_grid.end())) throw Error(ErrorKind::Domain, "radius grid must be ascending");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<CountReport> reports;
  for (double r : r_grid) {
    CountReport report = count_parameters(k, l, r, options);
    report.T = characteristic_direct(k + l, r).value;
    if (k + l >= 3) {
      report.theorem_rhs = eval_asymptotic({k, l, AsymptoticKind::TheoremRhs}, r).to_double();
      report.e4_rhs = eval_asymptotic({k, l, AsymptoticKind::E4Rhs}, r).to_double();
      report.r_g_prime = eval_asymptotic({k, l, AsymptoticKind::RGPrime}, r).to_double();
    } else {
      report.theorem_rhs = report.e4_rhs = report.r_g_prime = nan;
    }
    if (!reports.empty() && report.n < reports.back().n) {
      throw Error(ErrorKind::ConsistencyError, "n decreased along the radius grid");
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

void write_count_csv(std::ostream& out, const std::vector<CountReport>& reports) {
  out << kCountCsvHeader << '\n';
  for (const CountReport& c : reports) {
    out << format_double(c.r) << ',' << c.k << ',' << c.l << ',' << c.n_A << ',' << c.n_B << ',' << c.n << ','
        << c.n_paper_formula << ',' << format_double(c.N) << ',' << format_double(c.T) << ','
        << format_double(c.theorem_rhs) << ',' << format_double(c.N / c.T) << ','
        << format_double(c.n / c.theorem_rhs) << '\n';
  }
}

}  // namespace expcensus

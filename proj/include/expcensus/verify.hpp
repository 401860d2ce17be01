#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expcensus/check.hpp"

namespace expcensus {

/// I(t) = integral over the real line of e^{-x^2} max(0, cos(t x)),
/// truncated to |x| <= 8 and integrated hump by hump.
double ec_integral(double t);

/// One row per t: distance of I(t) from 1/sqrt(pi) must shrink along the
/// grid, and be at most 5e-3 once t >= 1000.
std::vector<CheckResult> check_lemma_ec(const std::vector<double>& t_grid);

/// R(tau) = log f_k(r e^tau) - log f_k(r) - a_k tau - b_k tau^2 / 2 against
/// 6 * 3^{3(k-1)} F_{k-1}(r) F_{k-2}(r)^2 |tau|^3.
double lemma6_remainder(int k, double r, std::complex<double> tau);
std::vector<CheckResult> check_lemma6_remainder(int k, double r, const std::vector<std::complex<double>>& taus);

/// f_j(r e^t) <= (1 + 3^j F_{j-1}(r) t) f_j(r), compared in log space.
std::vector<CheckResult> check_growth_bound_i1(int j, double r, const std::vector<double>& t_grid);

/// Tail bound log|f_{k+1}(r e^{i theta})| <= f_k(r) / f_{k-1}(r) at every
/// theta of the grid, and the envelope g_j(delta) <= f_j(r) exp(-F_{j-1}(r)
/// delta^2 / 2^j) for 2 <= j <= k, delta = F_{k-1}(r)^{-2/5}. Rows are
/// Inconclusive when delta > F_{k-2}(r)^{-1/2}.
std::vector<CheckResult> check_lemma7_tail(int k, double r, const std::vector<double>& theta_grid);

/// phi(r + 1/phi(r)) / phi(r) in [1, 2] and shrinking toward 1, plus the
/// growth hypothesis phi'(r) <= phi(r)^{3/2}, for phi = g of depth k + l.
std::vector<CheckResult> check_borel_regularity(int k, int l, const std::vector<double>& r_grid);

/// Marks a sequence of ratio rows: each must be strictly closer to its target
/// than the previous row, and the last one must fall inside `envelope`.
void mark_trend(std::vector<CheckResult>& rows, std::optional<std::pair<double, double>> envelope = std::nullopt);

struct VerifyConfig {
  std::vector<std::string> suites;
  std::vector<double> counting_grid{3, 4, 5, 6};
  std::vector<double> characteristic_grid{4, 6, 8, 10};
  std::vector<double> t_grid{10, 100, 1000};
  std::vector<double> ee_grid{6, 9, 12};
  std::vector<double> exact_grid{7, 13, 20, 50};
  std::vector<double> lemma7_grid{8, 10, 12};
};

/// Suite names in run order.
const std::vector<std::string>& all_suites();
bool is_suite(const std::string& name);

/// Runs the selected suites; rows are sorted by suite, then name, keeping the
/// generation order within a name. An empty selection yields no rows.
std::vector<CheckResult> run_all(const VerifyConfig& config);

inline constexpr const char* kCheckCsvHeader = "suite,name,params,observed,target,relation,pass,runtime_ms";

/// runtime_ms is left empty unless `timings` is set, so repeated runs produce
/// identical files.
void write_check_csv(std::ostream& out, const std::vector<CheckResult>& rows, bool timings = false);

bool any_failed(const std::vector<CheckResult>& rows);

}  // namespace expcensus

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "expcensus/characteristic.hpp"
#include "expcensus/errors.hpp"
#include "expcensus/verify.hpp"

using namespace expcensus;
using cd = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

// I(t) from the Fourier series of max(0, cos): 1/pi + cos(y)/2 + (2/pi) sum (-1)^{n+1} cos(2ny) / (4n^2 - 1).
double ec_series(double t) {
  const double s = std::sqrt(kPi);
  double value = 1.0 / s + s / 2 * std::exp(-t * t / 4);
  for (int n = 1; n < 60; ++n) {
    value += 2 / kPi * (n % 2 ? 1.0 : -1.0) / (4.0 * n * n - 1) * s * std::exp(-double(n * n) * t * t);
  }
  return value;
}

double observed(const CheckResult& row) { return std::get<double>(row.observed); }
double target(const CheckResult& row) { return std::get<double>(row.target); }

CheckResult ratio_row(double x) {
  CheckResult row;
  row.observed = x;
  row.target = 1.0;
  row.relation = Relation::RatioToOne;
  return row;
}
}  // namespace

TEST_CASE("I(t) matches its Fourier series") {
  for (double t : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(ec_integral(t) == doctest::Approx(ec_series(t)).epsilon(1e-12));
  }
  CHECK(ec_integral(10) - 1 / std::sqrt(kPi) == doctest::Approx(1.2308e-11).epsilon(1e-3));
  CHECK(std::abs(ec_integral(1000) - 1 / std::sqrt(kPi)) <= 5e-3);
}

TEST_CASE("lemma_ec rows") {
  const auto rows = check_lemma_ec({10, 100});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].suite == "lemma_ec");
  CHECK(rows[0].passed());
}

TEST_CASE("remainder for k = 2 in closed form") {
  // log f_2(r e^tau) - log f_2(r) = tau + r (e^tau - 1), a_2 = 1 + r, b_2 = r.
  const double r = 2.0, tau = 0.01;
  const double expected = r * (std::expm1(tau) - tau - tau * tau / 2);
  CHECK(lemma6_remainder(2, r, tau) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(lemma6_remainder(2, r, 0.0) == 0.0);
  const auto rows = check_lemma6_remainder(2, r, {cd(0.01, 0)});
  REQUIRE(rows.size() == 1);
  CHECK(target(rows[0]) == doctest::Approx(162 * 2 * 1e-6).epsilon(1e-12));
  CHECK(rows[0].passed());
  CHECK_THROWS_AS(check_lemma6_remainder(1, r, {cd(0.01, 0)}), Error);
}

TEST_CASE("property: remainder bound holds on the disk") {
  for (int k : {2, 3}) {
    for (double r : {1.0, 2.0, 3.0}) {
      // Disk radius 1 / (2 * 3^{k-1} F_{k-2}(r)); F_0 = 1, F_1 = r.
      const double tau_max = 1.0 / (2 * std::pow(3.0, k - 1) * (k == 3 ? r : 1.0));
      std::vector<cd> taus;
      for (double f : {0.25, 0.5, 1.0}) {
        taus.emplace_back(f * tau_max, 0.0);
        taus.emplace_back(0.0, -f * tau_max);
      }
      for (const auto& row : check_lemma6_remainder(k, r, taus)) CHECK(row.passed());
    }
  }
}

TEST_CASE("growth bound") {
  const auto rows = check_growth_bound_i1(1, 1.0, {0.0, 1.0 / 3});
  REQUIRE(rows.size() == 2);
  CHECK(observed(rows[0]) == doctest::Approx(target(rows[0])));
  CHECK(rows[0].passed());
  CHECK(observed(rows[1]) == doctest::Approx(1.0 / 3));
  CHECK(target(rows[1]) == doctest::Approx(std::log(2.0)));
  for (const auto& row : check_growth_bound_i1(2, 3.0, {1.0 / 27, 0.01})) CHECK(row.passed());
}

TEST_CASE("tail bound rows are faithful to the integrand") {
  const auto rows = check_lemma7_tail(2, 10.0, {kPi, 0.5644, 2.0});
  int tail_rows = 0;
  for (const auto& row : rows) {
    if (row.name != "tail_bound") continue;
    ++tail_rows;
    CHECK(target(row) == doctest::Approx(std::exp(10.0)).epsilon(1e-12));
    CHECK(row.passed() == (observed(row) <= target(row)));
  }
  CHECK(tail_rows == 3);
  CHECK(observed(rows[0]) == doctest::Approx(std::log(10.0) - 10 * std::exp(-10.0)).epsilon(1e-12));
  CHECK(rows[0].passed());
  // Near theta = 0.5644 the modulus overshoots e^10 by a wide margin.
  CHECK(observed(rows[1]) > target(rows[1]));
  CHECK(rows[1].failed());
  CHECK_THROWS_AS(check_lemma7_tail(2, 10.0, {0.01}), Error);
}

TEST_CASE("borel regularity at depth three") {
  const auto rows = check_borel_regularity(2, 1, {4, 6, 8, 10});
  REQUIRE(rows.size() == 8);
  const std::vector<double> expected{1.0844, 1.00867, 1.00099, 1.00012};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].name == "increment_ratio");
    CHECK(observed(rows[i]) == doctest::Approx(expected[i]).epsilon(1e-4));
    CHECK(rows[i].passed());
    CHECK(rows[i + 4].passed());
  }
}

TEST_CASE("mark_trend") {
  std::vector<CheckResult> good{ratio_row(1.5), ratio_row(0.8), ratio_row(1.1)};
  mark_trend(good, std::pair{1.05, 1.15});
  for (const auto& row : good) CHECK(row.passed());

  std::vector<CheckResult> bounce{ratio_row(1.5), ratio_row(1.6), ratio_row(1.1)};
  mark_trend(bounce);
  CHECK(bounce[0].passed());
  CHECK(bounce[1].failed());
  CHECK(bounce[2].passed());

  std::vector<CheckResult> outside{ratio_row(1.5), ratio_row(1.2)};
  mark_trend(outside, std::pair{0.9, 1.1});
  CHECK(outside[1].failed());
}

TEST_CASE("suite registry") {
  CHECK(all_suites().size() == 14);
  CHECK(is_suite("lemma6"));
  CHECK_FALSE(is_suite("nope"));
  VerifyConfig none;
  CHECK(run_all(none).empty());
}

TEST_CASE("check csv is deterministic and omits runtimes by default") {
  VerifyConfig config;
  config.suites = {"closed_forms", "growth_i1", "exact_counts_11"};
  std::ostringstream a, b;
  write_check_csv(a, run_all(config));
  write_check_csv(b, run_all(config));
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kCheckCsvHeader);
  std::getline(in, line);
  CHECK(line.back() == ',');  // empty runtime_ms
  std::ostringstream timed;
  write_check_csv(timed, run_all(config), true);
  std::istringstream tin(timed.str());
  std::getline(tin, line);
  std::getline(tin, line);
  CHECK(line.back() != ',');
}

TEST_CASE("rows are grouped by suite then name") {
  VerifyConfig config;
  config.suites = {"lemma_ec", "closed_forms", "exact_counts_11"};
  const auto rows = run_all(config);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::pair{rows[i - 1].suite, rows[i - 1].name} <= std::pair{rows[i].suite, rows[i].name});
  }
  CHECK_FALSE(any_failed({}));
}

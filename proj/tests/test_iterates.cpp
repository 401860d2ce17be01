#include <cmath>
#include <complex>

#include "doctest.h"
#include "expcensus/errors.hpp"
#include "expcensus/iterates.hpp"

using namespace expcensus;
using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

double d(const LevelIndex& x) { return x.to_double(); }

// Five-point central difference of fn at x.
template <class Fn>
double derivative(Fn fn, double x, double h) {
  return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("family points") {
  CHECK(kind_of([] { FamilyPoint::parameter(0.0); }) == ErrorKind::ZeroParameter);
  CHECK(kind_of([] { FamilyPoint::polar(1.0, 4.0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { FamilyPoint::polar(-1.0, 0.0); }) == ErrorKind::Domain);
  CHECK(FamilyPoint::polar(2.0, 0.0).is_positive_real());
  CHECK_FALSE(FamilyPoint::parameter(cd(0, 1)).is_positive_real());
}

TEST_CASE("iterates at real points") {
  const auto f1 = eval_f(1, FamilyPoint::polar(7.0, 0.0));
  REQUIRE(f1.is_real());
  CHECK(d(f1.real_value()) == doctest::Approx(7.0));
  CHECK(d(f1.real_derivative()) == doctest::Approx(1.0));

  CHECK(d(iterate(3, 1.0)) == doctest::Approx(std::exp(std::exp(1.0))).epsilon(1e-14));
  CHECK(d(iterate(2, 2.0)) == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-14));
  // f_4(3) = 3 exp(3 e^{3 e^3}) is past double range but has an exact log.
  const double ln_f4 = std::log(3.0) + 3.0 * std::exp(3.0 * std::exp(3.0));
  CHECK(static_cast<double>(ln(iterate(4, 3.0))) == doctest::Approx(ln_f4).epsilon(1e-13));
}

TEST_CASE("iterate along the imaginary axis keeps an unreduced argument") {
  const auto p = eval_f(2, FamilyPoint::parameter(cd(0, 10)));
  REQUIRE_FALSE(p.is_real());
  const auto& v = p.complex_value();
  CHECK(v.is_exact());
  CHECK(v.log_modulus() == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(v.argument() == doctest::Approx(kPi / 2 + 10).epsilon(1e-14));
}

TEST_CASE("F products") {
  CHECK(d(eval_F(0, 5.0)) == 1.0);
  CHECK(d(eval_F(2, 2.0)) == doctest::Approx(4.0 * std::exp(2.0)).epsilon(1e-14));
  const double r = 1.5;
  const double f2 = r * std::exp(r);
  const double ln_F3 = 3 * std::log(r) + r + f2;  // ln(r * r e^r * r e^{f_2})
  CHECK(static_cast<double>(ln(eval_F(3, r))) == doctest::Approx(ln_F3).epsilon(1e-13));
}

TEST_CASE("a_k and b_k closed forms") {
  CHECK(d(eval_a(1, 4.0)) == doctest::Approx(1.0));
  CHECK(d(eval_b(1, 4.0)) == 0.0);
  CHECK(d(eval_a(2, 3.0)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d(eval_b(2, 5.0)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(d(eval_a(3, 2.0)) == doctest::Approx(45.334).epsilon(1e-4));
  for (double r : {0.5, 1.0, 2.0, 4.0, 7.0}) {
    CHECK(d(eval_a(3, r)) == doctest::Approx(1 + (r + r * r) * std::exp(r)).epsilon(1e-13));
    CHECK(d(eval_b(3, r)) == doctest::Approx(r * std::exp(r) * (1 + 3 * r + r * r)).epsilon(1e-13));
  }
}

TEST_CASE("a_3 and b_3 against finite differences") {
  auto ln_f3 = [](double x) { return static_cast<double>(ln(iterate(3, x))); };
  auto a3 = [](double x) { return d(eval_a(3, x)); };
  for (double r : {1.0, 2.0, 3.0, 5.0, 8.0}) {
    const double h = 1e-3 * r;
    CHECK(d(eval_a(3, r)) == doctest::Approx(r * derivative(ln_f3, r, h)).epsilon(1e-6));
    CHECK(d(eval_b(3, r)) == doctest::Approx(r * derivative(a3, r, h)).epsilon(1e-6));
  }
}

TEST_CASE("property: f_m' matches finite differences") {
  for (int m = 1; m <= 3; ++m) {
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
      const auto p = eval_f(m, FamilyPoint::polar(r, 0.0));
      auto fm = [m](double x) { return d(iterate(m, x)); };
      CHECK(d(p.real_derivative()) == doctest::Approx(derivative(fm, r, 1e-4 * r)).epsilon(1e-7));
    }
  }
  // Complex points through the jet.
  for (cd z : {cd(0.3, 0.7), cd(-1.2, 0.4), cd(1.5, -2.0)}) {
    for (int m = 1; m <= 3; ++m) {
      const double h = 1e-5;
      const cd fd = (iterate_value(m, z + h) - iterate_value(m, z - h)) / (2 * h);
      CHECK(std::abs(iterate_jet(m, z).derivative - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("property: log f_{m+1}(r) = ln r + f_m(r)") {
  for (int m = 1; m <= 4; ++m) {
    for (double r : {1.0, 2.0, 3.0, 5.0}) {
      const auto lhs = log(iterate(m + 1, r));
      const auto rhs = LevelIndex::from_real(std::log(r)) + iterate(m, r);
      CHECK(std::abs(rel_gap(lhs, rhs)) <= 1e-12);
    }
  }
}

TEST_CASE("jet at the origin is finite") {
  for (int m = 0; m <= 5; ++m) {
    const auto jet = iterate_jet(m, 0.0);
    CHECK(jet.value == cd(0.0));
    CHECK(std::isfinite(jet.derivative.real()));
  }
  CHECK(iterate_jet(3, 0.0).derivative == cd(1.0));
}

TEST_CASE("expm1 and log_increment") {
  const cd z(1e-12, 2e-12);
  CHECK(std::abs(expm1(z) - (z + z * z / 2.0)) <= 1e-30);
  CHECK(std::abs(expm1(cd(1.0, 0.5)) - (std::exp(cd(1.0, 0.5)) - 1.0)) <= 1e-15);
  for (int k = 1; k <= 3; ++k) {
    for (cd tau : {cd(0.01, 0.0), cd(0.0, 0.05), cd(-0.02, 0.03)}) {
      const double r = 2.0;
      const cd direct = std::log(iterate_value(k, r * std::exp(tau))) - std::log(iterate_value(k, r));
      CHECK(std::abs(log_increment(k, r, tau) - direct) <= 1e-10);
    }
  }
  CHECK(log_increment(3, 2.0, 0.0) == cd(0.0));
}

TEST_CASE("asymptotic models") {
  CHECK(d(eval_asymptotic({2, 1, AsymptoticKind::TheoremRhs}, 4.0)) == doctest::Approx(55.465).epsilon(1e-4));
  CHECK(d(eval_asymptotic({1, 2, AsymptoticKind::TheoremRhs}, 4.0)) ==
        d(eval_asymptotic({2, 1, AsymptoticKind::TheoremRhs}, 4.0)));
  CHECK(d(eval_asymptotic(AsymptoticModel::prop2(3), 4.0)) == doctest::Approx(13.866).epsilon(1e-4));
  CHECK(d(eval_asymptotic(AsymptoticModel::prop2(3), 6.0)) == doctest::Approx(125.48).epsilon(1e-4));
  CHECK(static_cast<double>(ln(eval_asymptotic({2, 2, AsymptoticKind::TheoremRhs}, 3.0))) ==
        doctest::Approx(61.341).epsilon(1e-5));
  // r g'(r) = g (r + 1/2) at depth 3.
  const double g = d(eval_asymptotic({2, 1, AsymptoticKind::GOfR}, 5.0));
  CHECK(d(eval_asymptotic({2, 1, AsymptoticKind::RGPrime}, 5.0)) == doctest::Approx(g * 5.5).epsilon(1e-13));
  CHECK(kind_of([] { eval_asymptotic({1, 1, AsymptoticKind::TheoremRhs}, 4.0); }) == ErrorKind::InvalidModel);
}

TEST_CASE("normalized a_k and b_k approach one") {
  for (int k : {2, 3}) {
    double prev_a = HUGE_VAL, prev_b = HUGE_VAL;
    for (double r : {2.0, 4.0, 6.0, 8.0, 10.0}) {
      const double ra = rel_gap(eval_a(k, r), eval_F(k - 1, r));
      const double rb = rel_gap(eval_b(k, r), iterate(k - 1, r) * eval_F(k - 2, r) * eval_F(k - 2, r));
      CHECK(std::abs(ra) < prev_a);
      if (k == 3) CHECK(std::abs(rb) < prev_b);  // b_2 = r exactly
      prev_a = std::abs(ra);
      prev_b = std::abs(rb);
    }
  }
}

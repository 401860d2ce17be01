#include <cmath>
#include <random>

#include "doctest.h"
#include "expcensus/errors.hpp"
#include "expcensus/iterates.hpp"
#include "expcensus/tower.hpp"

using namespace expcensus;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

// Residual spacing at the value's magnitude, in double precision.
double ulp(Real x) {
  const double d = static_cast<double>(x);
  return std::nextafter(d, HUGE_VAL) - d;
}

}  // namespace

TEST_CASE("normalize brings pairs to canonical form") {
  const auto small = normalize(1, 0.5L);
  CHECK(small.level() == 0);
  CHECK(static_cast<double>(small.residual()) == doctest::Approx(std::exp(0.5)).epsilon(1e-15));

  // e^25 < E0, so it drops back to level 0.
  const auto mid = normalize(1, 25.0L);
  CHECK(mid.level() == 0);
  CHECK(static_cast<double>(mid.residual()) == doctest::Approx(std::exp(25.0)).epsilon(1e-15));

  const auto big = normalize(0, 1e300L);
  CHECK(big.level() == 1);
  CHECK(big.residual() >= kPromotionLog);

  CHECK(normalize(0, 5.0L) == LevelIndex::from_real(5.0L));
  CHECK(kind_of([] { normalize(0, -1.0L); }) == ErrorKind::Domain);
  CHECK(kind_of([] { LevelIndex::from_real(-2.0L); }) == ErrorKind::Domain);
  CHECK(kind_of([] { normalize(0, HUGE_VALL); }) == ErrorKind::TowerOverflow);
}

TEST_CASE("log peels one level") {
  CHECK(log(normalize(2, 10.0L)) == normalize(1, 10.0L));
  const auto one = log(LevelIndex::from_real(std::exp(1.0L)));
  CHECK(static_cast<double>(one.residual()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kind_of([] { log(LevelIndex{}); }) == ErrorKind::NonPositive);
  CHECK(kind_of([] { log(LevelIndex::from_real(0.5L)); }) == ErrorKind::Domain);
  CHECK(ln(LevelIndex::from_real(0.5L)) == doctest::Approx(std::log(0.5)));
  CHECK(kind_of([] { ln(normalize(3, 40.0L)); }) == ErrorKind::TowerOverflow);
}

TEST_CASE("arithmetic on small values matches plain reals") {
  const auto six = LevelIndex::from_real(2) * LevelIndex::from_real(3);
  CHECK(six.level() == 0);
  CHECK(static_cast<double>(six.residual()) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(static_cast<double>((LevelIndex::from_real(2) + LevelIndex::from_real(3)).residual()) == doctest::Approx(5.0));
  CHECK(static_cast<double>((LevelIndex::from_real(7) / LevelIndex::from_real(2)).residual()) == doctest::Approx(3.5));
  CHECK(static_cast<double>(difference(LevelIndex::from_real(7), LevelIndex::from_real(2)).residual()) ==
        doctest::Approx(5.0));
  CHECK(difference(LevelIndex::from_real(7), LevelIndex::from_real(7)).is_zero());
  CHECK(kind_of([] { difference(LevelIndex::from_real(2), LevelIndex::from_real(7)); }) == ErrorKind::Domain);
  CHECK(static_cast<double>(sqrt(LevelIndex::from_real(16)).residual()) == doctest::Approx(4.0));
}

TEST_CASE("pow with exponent one is the identity") {
  for (const auto& x : {LevelIndex::from_real(3), normalize(1, 100.0L), normalize(2, 35.5L), normalize(3, 31.0L)}) {
    const auto y = pow(x, 1.0L);
    CHECK(y.level() == x.level());
    CHECK(static_cast<double>(y.residual()) == doctest::Approx(static_cast<double>(x.residual())).epsilon(1e-15));
  }
}

TEST_CASE("close towers at level two cannot be subtracted") {
  const auto a = normalize(2, 30.5L);
  const auto b = normalize(2, 30.5L - 1e-15L);
  CHECK(kind_of([&] { difference(a, b); }) == ErrorKind::PrecisionLoss);
  // Far apart, the difference is the larger operand.
  CHECK(difference(normalize(2, 40.0L), normalize(2, 35.0L)) == normalize(2, 40.0L));
}

TEST_CASE("product of iterates has the expected logarithm") {
  const auto product = iterate(3, 3.0) * iterate(2, 3.0);
  const double f2 = 3.0 * std::exp(3.0);
  const double expected = std::log(3.0) + f2 + std::log(f2);
  CHECK(static_cast<double>(ln(product)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rel_gap") {
  CHECK(rel_gap(LevelIndex::from_real(5), LevelIndex::from_real(5)) == 0.0);
  CHECK(rel_gap(LevelIndex::from_real(110), LevelIndex::from_real(100)) == doctest::Approx(0.1).epsilon(1e-14));
  // f_3(5.001) / f_3(5) - 1 = expm1(ln(5.001/5) + f_2(5.001) - f_2(5)).
  const double d = std::log(5.001 / 5.0) + 5.001 * std::exp(5.001) - 5.0 * std::exp(5.0);
  CHECK(rel_gap(iterate(3, 5.001), iterate(3, 5.0)) == doctest::Approx(std::expm1(d)).epsilon(1e-9));
  CHECK(rel_gap(iterate(3, 5.0), iterate(3, 5.001)) == doctest::Approx(std::expm1(-d)).epsilon(1e-9));
  CHECK(rel_gap(normalize(3, 40.0L), LevelIndex::from_real(2)) == HUGE_VAL);
  CHECK(rel_gap(LevelIndex::from_real(2), normalize(3, 40.0L)) == -1.0);
}

TEST_CASE("str and parse round trip") {
  for (const auto& x : {LevelIndex::from_real(0), LevelIndex::from_real(2.5L), normalize(2, 31.25L)}) {
    CHECK(LevelIndex::parse(x.str()) == x);
  }
  CHECK(normalize(1, 100.0L).str() == "E^1(100)");
  CHECK(kind_of([] { LevelIndex::parse("E^x(1)"); }) == ErrorKind::Parse);
  CHECK(kind_of([] { LevelIndex::parse("12"); }) == ErrorKind::Parse);
}

TEST_CASE("signed towers") {
  const auto l = log_signed(LevelIndex::from_real(0.5L));
  CHECK(l.negative);
  CHECK(static_cast<double>(l.to_real()) == doctest::Approx(std::log(0.5)));
  CHECK(static_cast<double>(exp_signed(l).residual()) == doctest::Approx(0.5).epsilon(1e-15));
  const auto s = SignedTower::from_real(3) - SignedTower::from_real(5);
  CHECK(static_cast<double>(s.to_real()) == doctest::Approx(-2.0));
  CHECK((SignedTower::from_real(4) + -SignedTower::from_real(4)).is_zero());
}

TEST_CASE("property: exp and log round trip within one ulp of the residual") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> level(0, 3);
  std::uniform_real_distribution<double> log_res(0.0, 30.0);
  std::uniform_real_distribution<double> upper(30.0, 1e13);
  for (int n = 0; n < 10000; ++n) {
    const int lv = level(rng);
    const Real res = lv == 0 ? std::exp(static_cast<Real>(log_res(rng))) : static_cast<Real>(upper(rng));
    const auto x = normalize(lv, res);
    const auto back = exp(log(x));
    REQUIRE(back.level() == x.level());
    CHECK(std::abs(static_cast<double>(back.residual() - x.residual())) <= ulp(x.residual()));
  }
}

TEST_CASE("property: ordering agrees with the reals and with rel_gap") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 700.0);
  for (int n = 0; n < 2000; ++n) {
    const double a = u(rng), b = u(rng);
    // Compare towers of exp(a), exp(b) and their exponentials.
    const auto ta = LevelIndex::from_real(std::exp(static_cast<Real>(a)));
    const auto tb = LevelIndex::from_real(std::exp(static_cast<Real>(b)));
    CHECK(((ta < tb) == (a < b)));
    CHECK(((exp(ta) < exp(tb)) == (a < b)));
    if (a != b) {
      CHECK(((rel_gap(ta, tb) < 0) == (a < b)));
    }
  }
}

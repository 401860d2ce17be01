#include "expcensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "json.hpp"

#include "expcensus/errors.hpp"
#include "expcensus/parallel.hpp"
#include "expcensus/winding.hpp"

namespace expcensus {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kContourNudge = 1e-9;
constexpr double kOriginExclusion = 1e-3;
constexpr double kDedupTolerance = 1e-8;
constexpr double kPairProximity = 1e-7;
constexpr double kPairDirect = 1e-9;
constexpr double kSimplicityRadius = 1e-5;
constexpr int kSimplicityNodes = 64;
constexpr int kRangeNodes = 1024;
constexpr int kRangeMargin = 2;
constexpr long kMaxBranches = 1L << 20;
constexpr int kMaxDepth = 3;

// Taylor coefficients of f_n at 0 up to degree `degree`, f_0 = 0.
std::vector<double> iterate_series(int n, int degree) {
  std::vector<double> f(degree + 1, 0.0);
  if (n == 0) return f;
  if (degree >= 1) f[1] = 1.0;
  for (int step = 1; step < n; ++step) {
    // e = exp(f) from e' = f' e; then f_next = lambda * e.
    std::vector<double> e(degree + 1, 0.0);
    e[0] = 1.0;
    for (int d = 1; d <= degree; ++d) {
      double acc = 0.0;
      for (int j = 1; j <= d; ++j) acc += j * f[j] * e[d - j];
      e[d] = acc / d;
    }
    std::vector<double> next(degree + 1, 0.0);
    for (int d = 1; d <= degree; ++d) next[d] = e[d - 1];
    f = std::move(next);
  }
  return f;
}

double dedup_tolerance(std::complex<double> lambda) { return kDedupTolerance * std::max(1.0, std::abs(lambda)); }

double residual_tolerance(int m) { return 1e-10 * std::max(1.0, kTwoPi * std::abs(m)); }

struct Seed {
  std::complex<double> lambda;
  SeedKind kind;
};

class BranchSolver {
 public:
  BranchSolver(const BranchEquation& eq, int m, double r, const CensusOptions& options)
      : eq_(eq), m_(m), r_(r), options_(options), target_(0.0, kTwoPi * m) {}

  // Runs Newton from each seed in order; returns how many new roots were added.
  int solve(const std::vector<Seed>& seeds, std::vector<RootRecord>& roots) const {
    int added = 0;
    for (const Seed& seed : seeds) {
      RootRecord record;
      if (!newton(seed.lambda, record)) continue;
      const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const RootRecord& known) {
        return std::abs(known.lambda - record.lambda) <= dedup_tolerance(record.lambda);
      });
      if (duplicate) continue;
      record.seed = seed.kind;
      const ComplexMap h = [this](std::complex<double> z) { return eq_.h(z); };
      try {
        record.simplicity_winding = circle_winding(h, record.lambda, kSimplicityRadius * std::max(1.0, record.modulus),
                                                   target_, {kSimplicityNodes, 1L << 24});
      } catch (const Error&) {
        record.simplicity_winding = 0;
      }
      if (record.simplicity_winding != 1) continue;
      roots.push_back(record);
      ++added;
    }
    return added;
  }

 private:
  bool newton(std::complex<double> lambda, RootRecord& record) const {
    const double tol = residual_tolerance(m_);
    const double escape = 3.0 * r_ + 10.0;
    int iters = 0;
    for (;; ++iters) {
      const IterateJet jet = eq_.jet(lambda);
      const std::complex<double> w = jet.value - target_;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return false;
      if (std::abs(w) <= tol) break;
      if (iters == options_.max_iterations) return false;
      if (jet.derivative == 0.0) return false;
      lambda -= w / jet.derivative;
      if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()) || std::abs(lambda) > escape) return false;
    }
    // A few polishing steps, kept only while they lower the residual.
    double residual = std::abs(eq_.h(lambda) - target_);
    for (int polish = 0; polish < 3; ++polish) {
      const IterateJet jet = eq_.jet(lambda);
      if (jet.derivative == 0.0) break;
      const std::complex<double> next = lambda - (jet.value - target_) / jet.derivative;
      const double next_residual = std::abs(eq_.h(next) - target_);
      if (!(next_residual < residual)) break;
      lambda = next;
      residual = next_residual;
    }

    const double modulus = std::abs(lambda);
    if (modulus < kOriginExclusion || modulus > contour_radius(r_)) return false;
    record.kind = eq_.kind;
    record.k = eq_.k;
    record.l = eq_.l;
    record.i = eq_.i;
    record.j = eq_.j;
    record.branch_m = m_;
    record.lambda = lambda;
    record.modulus = modulus;
    record.residual = residual;
    record.newton_iters = iters;
    record.boundary_ambiguous = std::abs(modulus - r_) < kContourNudge * r_;
    return true;
  }

  const BranchEquation& eq_;
  int m_;
  double r_;
  const CensusOptions& options_;
  std::complex<double> target_;
};

std::vector<Seed> grid_seeds(double r, int grid) {
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(grid) * grid);
  const double cell = 2.0 * r / grid;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      seeds.push_back({{-r + (b + 0.5) * cell, -r + (a + 0.5) * cell}, SeedKind::Grid});
    }
  }
  return seeds;
}

bool canonical_less(const RootRecord& x, const RootRecord& y) {
  if (x.modulus != y.modulus) return x.modulus < y.modulus;
  const double ax = std::arg(x.lambda);
  const double ay = std::arg(y.lambda);
  if (ax != ay) return ax < ay;
  if (x.branch_m != y.branch_m) return x.branch_m < y.branch_m;
  if (x.i != y.i) return x.i < y.i;
  return x.j < y.j;
}

}  // namespace

BranchEquation BranchEquation::a(int k, int l) {
  if (k < 1 || l < 1) throw Error(ErrorKind::Domain, "A(k, l) needs k, l >= 1");
  BranchEquation eq;
  eq.kind = Kind::A;
  eq.k = k;
  eq.l = l;
  eq.p = k - 1;
  eq.q = k + l - 1;
  return eq;
}

BranchEquation BranchEquation::pair(int i, int j) {
  if (i < 1 || j <= i) throw Error(ErrorKind::Domain, "Pair(i, j) needs 0 < i < j");
  BranchEquation eq;
  eq.kind = Kind::Pair;
  eq.k = i;
  eq.l = j - i;
  eq.i = i;
  eq.j = j;
  eq.p = i - 1;
  eq.q = j - 1;
  return eq;
}

std::complex<double> BranchEquation::h(std::complex<double> lambda) const noexcept {
  return iterate_value(q, lambda) - iterate_value(p, lambda);
}

IterateJet BranchEquation::jet(std::complex<double> lambda) const noexcept {
  const IterateJet upper = iterate_jet(q, lambda);
  const IterateJet lower = iterate_jet(p, lambda);
  return {upper.value - lower.value, upper.derivative - lower.derivative};
}

int BranchEquation::origin_multiplicity(int m) const {
  if (m != 0) return 0;
  const int degree = q + 2;
  const std::vector<double> upper = iterate_series(q, degree);
  const std::vector<double> lower = iterate_series(p, degree);
  for (int d = 1; d <= degree; ++d) {
    if (upper[d] - lower[d] != 0.0) return d;
  }
  throw Error(ErrorKind::ConsistencyError, "h vanishes to high order at the origin");
}

BranchRange branch_range(const BranchEquation& eq, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::Domain, "radius must be positive and finite");
  double max_modulus = 0.0;
  for (int n = 0; n < kRangeNodes; ++n) {
    const double value = std::abs(eq.h(std::polar(r, kTwoPi * n / kRangeNodes)));
    if (!std::isfinite(value)) throw Error(ErrorKind::TowerOverflow, "h is not finite on the circle");
    max_modulus = std::max(max_modulus, value);
  }
  const double reach = std::floor(max_modulus / kTwoPi) + kRangeMargin;
  if (2.0 * reach + 1.0 > static_cast<double>(kMaxBranches)) {
    throw Error(ErrorKind::TowerOverflow, "too many branches for this radius");
  }
  const int m = static_cast<int>(reach);
  return {-m, m, max_modulus};
}

double contour_radius(double r) { return r * (1.0 + kContourNudge); }

int winding_count(const BranchEquation& eq, int m, double r) {
  const ComplexMap h = [&eq](std::complex<double> z) { return eq.h(z); };
  return circle_winding(h, 0.0, contour_radius(r), {0.0, kTwoPi * m});
}

int Census::winding_total() const {
  int total = 0;
  for (const auto& b : branches) total += b.winding - b.origin;
  return total;
}

Census newton_census(const BranchEquation& eq, double r, const CensusOptions& options) {
  if (eq.q > kMaxDepth) throw Error(ErrorKind::Domain, "census supports k + l <= 4 only");
  const BranchRange range = branch_range(eq, r);

  std::vector<int> ms;
  for (int m = range.lo; m <= range.hi; ++m) {
    if (m == 0 && eq.skips_zero_branch()) continue;
    ms.push_back(m);
  }
  const std::size_t count = ms.size();
  std::map<int, std::size_t> index_of;
  for (std::size_t n = 0; n < count; ++n) index_of[ms[n]] = n;

  std::vector<BranchCertificate> certificates(count);
  parallel_for(count, [&](std::size_t n) {
    certificates[n].m = ms[n];
    certificates[n].origin = eq.origin_multiplicity(ms[n]);
    certificates[n].winding = winding_count(eq, ms[n], r);
  });

  std::vector<std::vector<RootRecord>> roots(count);
  std::vector<std::size_t> pending(count);
  for (std::size_t n = 0; n < count; ++n) pending[n] = n;

  for (int grid = options.grid;; grid *= 2) {
    const std::vector<Seed> seeds = grid_seeds(r, grid);
    parallel_for(pending.size(), [&](std::size_t n) {
      const std::size_t b = pending[n];
      BranchSolver(eq, ms[b], r, options).solve(seeds, roots[b]);
      certificates[b].grid = grid;
    });

    // Continuation from neighbouring branches until nothing new turns up.
    // Every pass reads a snapshot, so the result does not depend on scheduling.
    for (;;) {
      const std::vector<std::vector<RootRecord>> snapshot = roots;
      std::vector<int> added(count, 0);
      parallel_for(count, [&](std::size_t b) {
        if (certificates[b].winding - certificates[b].origin == static_cast<int>(snapshot[b].size())) return;
        std::vector<Seed> continuation;
        for (int neighbour : {ms[b] - 1, ms[b] + 1}) {
          const auto it = index_of.find(neighbour);
          if (it == index_of.end()) continue;
          for (const RootRecord& root : snapshot[it->second]) continuation.push_back({root.lambda, SeedKind::Continuation});
        }
        added[b] = BranchSolver(eq, ms[b], r, options).solve(continuation, roots[b]);
      });
      if (std::all_of(added.begin(), added.end(), [](int a) { return a == 0; })) break;
    }

    std::vector<std::size_t> failing;
    for (std::size_t b = 0; b < count; ++b) {
      certificates[b].found = static_cast<int>(roots[b].size());
      if (!certificates[b].certified()) failing.push_back(b);
    }
    if (failing.empty()) break;
    if (grid * 2 > options.max_grid) {
      const BranchCertificate& c = certificates[failing.front()];
      throw Error(ErrorKind::IncompleteCensus, "branch m=" + std::to_string(c.m) + " found " + std::to_string(c.found) +
                                                   " roots, winding says " + std::to_string(c.winding - c.origin));
    }
    pending = failing;
  }

  Census census;
  census.equation = eq;
  census.r = r;
  census.branches = std::move(certificates);
  for (auto& branch : roots) census.roots.insert(census.roots.end(), branch.begin(), branch.end());
  std::sort(census.roots.begin(), census.roots.end(), canonical_less);
  return census;
}

std::vector<BranchEquation> pair_equations(int k, int l) {
  std::vector<BranchEquation> pairs;
  for (int j = 2; j < k + l; ++j) {
    for (int i = 1; i < j; ++i) pairs.push_back(BranchEquation::pair(i, j));
  }
  return pairs;
}

FilterResult filter_b2(const std::vector<RootRecord>& a_roots, const std::vector<RootRecord>& pair_roots, int k,
                       int l) {
  FilterResult result;
  for (const RootRecord& root : a_roots) {
    const double near = kPairProximity * std::max(1.0, root.modulus);
    const bool by_proximity = std::any_of(pair_roots.begin(), pair_roots.end(),
                                          [&](const RootRecord& p) { return std::abs(p.lambda - root.lambda) <= near; });
    bool by_value = false;
    for (int j = 2; j < k + l && !by_value; ++j) {
      const std::complex<double> fj = iterate_value(j, root.lambda);
      for (int i = 1; i < j && !by_value; ++i) {
        const std::complex<double> fi = iterate_value(i, root.lambda);
        by_value = std::abs(fi - fj) <= kPairDirect * std::max(1.0, std::abs(fj));
      }
    }
    if (by_proximity != by_value) {
      throw Error(ErrorKind::ConsistencyError, "pair filters disagree at lambda = (" + std::to_string(root.lambda.real()) +
                                                   ", " + std::to_string(root.lambda.imag()) + ")");
    }
    (by_value ? result.removed : result.kept).push_back(root);
  }
  return result;
}

void write_jsonl(std::ostream& out, const std::vector<RootRecord>& roots) {
  for (const RootRecord& root : roots) {
    const bool is_pair = root.kind == BranchEquation::Kind::Pair;
    nlohmann::ordered_json line;
    line["kind"] = is_pair ? "pair" : "A";
    line["k"] = root.k;
    line["l"] = root.l;
    line["i"] = is_pair ? nlohmann::ordered_json(root.i) : nlohmann::ordered_json(nullptr);
    line["j"] = is_pair ? nlohmann::ordered_json(root.j) : nlohmann::ordered_json(nullptr);
    line["m"] = root.branch_m;
    line["re"] = root.lambda.real();
    line["im"] = root.lambda.imag();
    line["abs"] = root.modulus;
    line["residual"] = root.residual;
    line["iters"] = root.newton_iters;
    line["seed"] = root.seed == SeedKind::Grid ? "grid" : "continuation";
    line["simple"] = root.simplicity_winding == 1;
    out << line.dump() << '\n';
  }
}

bool conjugation_symmetric(const std::vector<RootRecord>& roots) {
  std::map<int, std::vector<std::complex<double>>> by_branch;
  for (const RootRecord& root : roots) by_branch[root.branch_m].push_back(root.lambda);
  for (const RootRecord& root : roots) {
    const auto it = by_branch.find(-root.branch_m);
    if (it == by_branch.end()) return false;
    const std::complex<double> mirror = std::conj(root.lambda);
    const bool matched = std::any_of(it->second.begin(), it->second.end(), [&](std::complex<double> z) {
      return std::abs(z - mirror) <= dedup_tolerance(mirror);
    });
    if (!matched) return false;
  }
  for (const auto& [m, list] : by_branch) {
    const auto it = by_branch.find(-m);
    if (it == by_branch.end() || it->second.size() != list.size()) return false;
  }
  return true;
}

}  // namespace expcensus

#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "expcensus/iterates.hpp"

namespace expcensus {

/// f_q(lambda) - f_p(lambda) in 2 pi i Z, with f_0 = 0.
///
/// A(k, l) is E^k(0) = E^{k+l}(0). Since
/// f_{k+l} - f_k = lambda e^{f_{k-1}} (e^{f_{k+l-1} - f_{k-1}} - 1), its
/// nonzero solutions are the zeros of h - 2 pi i m with h = f_{k+l-1} - f_{k-1}.
/// Pair(i, j) is f_i = f_j, which reduces the same way to h = f_{j-1} - f_{i-1}.
/// When p = 0 the branch m = 0 only contains lambda = 0 and is skipped.
struct BranchEquation {
  enum class Kind { A, Pair };

  Kind kind = Kind::A;
  int k = 1;
  int l = 1;
  int i = 0;  // Pair only
  int j = 0;  // Pair only
  int p = 0;  // lower iterate index
  int q = 1;  // upper iterate index

  static BranchEquation a(int k, int l);
  static BranchEquation pair(int i, int j);

  std::complex<double> h(std::complex<double> lambda) const noexcept;
  IterateJet jet(std::complex<double> lambda) const noexcept;
  bool skips_zero_branch() const noexcept { return p == 0; }
  /// Multiplicity of lambda = 0 as a zero of h on branch m.
  int origin_multiplicity(int m) const;
};

/// Branches m_lo..m_hi that can carry zeros in |lambda| <= r.
struct BranchRange {
  int lo = 0;
  int hi = 0;
  double max_modulus = 0.0;  // max |h| over the 1024-point circle grid
};

/// Covers every m with 2 pi |m| <= max |h| on |lambda| = r, plus two spare
/// branches on each side. Throws TowerOverflow when h is not finite on the
/// circle or more than 2^20 branches would be needed.
BranchRange branch_range(const BranchEquation& eq, double r);

enum class SeedKind { Grid, Continuation };

struct RootRecord {
  BranchEquation::Kind kind = BranchEquation::Kind::A;
  int k = 0;
  int l = 0;
  int i = 0;
  int j = 0;
  int branch_m = 0;
  std::complex<double> lambda;
  double modulus = 0.0;
  double residual = 0.0;
  int newton_iters = 0;
  SeedKind seed = SeedKind::Grid;
  int simplicity_winding = 0;
  bool boundary_ambiguous = false;
};

/// Winding count of one branch against what Newton found there.
struct BranchCertificate {
  int m = 0;
  int winding = 0;  // zeros inside |lambda| = r (1 + 1e-9), origin included
  int origin = 0;
  int found = 0;
  int grid = 64;  // finest seed grid used
  bool certified() const noexcept { return winding - origin == found; }
};

struct CensusOptions {
  int grid = 64;
  int max_grid = 256;
  int max_iterations = 60;
};

struct Census {
  BranchEquation equation;
  double r = 0.0;
  std::vector<RootRecord> roots;  // sorted by modulus, then argument
  std::vector<BranchCertificate> branches;

  /// Nonzero roots by winding count, origin excluded.
  int winding_total() const;
};

/// Radius of the counting contour: r nudged outward by 1e-9 r.
double contour_radius(double r);

/// Winding of h - 2 pi i m along |lambda| = contour_radius(r).
int winding_count(const BranchEquation& eq, int m, double r);

/// Seeded Newton census of every nonzero root in |lambda| <= r(1 + 1e-9),
/// certified branch by branch against winding_count. Throws IncompleteCensus
/// when a branch still disagrees after the densest seed grid.
Census newton_census(const BranchEquation& eq, double r, const CensusOptions& options = {});

/// Every Pair(i, j) with 0 < i < j < k + l.
std::vector<BranchEquation> pair_equations(int k, int l);

struct FilterResult {
  std::vector<RootRecord> kept;
  std::vector<RootRecord> removed;
};

/// Drops A-roots at which some f_i = f_j, 0 < i < j < k + l. A root is
/// removed when it lies within 1e-7 max(1, |lambda|) of a pair root; direct
/// evaluation of |f_i - f_j| <= 1e-9 max(1, |f_j|) must give the same verdict,
/// otherwise ConsistencyError.
FilterResult filter_b2(const std::vector<RootRecord>& a_roots, const std::vector<RootRecord>& pair_roots, int k,
                       int l);

/// One JSON object per line.
void write_jsonl(std::ostream& out, const std::vector<RootRecord>& roots);

/// Conjugation symmetry: (m, lambda) and (-m, conj lambda) are both present,
/// matched within the dedup tolerance.
bool conjugation_symmetric(const std::vector<RootRecord>& roots);

}  // namespace expcensus

#pragma once

// Pairwise-comparison matrices, the known/unknown split of alternatives, and
// the structural checks every HRE solver relies on.
//
// Indices are 0-based throughout. By convention the unknown alternatives occupy
// indices [0, k) and the reference (known) alternatives occupy [k, n).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hre {

// One cell of a comparison matrix; std::nullopt is the "?" of a judgment the
// experts did not make.
using Entry = std::optional<double>;
inline constexpr std::nullopt_t kMissing = std::nullopt;

inline constexpr double kDefaultTolerance = 1e-9;

class PCMatrix {
 public:
  PCMatrix() = default;

  // Throws Error(ValueError) unless the grid is square, every defined entry is
  // positive and finite, the diagonal is exactly 1 and missingness is symmetric.
  explicit PCMatrix(std::vector<std::vector<Entry>> rows);

  // Consistent matrix c_ij = v_i / v_j.
  static PCMatrix from_priorities(std::span<const double> v);

  std::size_t size() const { return n_; }
  const Entry& operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  bool defined(std::size_t i, std::size_t j) const { return cells_[i * n_ + j].has_value(); }
  bool is_complete() const;

  std::vector<std::vector<Entry>> rows() const;

 private:
  std::size_t n_ = 0;
  std::vector<Entry> cells_;
};

class Partition {
 public:
  // unknown_count alternatives followed by known.size() references with the
  // given priorities. Throws Error(ValueError) if either side is empty or a
  // priority is not positive and finite.
  Partition(std::size_t unknown_count, std::vector<double> known);

  std::size_t unknown_count() const { return k_; }
  std::size_t size() const { return k_ + known_.size(); }
  bool is_known(std::size_t i) const { return i >= k_; }
  double known_priority(std::size_t i) const { return known_[i - k_]; }
  const std::vector<double>& known_priorities() const { return known_; }

 private:
  std::size_t k_;
  std::vector<double> known_;
};

// Full priority vector; entries [k, n) are the known priorities copied verbatim.
struct Ranking {
  std::vector<double> values;
};

struct ReciprocityViolation {
  std::size_t i, j;
  double cij, cji;
};

struct TriadDeviation {
  std::size_t i, j, k;
  double deviation;  // |c_ij - c_ik c_kj| / c_ij
};

struct ConsistencyReport {
  std::size_t examined = 0;
  std::vector<TriadDeviation> deviations;
};

struct Connectivity {
  bool ok = true;
  std::vector<std::size_t> isolated_unknowns;
};

// A comparison between two reference alternatives that disagrees with the
// ratio of their known priorities. Never fatal.
struct KnownMismatch {
  std::size_t i, j;
  double given, implied;
};

struct Diagnostics {
  std::vector<ReciprocityViolation> reciprocity_violations;
  std::vector<std::size_t> undefined_counts;
  ConsistencyReport consistency;
  std::optional<Connectivity> connectivity;  // only when a partition is supplied
  std::vector<KnownMismatch> known_mismatches;

  bool clean() const;
};

// Every defined pair i < j with |c_ij c_ji - 1| > tol.
std::vector<ReciprocityViolation> validate_reciprocity(const PCMatrix& c,
                                                       double tol = kDefaultTolerance);

// Examines each triad i < j < k whose three comparisons c_ij, c_ik, c_kj are
// all defined. For a reciprocal matrix the other orderings of the same triad
// carry the same information.
ConsistencyReport check_consistency(const PCMatrix& c, double tol = kDefaultTolerance);

// s_i: number of missing off-diagonal cells in row i.
std::vector<std::size_t> undefined_counts(const PCMatrix& c);

// Every unknown alternative must have at least one defined comparison and must
// reach a known alternative through defined comparisons.
Connectivity check_connectivity(const PCMatrix& c, const Partition& p);

std::vector<KnownMismatch> known_comparison_mismatches(const PCMatrix& c, const Partition& p,
                                                       double tol = kDefaultTolerance);

Diagnostics diagnose(const PCMatrix& c, const std::optional<Partition>& p,
                     double tol = kDefaultTolerance);

// Guard run by both solvers, in order: sizes, reciprocity, degenerate unknown
// rows, connectivity. Throws the matching hre::Error on the first failure.
void require_rankable(const PCMatrix& c, const Partition& p, double tol = kDefaultTolerance);

}  // namespace hre

namespace hre {

// Replaces every missing c_ij with w_i / w_j. Defined entries are kept as is.
PCMatrix fill_missing(const PCMatrix& c, const Ranking& w);

}  // namespace hre

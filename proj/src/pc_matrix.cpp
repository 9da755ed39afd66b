#include "hre/pc_matrix.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include "hre/error.hpp"

namespace hre {

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

}  // namespace

PCMatrix::PCMatrix(std::vector<std::vector<Entry>> rows) : n_(rows.size()) {
  cells_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_)
      throw Error(ErrorCode::ValueError, "row " + std::to_string(i + 1) + " has " +
                                             std::to_string(rows[i].size()) +
                                             " entries, expected " + std::to_string(n_));
    for (const Entry& e : rows[i]) cells_.push_back(e);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const Entry& e = (*this)(i, j);
      if (i == j) {
        if (!e || *e != 1.0)
          throw Error(ErrorCode::ValueError, "diagonal entry " + cell_name(i, j) + " must be 1");
        continue;
      }
      if (e && !(std::isfinite(*e) && *e > 0.0))
        throw Error(ErrorCode::ValueError,
                    "entry " + cell_name(i, j) + " must be a positive finite number");
      if (e.has_value() != defined(j, i))
        throw Error(ErrorCode::ValueError, "asymmetric missingness between " + cell_name(i, j) +
                                               " and " + cell_name(j, i));
    }
  }
}

PCMatrix PCMatrix::from_priorities(std::span<const double> v) {
  std::vector<std::vector<Entry>> rows(v.size(), std::vector<Entry>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) rows[i][j] = i == j ? 1.0 : v[i] / v[j];
  return PCMatrix(std::move(rows));
}

bool PCMatrix::is_complete() const {
  for (const Entry& e : cells_)
    if (!e) return false;
  return true;
}

std::vector<std::vector<Entry>> PCMatrix::rows() const {
  std::vector<std::vector<Entry>> out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    out[i].assign(cells_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                  cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
  return out;
}

Partition::Partition(std::size_t unknown_count, std::vector<double> known)
    : k_(unknown_count), known_(std::move(known)) {
  if (k_ == 0) throw Error(ErrorCode::ValueError, "at least one unknown alternative is required");
  if (known_.empty())
    throw Error(ErrorCode::ValueError, "at least one known alternative is required");
  for (double w : known_)
    if (!(std::isfinite(w) && w > 0.0))
      throw Error(ErrorCode::ValueError, "known priorities must be positive and finite");
}

bool Diagnostics::clean() const {
  return reciprocity_violations.empty() && consistency.deviations.empty() &&
         (!connectivity || connectivity->ok) && known_mismatches.empty();
}

std::vector<ReciprocityViolation> validate_reciprocity(const PCMatrix& c, double tol) {
  std::vector<ReciprocityViolation> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (!c.defined(i, j)) continue;
      const double cij = *c(i, j), cji = *c(j, i);
      if (std::abs(cij * cji - 1.0) > tol) out.push_back({i, j, cij, cji});
    }
  return out;
}

ConsistencyReport check_consistency(const PCMatrix& c, double tol) {
  ConsistencyReport report;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!c.defined(i, j) || !c.defined(i, k) || !c.defined(k, j)) continue;
        ++report.examined;
        const double cij = *c(i, j);
        const double dev = std::abs(cij - *c(i, k) * *c(k, j)) / cij;
        if (dev > tol) report.deviations.push_back({i, j, k, dev});
      }
  return report;
}

std::vector<std::size_t> undefined_counts(const PCMatrix& c) {
  std::vector<std::size_t> s(c.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!c.defined(i, j)) ++s[i];
  return s;
}

Connectivity check_connectivity(const PCMatrix& c, const Partition& p) {
  const std::size_t n = c.size();
  if (p.size() != n)
    throw Error(ErrorCode::ValueError, "partition covers " + std::to_string(p.size()) +
                                           " alternatives but the matrix has " +
                                           std::to_string(n));
  // Multi-source BFS from every known alternative.
  std::vector<bool> reached(n, false);
  std::queue<std::size_t> frontier;
  for (std::size_t r = p.unknown_count(); r < n; ++r) {
    reached[r] = true;
    frontier.push(r);
  }
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v = 0; v < n; ++v)
      if (v != u && !reached[v] && c.defined(u, v)) {
        reached[v] = true;
        frontier.push(v);
      }
  }
  const auto s = undefined_counts(c);
  Connectivity out;
  for (std::size_t i = 0; i < p.unknown_count(); ++i)
    if (!reached[i] || s[i] + 1 >= n) out.isolated_unknowns.push_back(i);
  out.ok = out.isolated_unknowns.empty();
  return out;
}

std::vector<KnownMismatch> known_comparison_mismatches(const PCMatrix& c, const Partition& p,
                                                       double tol) {
  std::vector<KnownMismatch> out;
  for (std::size_t i = p.unknown_count(); i < c.size(); ++i)
    for (std::size_t j = p.unknown_count(); j < c.size(); ++j) {
      if (i == j || !c.defined(i, j)) continue;
      const double implied = p.known_priority(i) / p.known_priority(j);
      if (std::abs(*c(i, j) - implied) > tol * implied) out.push_back({i, j, *c(i, j), implied});
    }
  return out;
}

Diagnostics diagnose(const PCMatrix& c, const std::optional<Partition>& p, double tol) {
  Diagnostics d;
  d.reciprocity_violations = validate_reciprocity(c, tol);
  d.undefined_counts = undefined_counts(c);
  d.consistency = check_consistency(c, tol);
  if (p) {
    d.connectivity = check_connectivity(c, *p);
    d.known_mismatches = known_comparison_mismatches(c, *p, tol);
  }
  return d;
}

void require_rankable(const PCMatrix& c, const Partition& p, double tol) {
  const std::size_t n = c.size();
  if (p.size() != n)
    throw Error(ErrorCode::ValueError, "partition covers " + std::to_string(p.size()) +
                                           " alternatives but the matrix has " +
                                           std::to_string(n));
  if (const auto v = validate_reciprocity(c, tol); !v.empty()) {
    std::ostringstream msg;
    msg << "c" << cell_name(v.front().i, v.front().j) << " * c"
        << cell_name(v.front().j, v.front().i) << " = " << v.front().cij * v.front().cji
        << " is not 1 (" << v.size() << " violating pair(s))";
    throw Error(ErrorCode::ReciprocityViolation, msg.str());
  }
  const auto s = undefined_counts(c);
  for (std::size_t i = 0; i < p.unknown_count(); ++i)
    if (s[i] + 1 >= n)
      throw Error(ErrorCode::DegenerateRow,
                  "unknown alternative " + std::to_string(i + 1) + " has no defined comparisons", i);
  if (const auto conn = check_connectivity(c, p); !conn.ok)
    throw Error(ErrorCode::NotConnected, "unknown alternative " +
                                             std::to_string(conn.isolated_unknowns.front() + 1) +
                                             " cannot reach any known alternative",
                conn.isolated_unknowns.front());
}

}  // namespace hre

namespace hre {

PCMatrix fill_missing(const PCMatrix& c, const Ranking& w) {
  if (w.values.size() != c.size())
    throw Error(ErrorCode::ValueError, "ranking length differs from matrix size");
  auto rows = c.rows();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!rows[i][j]) rows[i][j] = w.values[i] / w.values[j];
  return PCMatrix(std::move(rows));
}

}  // namespace hre

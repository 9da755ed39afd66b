#pragma once

// Text formats for comparison problems and rankings.
//
// CSV problem:
//   label,a,b,c
//   a,1,1/2,?
//   b,2,1,3
//   c,?,1/3,1
//
//   label,priority
//   c,1.0
//
// The "?" token (bare) marks a missing comparison; empty cells are errors. The
// known-priority section is optional and may live in a separate file.
//
// JSON problem:
//   {"alternatives": ["a","b","c"],
//    "matrix": [[1,"1/2","?"],[2,1,3],["?","1/3",1]],
//    "known": {"c": 1.0}}
//
// Numbers may be decimals or fractions p/q with positive integers p and q.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hre/pc_matrix.hpp"

namespace hre::io {

enum class Format { CSV, JSON };
enum class NumberStyle { Decimal, Fraction };

using LabeledValues = std::vector<std::pair<std::string, double>>;

struct ProblemFile {
  std::vector<std::string> alternatives;
  PCMatrix matrix;
  LabeledValues known;  // in the order given
};

struct ParseOptions {
  // Rebuild the lower triangle as reciprocals of the upper triangle; a missing
  // upper cell makes its mirror missing too.
  bool force_reciprocal = false;
};

// ".json" selects JSON, anything else CSV.
Format format_for_path(std::string_view path);

// Parses a single number token ("2", "0.25", "1/3"). Throws ParseError on
// malformed text and ValueError on a non-positive fraction part.
double parse_number(std::string_view token);

std::string format_number(double value, NumberStyle style = NumberStyle::Decimal);

// Throws ParseError with a position for malformed text, ValueError for
// semantic problems (non-positive entries, non-unit diagonal, asymmetric
// missingness, duplicate or unknown labels).
ProblemFile parse_problem(std::string_view text, Format format, const ParseOptions& opts = {});

// label,priority rows (CSV, optional "label,priority" header) or a flat
// label -> number object (JSON). Used for separate known-priority files and
// for reading rankings back.
LabeledValues parse_priorities(std::string_view text, Format format);

std::string serialize_problem(const ProblemFile& problem, Format format,
                              NumberStyle style = NumberStyle::Decimal);

// Priorities with 12 significant digits, in the given label order.
std::string serialize_ranking(const Ranking& r, const std::vector<std::string>& labels,
                              Format format);

// Several named rankings side by side: CSV with a "label,<name>..." header, or
// a JSON object keyed by name.
std::string serialize_rankings(const std::vector<std::pair<std::string, Ranking>>& rankings,
                               const std::vector<std::string>& labels, Format format);

// The solvers' view of a problem: unknown alternatives first, then known ones,
// each group in input order. order[canonical] = original index.
struct CanonicalProblem {
  PCMatrix matrix;
  std::optional<Partition> partition;
  std::vector<std::size_t> order;
};

// Throws ValueError when `known` names an undeclared label. partition is empty
// when there are no known priorities or every alternative is known.
CanonicalProblem canonicalize(const ProblemFile& problem);

// result(a, b) = c(order[a], order[b])
PCMatrix permute(const PCMatrix& c, const std::vector<std::size_t>& order);
// Inverse of permute with the same order.
PCMatrix unpermute(const PCMatrix& c, const std::vector<std::size_t>& order);
// Maps a canonical-order ranking back to input order.
Ranking restore_order(const Ranking& canonical, const std::vector<std::size_t>& order);

}  // namespace hre::io

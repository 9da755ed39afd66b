#include "hre/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hre/arithmetic.hpp"
#include "hre/baseline.hpp"
#include "hre/error.hpp"
#include "hre/geometric.hpp"
#include "hre/io.hpp"

namespace hre::cli {

namespace {

enum class Method { Arithmetic, Geometric, Both };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string known_path;
  std::string format;         // "", csv, json
  std::string output_format;  // "", csv, json
  std::string method;
  std::string number_style = "decimal";
  std::string output;
  double tol = kDefaultTolerance;
  double log_base = std::numbers::e;
  bool normalize = false;
  bool force_reciprocal = false;
};

// Error raised by the front end itself (I/O, usage) with a fixed code string.
struct CliError {
  std::string code;
  std::string message;
  int exit_code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"IO_ERROR", "cannot read '" + path + "'", kInputError};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::Format parse_format(const std::string& name, const std::string& path) {
  if (name == "csv") return io::Format::CSV;
  if (name == "json") return io::Format::JSON;
  return io::format_for_path(path);
}

struct Loaded {
  io::ProblemFile problem;
  io::CanonicalProblem canonical;
  io::Format input_format;
};

Loaded load(const RunConfig& cfg) {
  Loaded l;
  l.input_format = parse_format(cfg.format, cfg.input);
  io::ParseOptions opts;
  opts.force_reciprocal = cfg.force_reciprocal;
  l.problem = io::parse_problem(read_file(cfg.input), l.input_format, opts);
  if (!cfg.known_path.empty())
    l.problem.known = io::parse_priorities(read_file(cfg.known_path),
                                           io::format_for_path(cfg.known_path));
  l.canonical = io::canonicalize(l.problem);
  return l;
}

const Partition& require_partition(const Loaded& l) {
  if (!l.canonical.partition)
    throw Error(ErrorCode::ValueError,
                "need at least one known and one unknown alternative (see 'label,priority' "
                "section or --known)");
  return *l.canonical.partition;
}

std::string label_of(const Loaded& l, std::size_t canonical_index) {
  return l.problem.alternatives[l.canonical.order[canonical_index]];
}

std::string describe(const Error& e, const Loaded* l, double tol) {
  if (!l) return e.what();
  if (e.code() == ErrorCode::ReciprocityViolation) {
    const auto v = validate_reciprocity(l->problem.matrix, tol);
    if (!v.empty()) {
      std::ostringstream msg;
      msg << v.size() << " non-reciprocal pair(s), first " << l->problem.alternatives[v[0].i]
          << "/" << l->problem.alternatives[v[0].j] << ": " << v[0].cij << " * " << v[0].cji
          << " = " << v[0].cij * v[0].cji;
      return msg.str();
    }
  }
  if (!e.alternative()) return e.what();
  const std::string label = "'" + label_of(*l, *e.alternative()) + "'";
  switch (e.code()) {
    case ErrorCode::DegenerateRow:
      return "unknown alternative " + label + " has no defined comparisons";
    case ErrorCode::NotConnected:
      return "unknown alternative " + label + " cannot reach any known alternative";
    case ErrorCode::NonPositiveSolution:
      return "computed priority of " + label +
             " is not positive; comparisons are too inconsistent for the arithmetic method";
    default:
      return e.what();
  }
}

void warn_known_mismatches(const Loaded& l, double tol, std::ostream& err) {
  for (const auto& m : known_comparison_mismatches(l.canonical.matrix, *l.canonical.partition, tol))
    err << "WARNING KNOWN_COMPARISON_MISMATCH: " << label_of(l, m.i) << "/" << label_of(l, m.j)
        << " given " << m.given << ", known priorities imply " << m.implied
        << " (ignored)\n";
}

Ranking rank_with(Method m, const Loaded& l, const RunConfig& cfg) {
  const auto& p = require_partition(l);
  Ranking r;
  if (m == Method::Arithmetic) {
    ArithmeticOptions opts;
    opts.reciprocity_tol = cfg.tol;
    r = solve_arithmetic(l.canonical.matrix, p, opts);
  } else {
    GeometricOptions opts;
    opts.reciprocity_tol = cfg.tol;
    opts.log_base = cfg.log_base;
    r = solve_geometric(l.canonical.matrix, p, opts);
  }
  return io::restore_order(r, l.canonical.order);
}

Method parse_method(const std::string& name) {
  if (name == "arithmetic") return Method::Arithmetic;
  if (name == "geometric") return Method::Geometric;
  return Method::Both;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw CliError{"IO_ERROR", "cannot write '" + cfg.output + "'", kInputError};
  f << text;
}

io::Format output_format(const RunConfig& cfg, const Loaded& l) {
  return cfg.output_format.empty() ? l.input_format : parse_format(cfg.output_format, "");
}

int cmd_rank(const RunConfig& cfg, const Loaded& l, std::ostream& out, std::ostream& err) {
  require_partition(l);
  warn_known_mismatches(l, cfg.tol, err);
  const Method m = parse_method(cfg.method);
  std::vector<std::pair<std::string, Ranking>> results;
  if (m != Method::Geometric) results.emplace_back("arithmetic", rank_with(Method::Arithmetic, l, cfg));
  if (m != Method::Arithmetic) results.emplace_back("geometric", rank_with(Method::Geometric, l, cfg));
  if (cfg.normalize) {
    err << "NOTE NORMALIZED: priorities rescaled to sum to 1; known priorities are altered\n";
    for (auto& [name, r] : results) {
      double sum = 0.0;
      for (double v : r.values) sum += v;
      for (double& v : r.values) v /= sum;
    }
  }
  const auto fmt = output_format(cfg, l);
  emit(cfg,
       results.size() == 1 ? io::serialize_ranking(results[0].second, l.problem.alternatives, fmt)
                           : io::serialize_rankings(results, l.problem.alternatives, fmt),
       out);
  return kOk;
}

int cmd_check(const RunConfig& cfg, const Loaded& l, std::ostream& out) {
  const auto& labels = l.problem.alternatives;
  const auto& c = l.problem.matrix;
  // Reciprocity, counts and triads are reported in input order; the
  // partition-dependent checks run on the canonical matrix.
  auto d = diagnose(c, std::nullopt, cfg.tol);
  if (const auto& p = l.canonical.partition) {
    d.connectivity = check_connectivity(l.canonical.matrix, *p);
    d.known_mismatches = known_comparison_mismatches(l.canonical.matrix, *p, cfg.tol);
  }

  std::ostringstream rep;
  rep.precision(12);
  rep << "alternatives: " << labels.size() << "\n";
  rep << "undefined counts:";
  for (std::size_t i = 0; i < labels.size(); ++i) rep << " " << labels[i] << "=" << d.undefined_counts[i];
  rep << "\n";
  rep << "reciprocity violations: " << d.reciprocity_violations.size() << "\n";
  for (const auto& v : d.reciprocity_violations)
    rep << "  " << labels[v.i] << "," << labels[v.j] << " c_ij=" << v.cij << " c_ji=" << v.cji
        << " product=" << v.cij * v.cji << "\n";
  rep << "triads examined: " << d.consistency.examined << "\n";
  rep << "triad deviations: " << d.consistency.deviations.size() << "\n";
  for (const auto& t : d.consistency.deviations)
    rep << "  " << labels[t.i] << "," << labels[t.j] << "," << labels[t.k]
        << " deviation=" << t.deviation << "\n";
  if (!d.connectivity) {
    rep << "connectivity: not checked (no known/unknown split)\n";
  } else if (d.connectivity->ok) {
    rep << "connectivity: ok\n";
  } else {
    rep << "connectivity: failed";
    for (std::size_t i : d.connectivity->isolated_unknowns) rep << " " << label_of(l, i);
    rep << "\n";
  }
  rep << "known comparison mismatches: " << d.known_mismatches.size() << "\n";
  for (const auto& m : d.known_mismatches)
    rep << "  " << label_of(l, m.i) << "," << label_of(l, m.j) << " given=" << m.given
        << " implied=" << m.implied << "\n";
  emit(cfg, rep.str(), out);
  return d.clean() ? kOk : kFindings;
}

int cmd_complete(const RunConfig& cfg, const Loaded& l, std::ostream& out, std::ostream& err) {
  require_partition(l);
  warn_known_mismatches(l, cfg.tol, err);
  const auto r = rank_with(parse_method(cfg.method), l, cfg);
  io::ProblemFile filled = l.problem;
  filled.matrix = fill_missing(l.problem.matrix, r);
  const auto style =
      cfg.number_style == "fraction" ? io::NumberStyle::Fraction : io::NumberStyle::Decimal;
  emit(cfg, io::serialize_problem(filled, output_format(cfg, l), style), out);
  return kOk;
}

double max_relative_difference(const Ranking& a, const Ranking& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double scale = std::max(std::abs(a.values[i]), std::abs(b.values[i]));
    if (scale > 0.0) worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / scale);
  }
  return worst;
}

int cmd_compare(const RunConfig& cfg, const Loaded& l, std::ostream& out, std::ostream& err) {
  const auto& p = require_partition(l);
  warn_known_mismatches(l, cfg.tol, err);
  std::vector<std::pair<std::string, Ranking>> cols;
  cols.emplace_back("arithmetic", rank_with(Method::Arithmetic, l, cfg));
  cols.emplace_back("geometric", rank_with(Method::Geometric, l, cfg));
  if (l.problem.matrix.is_complete()) {
    // Baselines are normalized to 1; rescale them so the known alternatives
    // carry the same total as in the HRE columns.
    double known_total = 0.0;
    for (double w : p.known_priorities()) known_total += w;
    for (auto base : {evm(l.problem.matrix), gmm(l.problem.matrix)}) {
      double baseline_known = 0.0;
      for (std::size_t a = p.unknown_count(); a < l.canonical.order.size(); ++a)
        baseline_known += base.weights[l.canonical.order[a]];
      Ranking r{base.weights};
      for (double& v : r.values) v *= known_total / baseline_known;
      cols.emplace_back(base.method == BaselineMethod::EVM ? "evm" : "gmm", std::move(r));
    }
  }

  const auto fmt = output_format(cfg, l);
  std::string text = io::serialize_rankings(cols, l.problem.alternatives, fmt);
  if (fmt == io::Format::JSON) {
    auto doc = nlohmann::ordered_json::object();
    auto& diff = doc["max_relative_difference"] = nlohmann::ordered_json::object();
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t b = a + 1; b < cols.size(); ++b)
        diff[cols[a].first + "/" + cols[b].first] =
            max_relative_difference(cols[a].second, cols[b].second);
    doc["priorities"] = nlohmann::ordered_json::parse(text);
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream diff;
    diff.precision(6);
    diff << "\npair,max_relative_difference\n";
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t b = a + 1; b < cols.size(); ++b)
        diff << cols[a].first << "/" << cols[b].first << ","
             << max_relative_difference(cols[a].second, cols[b].second) << "\n";
    text += diff.str();
  }
  emit(cfg, text, out);
  return kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NonPositiveSolution:
    case ErrorCode::NoConvergence:
      return kSolverError;
    default:
      return kInputError;
  }
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_known = true) {
  sub->add_option("input", cfg.input, "Problem file (CSV or JSON)")->required();
  if (with_known)
    sub->add_option("-k,--known", cfg.known_path,
                    "Separate known-priority file (label,priority CSV or JSON object)");
  sub->add_option("-f,--format", cfg.format, "Input format; default from the file extension")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output-format", cfg.output_format, "Output format; default: input format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", cfg.output, "Write results to this file instead of stdout");
  sub->add_option("--tol", cfg.tol, "Relative tolerance for reciprocity and consistency checks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_flag("--force-reciprocal", cfg.force_reciprocal,
                "Rebuild the lower triangle as reciprocals of the upper triangle");
}

void add_log_base(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--log-base", cfg.log_base, "Logarithm base for the geometric method")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heuristic rating estimation for incomplete pairwise comparisons", "hre"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* rank = app.add_subcommand("rank", "Compute priorities of the unknown alternatives");
  add_common(rank, cfg);
  add_log_base(rank, cfg);
  cfg.method = "both";
  rank->add_option("-m,--method", cfg.method, "arithmetic, geometric or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"arithmetic", "geometric", "both"}));
  rank->add_flag("--normalize", cfg.normalize,
                 "Rescale every ranking to sum to 1 (alters the known priorities)");

  auto* check = app.add_subcommand("check", "Report reciprocity, missing counts, connectivity and triads");
  add_common(check, cfg);

  auto* complete = app.add_subcommand("complete", "Fill missing comparisons from a computed ranking");
  add_common(complete, cfg);
  add_log_base(complete, cfg);
  std::string complete_method;
  complete->add_option("-m,--method", complete_method, "arithmetic or geometric")
      ->required()
      ->check(CLI::IsMember({"arithmetic", "geometric"}));
  complete->add_option("--number-style", cfg.number_style, "decimal or fraction")
      ->capture_default_str()
      ->check(CLI::IsMember({"decimal", "fraction"}));

  auto* compare = app.add_subcommand("compare", "Tabulate HRE (and on complete input EVM/GMM) side by side");
  add_common(compare, cfg);
  add_log_base(compare, cfg);

  std::ostringstream usage_out, usage_err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "USAGE_ERROR: " << e.what() << "\n";
    return kInputError;
  }

  for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  if (cfg.subcommand == "complete") cfg.method = complete_method;

  std::optional<Loaded> loaded;
  try {
    loaded = load(cfg);
    if (cfg.subcommand == "rank") return cmd_rank(cfg, *loaded, out, err);
    if (cfg.subcommand == "check") return cmd_check(cfg, *loaded, out);
    if (cfg.subcommand == "complete") return cmd_complete(cfg, *loaded, out, err);
    return cmd_compare(cfg, *loaded, out, err);
  } catch (const CliError& e) {
    err << e.code << ": " << e.message << "\n";
    return e.exit_code;
  } catch (const Error& e) {
    err << code_name(e.code()) << ": " << describe(e, loaded ? &*loaded : nullptr, cfg.tol) << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace hre::cli

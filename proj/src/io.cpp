#include "hre/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "hre/error.hpp"

namespace hre::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string printf_g(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double round12(double v) { return std::stod(printf_g(v, "%.12g")); }

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

bool blank(std::string_view s) { return trim(s).empty(); }

struct Field {
  std::string text;
  std::size_t column;  // 1-based
  bool quoted = false;
};

std::vector<Field> split_fields(const Line& line) {
  std::vector<Field> fields;
  const std::string_view s = line.text;
  std::size_t pos = 0;
  while (true) {
    Field f;
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    f.column = pos + 1;
    if (pos < s.size() && s[pos] == '"') {
      f.quoted = true;
      ++pos;
      bool closed = false;
      while (pos < s.size()) {
        if (s[pos] == '"') {
          if (pos + 1 < s.size() && s[pos + 1] == '"') {
            f.text += '"';
            pos += 2;
            continue;
          }
          closed = true;
          ++pos;
          break;
        }
        f.text += s[pos++];
      }
      if (!closed) throw ParseError("unterminated quoted field", line.number, f.column);
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
      if (pos < s.size() && s[pos] != ',')
        throw ParseError("unexpected text after quoted field", line.number, pos + 1);
    } else {
      const auto comma = s.find(',', pos);
      f.text = std::string(trim(s.substr(pos, comma == std::string_view::npos ? s.npos : comma - pos)));
      pos = comma == std::string_view::npos ? s.size() : comma;
    }
    fields.push_back(std::move(f));
    if (pos >= s.size()) break;
    ++pos;  // comma
  }
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && s == std::string(trim(s)) && s != "?")
    return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Wraps parse_number so malformed tokens report their position.
double number_at(const Field& f, std::size_t line) {
  if (f.text.empty()) throw ParseError("empty cell", line, f.column);
  try {
    return parse_number(f.text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line, f.column);
  }
}

Entry entry_at(const Field& f, std::size_t line) {
  if (!f.quoted && f.text == "?") return kMissing;
  return number_at(f, line);
}

void validate_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(ErrorCode::ValueError, "alternative labels must be nonempty");
    if (!seen.insert(l).second) throw Error(ErrorCode::ValueError, "duplicate label '" + l + "'");
  }
}

void validate_known(const std::vector<std::string>& labels, const LabeledValues& known) {
  const std::set<std::string> declared(labels.begin(), labels.end());
  std::set<std::string> seen;
  for (const auto& [label, w] : known) {
    if (!declared.count(label))
      throw Error(ErrorCode::ValueError, "known priority for undeclared label '" + label + "'");
    if (!seen.insert(label).second)
      throw Error(ErrorCode::ValueError, "duplicate known priority for '" + label + "'");
    if (!(std::isfinite(w) && w > 0.0))
      throw Error(ErrorCode::ValueError, "known priority for '" + label + "' must be positive");
  }
}

PCMatrix finish_matrix(std::vector<std::vector<Entry>> rows, const ParseOptions& opts) {
  if (opts.force_reciprocal)
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        rows[i][j] = rows[j][i] ? Entry(1.0 / *rows[j][i]) : kMissing;
  return PCMatrix(std::move(rows));
}

LabeledValues parse_csv_priorities(const std::vector<Line>& lines, std::size_t first) {
  LabeledValues out;
  bool header_allowed = true;
  for (std::size_t li = first; li < lines.size(); ++li) {
    if (blank(lines[li].text)) continue;
    const auto fields = split_fields(lines[li]);
    if (header_allowed && fields.size() == 2 && fields[0].text == "label" &&
        fields[1].text == "priority" && !fields[0].quoted) {
      header_allowed = false;
      continue;
    }
    header_allowed = false;
    if (fields.size() != 2)
      throw ParseError("expected 'label,priority'", lines[li].number, 1);
    out.emplace_back(fields[0].text, number_at(fields[1], lines[li].number));
  }
  return out;
}

ProblemFile parse_csv(std::string_view text, const ParseOptions& opts) {
  const auto lines = split_lines(text);
  std::size_t li = 0;
  while (li < lines.size() && blank(lines[li].text)) ++li;
  if (li == lines.size()) throw ParseError("missing header row", 1, 1);

  ProblemFile out;
  const auto header = split_fields(lines[li]);
  if (header[0].text != "label")
    throw ParseError("header must start with 'label'", lines[li].number, header[0].column);
  for (std::size_t c = 1; c < header.size(); ++c) out.alternatives.push_back(header[c].text);
  if (out.alternatives.empty()) throw ParseError("header declares no alternatives", lines[li].number);
  ++li;

  const std::size_t n = out.alternatives.size();
  std::vector<std::vector<Entry>> rows;
  for (std::size_t r = 0; r < n; ++r, ++li) {
    if (li >= lines.size() || blank(lines[li].text))
      throw ParseError("expected " + std::to_string(n) + " matrix rows, found " + std::to_string(r),
                       li < lines.size() ? lines[li].number : lines.back().number + 1);
    const auto fields = split_fields(lines[li]);
    if (fields.size() != n + 1)
      throw ParseError("expected " + std::to_string(n + 1) + " fields, found " +
                           std::to_string(fields.size()),
                       lines[li].number);
    if (fields[0].text != out.alternatives[r])
      throw ParseError("row label '" + fields[0].text + "' does not match column '" +
                           out.alternatives[r] + "'",
                       lines[li].number, fields[0].column);
    std::vector<Entry> row;
    for (std::size_t c = 1; c <= n; ++c) row.push_back(entry_at(fields[c], lines[li].number));
    rows.push_back(std::move(row));
  }

  validate_labels(out.alternatives);
  out.matrix = finish_matrix(std::move(rows), opts);

  while (li < lines.size() && blank(lines[li].text)) ++li;
  if (li < lines.size()) {
    const auto fields = split_fields(lines[li]);
    if (fields.size() != 2 || fields[0].text != "label" || fields[1].text != "priority")
      throw ParseError("expected 'label,priority' section header", lines[li].number, 1);
    out.known = parse_csv_priorities(lines, li + 1);
  }
  validate_known(out.alternatives, out.known);
  return out;
}

[[noreturn]] void rethrow_json(const nlohmann::json::parse_error& e, std::string_view text) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  throw ParseError("invalid JSON", line, column);
}

ordered_json parse_json_text(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    rethrow_json(e, text);
  }
}

double json_number(const ordered_json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_number(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what(), 0);
    }
  }
  throw ParseError(where + ": expected a number or fraction string", 0);
}

LabeledValues json_priorities(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object of label -> number", 0);
  LabeledValues out;
  for (const auto& [label, v] : obj.items())
    out.emplace_back(label, json_number(v, where + "." + label));
  return out;
}

ProblemFile parse_json(std::string_view text, const ParseOptions& opts) {
  const auto doc = parse_json_text(text);
  if (!doc.is_object()) throw ParseError("top level must be an object", 1, 1);
  if (!doc.contains("alternatives") || !doc["alternatives"].is_array())
    throw ParseError("'alternatives' must be an array of strings", 0);
  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    throw ParseError("'matrix' must be an array of arrays", 0);

  ProblemFile out;
  for (const auto& a : doc["alternatives"]) {
    if (!a.is_string()) throw ParseError("'alternatives' must be an array of strings", 0);
    out.alternatives.push_back(a.get<std::string>());
  }
  const std::size_t n = out.alternatives.size();
  const auto& m = doc["matrix"];
  if (m.size() != n)
    throw ParseError("'matrix' has " + std::to_string(m.size()) + " rows for " +
                         std::to_string(n) + " alternatives",
                     0);
  std::vector<std::vector<Entry>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where_row = "matrix[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != n)
      throw ParseError(where_row + " must be an array of " + std::to_string(n) + " entries", 0);
    std::vector<Entry> row;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = m[i][j];
      if (v.is_string() && v.get<std::string>() == "?")
        row.push_back(kMissing);
      else
        row.push_back(json_number(v, where_row + "[" + std::to_string(j) + "]"));
    }
    rows.push_back(std::move(row));
  }
  validate_labels(out.alternatives);
  out.matrix = finish_matrix(std::move(rows), opts);
  if (doc.contains("known")) out.known = json_priorities(doc["known"], "known");
  validate_known(out.alternatives, out.known);
  return out;
}

ordered_json json_value(double v, NumberStyle style) {
  if (style == NumberStyle::Fraction) {
    const auto s = format_number(v, style);
    if (s.find('/') != std::string::npos) return s;
  }
  return round12(v);
}

}  // namespace

Format format_for_path(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot != std::string_view::npos) {
    std::string ext(path.substr(dot + 1));
    for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == "json") return Format::JSON;
  }
  return Format::CSV;
}

double parse_number(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty number", 0);
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (const auto slash = token.find('/'); slash != std::string_view::npos) {
    long long p = 0, q = 0;
    const auto r1 = std::from_chars(first, first + slash, p);
    const auto r2 = std::from_chars(first + slash + 1, last, q);
    if (r1.ec != std::errc{} || r1.ptr != first + slash || r2.ec != std::errc{} || r2.ptr != last)
      throw ParseError("malformed fraction '" + std::string(token) + "'", 0);
    if (p <= 0 || q <= 0)
      throw Error(ErrorCode::ValueError,
                  "fraction '" + std::string(token) + "' needs positive numerator and denominator");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  if (*first == '+') ++first;
  double v = 0.0;
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc{} || r.ptr != last)
    throw ParseError("malformed number '" + std::string(token) + "'", 0);
  return v;
}

std::string format_number(double value, NumberStyle style) {
  if (style == NumberStyle::Fraction && std::isfinite(value) && value > 0.0) {
    // Continued-fraction convergents with small denominators.
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = value;
    for (int step = 0; step < 20; ++step) {
      const double a = std::floor(x);
      if (a > 1e12) break;
      const auto ai = static_cast<long long>(a);
      const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
      if (k2 > 1000) break;
      h0 = h1, h1 = h2, k0 = k1, k1 = k2;
      const double approx = static_cast<double>(h1) / static_cast<double>(k1);
      if (h1 > 0 && std::abs(approx - value) <= 1e-12 * value)
        return k1 == 1 ? std::to_string(h1) : std::to_string(h1) + "/" + std::to_string(k1);
      if (x - a == 0.0) break;
      x = 1.0 / (x - a);
    }
  }
  return printf_g(value, "%.12g");
}

ProblemFile parse_problem(std::string_view text, Format format, const ParseOptions& opts) {
  return format == Format::JSON ? parse_json(text, opts) : parse_csv(text, opts);
}

LabeledValues parse_priorities(std::string_view text, Format format) {
  if (format == Format::JSON) return json_priorities(parse_json_text(text), "priorities");
  return parse_csv_priorities(split_lines(text), 0);
}

std::string serialize_problem(const ProblemFile& problem, Format format, NumberStyle style) {
  const auto& c = problem.matrix;
  if (format == Format::JSON) {
    ordered_json doc;
    doc["alternatives"] = problem.alternatives;
    auto rows = ordered_json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto row = ordered_json::array();
      for (std::size_t j = 0; j < c.size(); ++j)
        row.push_back(c.defined(i, j) ? json_value(*c(i, j), style) : ordered_json("?"));
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
    if (!problem.known.empty()) {
      auto known = ordered_json::object();
      for (const auto& [label, w] : problem.known) known[label] = json_value(w, style);
      doc["known"] = std::move(known);
    }
    return doc.dump(2) + "\n";
  }

  std::string out = "label";
  for (const auto& l : problem.alternatives) out += "," + csv_field(l);
  out += "\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    out += csv_field(problem.alternatives[i]);
    for (std::size_t j = 0; j < c.size(); ++j)
      out += "," + (c.defined(i, j) ? format_number(*c(i, j), style) : std::string("?"));
    out += "\n";
  }
  if (!problem.known.empty()) {
    out += "\nlabel,priority\n";
    for (const auto& [label, w] : problem.known)
      out += csv_field(label) + "," + format_number(w, style) + "\n";
  }
  return out;
}

std::string serialize_ranking(const Ranking& r, const std::vector<std::string>& labels,
                              Format format) {
  if (r.values.size() != labels.size())
    throw Error(ErrorCode::ValueError, "ranking and label list lengths differ");
  if (format == Format::JSON) {
    auto obj = ordered_json::object();
    for (std::size_t i = 0; i < labels.size(); ++i) obj[labels[i]] = round12(r.values[i]);
    return obj.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    out += csv_field(labels[i]) + "," + printf_g(r.values[i], "%#.12g") + "\n";
  return out;
}

std::string serialize_rankings(const std::vector<std::pair<std::string, Ranking>>& rankings,
                               const std::vector<std::string>& labels, Format format) {
  for (const auto& [name, r] : rankings)
    if (r.values.size() != labels.size())
      throw Error(ErrorCode::ValueError, "ranking '" + name + "' length differs from labels");
  if (format == Format::JSON) {
    auto doc = ordered_json::object();
    for (const auto& [name, r] : rankings) {
      auto obj = ordered_json::object();
      for (std::size_t i = 0; i < labels.size(); ++i) obj[labels[i]] = round12(r.values[i]);
      doc[name] = std::move(obj);
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "label";
  for (const auto& [name, r] : rankings) out += "," + csv_field(name);
  out += "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += csv_field(labels[i]);
    for (const auto& [name, r] : rankings) out += "," + printf_g(r.values[i], "%#.12g");
    out += "\n";
  }
  return out;
}

CanonicalProblem canonicalize(const ProblemFile& problem) {
  validate_known(problem.alternatives, problem.known);
  std::unordered_map<std::string, double> known(problem.known.begin(), problem.known.end());
  CanonicalProblem out;
  std::vector<std::size_t> known_idx;
  for (std::size_t i = 0; i < problem.alternatives.size(); ++i)
    (known.count(problem.alternatives[i]) ? known_idx : out.order).push_back(i);
  const std::size_t k = out.order.size();
  std::vector<double> priorities;
  for (std::size_t i : known_idx) priorities.push_back(known.at(problem.alternatives[i]));
  out.order.insert(out.order.end(), known_idx.begin(), known_idx.end());
  out.matrix = permute(problem.matrix, out.order);
  if (k > 0 && !priorities.empty()) out.partition.emplace(k, std::move(priorities));
  return out;
}

PCMatrix permute(const PCMatrix& c, const std::vector<std::size_t>& order) {
  std::vector<std::vector<Entry>> rows(c.size(), std::vector<Entry>(c.size()));
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) rows[a][b] = c(order[a], order[b]);
  return PCMatrix(std::move(rows));
}

PCMatrix unpermute(const PCMatrix& c, const std::vector<std::size_t>& order) {
  std::vector<std::vector<Entry>> rows(c.size(), std::vector<Entry>(c.size()));
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) rows[order[a]][order[b]] = c(a, b);
  return PCMatrix(std::move(rows));
}

Ranking restore_order(const Ranking& canonical, const std::vector<std::size_t>& order) {
  Ranking out;
  out.values.resize(canonical.values.size());
  for (std::size_t a = 0; a < order.size(); ++a) out.values[order[a]] = canonical.values[a];
  return out;
}

}  // namespace hre::io

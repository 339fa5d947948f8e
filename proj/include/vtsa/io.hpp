#pragma once

// Text file formats.  All points are 0-indexed, matching every report the
// toolkit produces.
//
//   group file:  line 1 `degree <n>`; each later significant line is one
//                permutation given as n space-separated images.
//   graph file:  line 1 `graph <n> <m> <directed:0|1>`; then m lines `u v`.
//   pair file:   line 1 `pair`; then, in any order, `graph <path>`,
//                `group <path>` and `d <int>`.  Paths are resolved relative
//                to the pair file's directory.
//   bound file:  one prefix s-expression, e.g. `(fact (mul 2 (pow 2 16)))`.
//
// `#` starts a comment anywhere on a line; blank lines are ignored.  Parse
// errors are FormatErrors carrying the file name and the 1-based line number.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vtsa/bound_expr.hpp"
#include "vtsa/error.hpp"
#include "vtsa/graph.hpp"
#include "vtsa/group.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

namespace detail {

struct SourceLine {
  std::string text;   // comment-stripped, trimmed
  std::size_t number;  // 1-based line number in the file
};

inline std::vector<SourceLine> significant_lines(std::istream& in) {
  std::vector<SourceLine> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    out.push_back({raw.substr(first, last - first + 1), number});
  }
  return out;
}

inline std::vector<std::string> split_fields(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> fields;
  std::string f;
  while (iss >> f) fields.push_back(std::move(f));
  return fields;
}

inline unsigned long parse_count(const std::string& field, const std::string& context,
                                 std::size_t line) {
  std::size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(field, &used);
  } catch (const std::exception&) {
    throw FormatError(context + ": expected a nonnegative integer, got '" + field + "'",
                      line);
  }
  if (used != field.size() || field[0] == '-')
    throw FormatError(context + ": expected a nonnegative integer, got '" + field + "'",
                      line);
  return v;
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Groups.

inline PermGroup read_group(std::istream& in, const std::string& name,
                            std::optional<mpz_class> known_order = std::nullopt) {
  auto lines = detail::significant_lines(in);
  if (lines.empty()) throw FormatError(name + ": empty group file");
  auto header = detail::split_fields(lines[0].text);
  if (header.size() != 2 || header[0] != "degree")
    throw FormatError(name + ": expected header 'degree <n>'", lines[0].number);
  const std::size_t degree = detail::parse_count(header[1], name, lines[0].number);
  if (degree == 0) throw FormatError(name + ": degree must be positive", lines[0].number);
  if (degree > config().max_points)
    throw CapError(name + ": degree exceeds the point cap");

  std::vector<Perm> gens;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = detail::split_fields(lines[i].text);
    if (fields.size() != degree)
      throw FormatError(name + ": permutation has " + std::to_string(fields.size()) +
                            " images, degree is " + std::to_string(degree),
                        lines[i].number);
    std::vector<Point> img(degree);
    for (std::size_t j = 0; j < degree; ++j) {
      unsigned long v = detail::parse_count(fields[j], name, lines[i].number);
      if (v >= degree)
        throw FormatError(name + ": image " + std::to_string(v) + " out of range",
                          lines[i].number);
      img[j] = static_cast<Point>(v);
    }
    try {
      gens.emplace_back(std::move(img));
    } catch (const InputError& e) {
      throw FormatError(name + ": " + e.what(), lines[i].number);
    }
  }
  return PermGroup(degree, std::move(gens), std::move(known_order));
}

inline PermGroup read_group_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_group(in, path.filename().string());
}

inline void write_group(std::ostream& out, const PermGroup& g,
                        const std::string& comment = "") {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "degree " << g.degree() << "\n";
  for (const Perm& p : g.generators()) {
    for (std::size_t i = 0; i < g.degree(); ++i) {
      if (i) out << ' ';
      out << p[static_cast<Point>(i)];
    }
    out << "\n";
  }
}

inline void write_group_file(const std::filesystem::path& path, const PermGroup& g,
                             const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  write_group(out, g, comment);
}

// ---------------------------------------------------------------------------
// Graphs.

inline Graph read_graph(std::istream& in, const std::string& name) {
  auto lines = detail::significant_lines(in);
  if (lines.empty()) throw FormatError(name + ": empty graph file");
  auto header = detail::split_fields(lines[0].text);
  if (header.size() != 4 || header[0] != "graph")
    throw FormatError(name + ": expected header 'graph <n> <m> <directed:0|1>'",
                      lines[0].number);
  const std::size_t n = detail::parse_count(header[1], name, lines[0].number);
  const std::size_t m = detail::parse_count(header[2], name, lines[0].number);
  if (header[3] != "0" && header[3] != "1")
    throw FormatError(name + ": directed flag must be 0 or 1", lines[0].number);
  const bool directed = header[3] == "1";
  if (lines.size() - 1 != m)
    throw FormatError(name + ": header announces " + std::to_string(m) +
                          " edges, file has " + std::to_string(lines.size() - 1),
                      lines[0].number);

  std::vector<std::pair<Point, Point>> edges;
  edges.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = detail::split_fields(lines[i].text);
    if (fields.size() != 2)
      throw FormatError(name + ": expected an edge 'u v'", lines[i].number);
    unsigned long u = detail::parse_count(fields[0], name, lines[i].number);
    unsigned long v = detail::parse_count(fields[1], name, lines[i].number);
    if (u >= n || v >= n)
      throw FormatError(name + ": edge endpoint out of range", lines[i].number);
    edges.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
  }
  try {
    return make_graph(n, edges, directed);
  } catch (const InputError& e) {
    throw FormatError(name + ": " + e.what());
  }
}

inline Graph read_graph_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_graph(in, path.filename().string());
}

inline void write_graph(std::ostream& out, const Graph& g,
                        const std::string& comment = "") {
  std::vector<std::pair<Point, Point>> edges;
  for (Point u = 0; u < g.vertex_count; ++u)
    for (Point v : g.adjacency[u])
      if (g.directed || u < v) edges.emplace_back(u, v);
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "graph " << g.vertex_count << ' ' << edges.size() << ' ' << (g.directed ? 1 : 0)
      << "\n";
  for (auto [u, v] : edges) out << u << ' ' << v << "\n";
}

inline void write_graph_file(const std::filesystem::path& path, const Graph& g,
                             const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  write_graph(out, g, comment);
}

// ---------------------------------------------------------------------------
// Pairs.

inline VTPair read_pair_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  auto lines = detail::significant_lines(in);
  const std::string name = path.filename().string();
  if (lines.empty() || detail::split_fields(lines[0].text) != std::vector<std::string>{"pair"})
    throw FormatError(name + ": expected header 'pair'", lines.empty() ? 1 : lines[0].number);

  std::optional<std::filesystem::path> graph_path, group_path;
  std::optional<std::size_t> d;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = detail::split_fields(lines[i].text);
    if (fields.size() != 2)
      throw FormatError(name + ": expected 'graph <path>', 'group <path>' or 'd <int>'",
                        lines[i].number);
    if (fields[0] == "graph" && !graph_path)
      graph_path = path.parent_path() / fields[1];
    else if (fields[0] == "group" && !group_path)
      group_path = path.parent_path() / fields[1];
    else if (fields[0] == "d" && !d)
      d = detail::parse_count(fields[1], name, lines[i].number);
    else
      throw FormatError(name + ": unexpected or repeated key '" + fields[0] + "'",
                        lines[i].number);
  }
  if (!graph_path || !group_path || !d)
    throw FormatError(name + ": pair file needs one graph, one group and one d entry");

  Graph graph = read_graph_file(*graph_path);
  PermGroup group = read_group_file(*group_path);
  PairValidation pv = validate_pair(graph, group, *d);
  if (!pv.ok())
    throw InputError(name + ": not a vertex-transitive pair: " + to_string(pv.diagnosis));
  return *pv.pair;
}

// Writes `<stem>.graph`, `<stem>.group` and `<stem>.pair` into `dir` and
// returns the pair file path.
inline std::filesystem::path write_pair_files(const std::filesystem::path& dir,
                                              const std::string& stem, const VTPair& pair,
                                              const std::string& comment = "") {
  std::filesystem::create_directories(dir);
  write_graph_file(dir / (stem + ".graph"), pair.graph, comment);
  write_group_file(dir / (stem + ".group"), pair.group, comment);
  std::filesystem::path pair_path = dir / (stem + ".pair");
  std::ofstream out(pair_path);
  if (!out) throw FormatError(pair_path.string() + ": cannot open for writing");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "pair\n";
  out << "graph " << stem << ".graph\n";
  out << "group " << stem << ".group\n";
  out << "d " << pair.d << "\n";
  return pair_path;
}

// ---------------------------------------------------------------------------
// Bound expressions.

inline BoundExpr read_bound(std::istream& in, const std::string& name) {
  auto lines = detail::significant_lines(in);
  std::string text;
  for (const auto& l : lines) {
    if (!text.empty()) text += ' ';
    text += l.text;
  }
  if (text.empty()) throw FormatError(name + ": empty bound expression file");
  try {
    return BoundExpr::parse(text);
  } catch (const FormatError& e) {
    throw FormatError(name + ": " + e.what());
  }
}

inline BoundExpr read_bound_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_bound(in, path.filename().string());
}

inline void write_bound_file(const std::filesystem::path& path, const BoundExpr& e,
                             const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  if (!comment.empty()) out << "# " << comment << "\n";
  out << e.to_string() << "\n";
}

}  // namespace vtsa

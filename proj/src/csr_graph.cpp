#include "llp/csr_graph.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace llp {

CsrGraph CsrGraph::from_edges(std::size_t num_vertices,
                              std::span<const Edge> edges) {
  if (num_vertices > std::numeric_limits<VertexId>::max())
    throw std::invalid_argument("graph too large for 32-bit vertex ids");
  CsrGraph g;
  g.offsets_.assign(num_vertices + 1, 0);
  for (const Edge& e : edges) {
    if (e.from >= num_vertices || e.to >= num_vertices)
      throw std::invalid_argument("edge endpoint out of range");
    ++g.offsets_[e.from + 1];
  }
  for (std::size_t v = 0; v < num_vertices; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.targets_.resize(edges.size());
  g.weights_.resize(edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    const std::size_t slot = cursor[e.from]++;
    g.targets_[slot] = e.to;
    g.weights_[slot] = e.weight;
  }
  return g;
}

std::vector<Edge> CsrGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t v = 0; v < num_vertices(); ++v) {
    const auto nbrs = neighbors(v);
    const auto ws = weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      out.push_back({static_cast<VertexId>(v), nbrs[k], ws[k]});
  }
  return out;
}

CsrGraph CsrGraph::transpose() const {
  auto list = edges();
  for (Edge& e : list) std::swap(e.from, e.to);
  return from_edges(num_vertices(), list);
}

CsrGraph CsrGraph::symmetrized() const {
  auto list = edges();
  const std::size_t m = list.size();
  list.reserve(2 * m);
  for (std::size_t i = 0; i < m; ++i)
    list.push_back({list[i].to, list[i].from, list[i].weight});
  return from_edges(num_vertices(), list);
}

FormatError::FormatError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::uint64_t parse_number(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size())
    throw FormatError(line, "expected a non-negative integer, got '" +
                                std::string(field) + "'");
  return value;
}

CsrGraph parse_dimacs(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t declared_vertices = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto f = split_fields(line);
    if (f.empty() || f[0] == "c") continue;
    if (f[0] == "p") {
      if (f.size() != 4 || f[1] != "sp")
        throw FormatError(line_no, "expected 'p sp <n> <m>'");
      declared_vertices = parse_number(f[2], line_no);
      edges.reserve(parse_number(f[3], line_no));
      have_header = true;
    } else if (f[0] == "a") {
      if (!have_header) throw FormatError(line_no, "arc before 'p sp' header");
      if (f.size() != 4) throw FormatError(line_no, "expected 'a <u> <v> <w>'");
      const auto u = parse_number(f[1], line_no);
      const auto v = parse_number(f[2], line_no);
      const auto w = parse_number(f[3], line_no);
      if (u == 0 || v == 0 || u > declared_vertices || v > declared_vertices)
        throw FormatError(line_no, "vertex out of range");
      if (w == 0) throw FormatError(line_no, "edge weights must be >= 1");
      edges.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
    } else {
      throw FormatError(line_no, "unknown line type '" + std::string(f[0]) + "'");
    }
  }
  if (!have_header) throw FormatError(line_no, "missing 'p sp' header");
  return CsrGraph::from_edges(declared_vertices, edges);
}

CsrGraph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto f = split_fields(line);
    if (f.empty() || f[0].front() == '#' || f[0].front() == '%') continue;
    if (f.size() < 2 || f.size() > 3) throw FormatError(line_no, "expected 'u v [w]'");
    const auto u = parse_number(f[0], line_no);
    const auto v = parse_number(f[1], line_no);
    const Value w = f.size() == 3 ? parse_number(f[2], line_no) : 1;
    if (w == 0) throw FormatError(line_no, "edge weights must be >= 1");
    if (u >= std::numeric_limits<VertexId>::max() || v >= std::numeric_limits<VertexId>::max())
      throw FormatError(line_no, "vertex id too large");
    num_vertices = std::max<std::size_t>(num_vertices, std::max(u, v) + 1);
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  return CsrGraph::from_edges(num_vertices, edges);
}

}  // namespace

CsrGraph parse_graph(std::string_view text, GraphFormat format, bool symmetrize) {
  CsrGraph g = format == GraphFormat::DimacsGr ? parse_dimacs(text) : parse_edge_list(text);
  return symmetrize ? g.symmetrized() : g;
}

CsrGraph load_graph(const std::filesystem::path& path, GraphFormat format,
                    bool symmetrize) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return parse_graph(buffer.str(), format, symmetrize);
}

}  // namespace llp

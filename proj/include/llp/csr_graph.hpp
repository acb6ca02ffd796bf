#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "llp/core.hpp"

namespace llp {

using VertexId = std::uint32_t;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  Value weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed graph in compressed sparse rows. Undirected graphs are stored
/// with both directions of every edge.
class CsrGraph {
 public:
  CsrGraph() : offsets_{0} {}

  /// Stable: out-edges of each vertex keep their input order.
  static CsrGraph from_edges(std::size_t num_vertices, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size(); }

  std::span<const VertexId> neighbors(std::size_t v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const Value> weights(std::size_t v) const noexcept {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(std::size_t v) const noexcept {
    return offsets_[v + 1] - offsets_[v];
  }

  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
  const std::vector<VertexId>& targets() const noexcept { return targets_; }
  const std::vector<Value>& edge_weights() const noexcept { return weights_; }

  std::vector<Edge> edges() const;
  CsrGraph transpose() const;
  /// Adds the reverse of every edge.
  CsrGraph symmetrized() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<Value> weights_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class GraphFormat { DimacsGr, EdgeList };

/// dimacs-gr: "p sp n m" then "a u v w" (1-indexed). edge-list: "u v [w]"
/// per line, 0-indexed, default weight 1, size = max index + 1. Lines
/// starting with 'c', '#' or '%' are comments.
CsrGraph load_graph(const std::filesystem::path& path, GraphFormat format,
                    bool symmetrize = false);
CsrGraph parse_graph(std::string_view text, GraphFormat format,
                     bool symmetrize = false);

}  // namespace llp

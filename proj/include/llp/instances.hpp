#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "llp/csr_graph.hpp"

namespace llp {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Weighted directed graph (chain, randgraph, closuredag, file).
struct GraphInstance {
  CsrGraph graph;
};

/// Precedence DAG with per-job durations (dag).
struct JobInstance {
  CsrGraph graph;
  std::vector<Value> durations;
};

/// Complete preference lists, most preferred first (sm).
struct MatchingInstance {
  std::vector<std::vector<std::uint32_t>> men;
  std::vector<std::vector<std::uint32_t>> women;
};

/// Throws MalformedInstance unless both sides have n complete lists, each a
/// permutation of 0..n-1.
void validate_preferences(const MatchingInstance& instance);

struct KnapsackInstance {
  std::vector<Value> weights;
  std::vector<Value> values;
  Value capacity = 0;
};

struct ReduceInstance {
  std::vector<Value> values;
};

using Instance = std::variant<GraphInstance, JobInstance, MatchingInstance,
                              KnapsackInstance, ReduceInstance>;

/// Parsed form of "kind:args". Arguments are "key=value" pairs separated
/// by commas; a bare value is accepted for the first parameter of each kind
/// (so "chain:1024" and "chain:n=1024" are equivalent).
struct InstanceSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::string path;  // file:PATH only
  std::string text;  // original string

  std::uint64_t integer(const std::string& key) const;
  double real(const std::string& key) const;
};

/// Kinds: chain, randgraph, dag, sm, knap, reduce, closuredag, file.
InstanceSpec parse_instance_spec(std::string_view text);

/// Deterministic in (spec, seed). Throws ParseError on bad or missing
/// parameters and OverflowError when the requested size cannot be addressed.
Instance generate(const InstanceSpec& spec, std::uint64_t seed);
Instance generate(std::string_view spec, std::uint64_t seed);

std::string_view instance_kind(const Instance& instance) noexcept;

/// Versioned little-endian binary encoding.
std::vector<std::uint8_t> serialize(const Instance& instance);
Instance deserialize(std::span<const std::uint8_t> bytes);

}  // namespace llp

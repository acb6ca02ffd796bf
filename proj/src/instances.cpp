#include "llp/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <numeric>

#include "llp/prng.hpp"

namespace llp {

namespace {

struct ParamSpec {
  const char* name;
  const char* fallback;  // nullptr when required
};

struct KindSpec {
  const char* kind;
  std::vector<ParamSpec> params;
};

const std::vector<KindSpec>& kinds() {
  static const std::vector<KindSpec> table = {
      {"chain", {{"n", nullptr}}},
      {"randgraph", {{"n", nullptr}, {"m", nullptr}, {"wmax", "100"}, {"directed", "0"}}},
      {"dag", {{"n", nullptr}, {"p", "0.2"}}},
      {"sm", {{"n", nullptr}}},
      {"knap", {{"n", nullptr}, {"cap", nullptr}, {"wmax", "100"}, {"vmax", "100"}}},
      {"reduce", {{"n", nullptr}}},
      {"closuredag", {{"n", nullptr}, {"p", "0.2"}}},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::uint64_t InstanceSpec::integer(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError(text + ": missing parameter '" + key + "'");
  std::uint64_t value = 0;
  const std::string& s = it->second;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParseError(text + ": '" + key + "' must be a non-negative integer");
  return value;
}

double InstanceSpec::real(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError(text + ": missing parameter '" + key + "'");
  try {
    std::size_t used = 0;
    const double value = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing");
    return value;
  } catch (const std::exception&) {
    throw ParseError(text + ": '" + key + "' must be a number");
  }
}

InstanceSpec parse_instance_spec(std::string_view text) {
  InstanceSpec spec;
  spec.text = std::string(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("instance spec '" + spec.text + "' lacks 'kind:'");
  spec.kind = std::string(trim(text.substr(0, colon)));
  const std::string_view rest = text.substr(colon + 1);

  if (spec.kind == "file") {
    if (rest.empty()) throw ParseError("file: needs a path");
    spec.path = std::string(rest);
    return spec;
  }

  const auto kind_it = std::find_if(kinds().begin(), kinds().end(),
                                    [&](const KindSpec& k) { return spec.kind == k.kind; });
  if (kind_it == kinds().end())
    throw ParseError("unknown instance kind '" + spec.kind + "'");

  std::size_t pos = 0;
  bool first = true;
  while (pos <= rest.size() && !rest.empty()) {
    const auto comma = rest.find(',', pos);
    const auto field = trim(rest.substr(pos, comma == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : comma - pos));
    pos = comma == std::string_view::npos ? rest.size() + 1 : comma + 1;
    if (field.empty()) throw ParseError(spec.text + ": empty parameter");
    const auto eq = field.find('=');
    std::string key;
    std::string value;
    if (eq == std::string_view::npos) {
      if (!first) throw ParseError(spec.text + ": expected key=value, got '" +
                                   std::string(field) + "'");
      key = kind_it->params.front().name;
      value = std::string(field);
    } else {
      key = std::string(trim(field.substr(0, eq)));
      value = std::string(trim(field.substr(eq + 1)));
    }
    first = false;
    const bool known = std::any_of(kind_it->params.begin(), kind_it->params.end(),
                                   [&](const ParamSpec& p) { return key == p.name; });
    if (!known) throw ParseError(spec.text + ": unknown parameter '" + key + "'");
    if (value.empty()) throw ParseError(spec.text + ": empty value for '" + key + "'");
    if (!spec.params.emplace(key, value).second)
      throw ParseError(spec.text + ": duplicate parameter '" + key + "'");
  }
  for (const ParamSpec& p : kind_it->params) {
    if (spec.params.count(p.name)) continue;
    if (!p.fallback) throw ParseError(spec.text + ": missing parameter '" + p.name + "'");
    spec.params.emplace(p.name, p.fallback);
  }
  return spec;
}

namespace {

std::size_t positive_size(const InstanceSpec& spec, const std::string& key) {
  const auto v = spec.integer(key);
  if (v == 0) throw ParseError(spec.text + ": '" + key + "' must be positive");
  if (v > std::numeric_limits<VertexId>::max() - 1)
    throw OverflowError(spec.text + ": '" + key + "' exceeds 32-bit vertex ids");
  return static_cast<std::size_t>(v);
}

double probability(const InstanceSpec& spec) {
  const double p = spec.real("p");
  if (!(p >= 0.0 && p <= 1.0)) throw ParseError(spec.text + ": p must lie in [0, 1]");
  return p;
}

std::size_t pair_count(const InstanceSpec& spec, std::size_t n) {
  std::size_t product = 0;
  if (__builtin_mul_overflow(n, n - 1, &product))
    throw OverflowError(spec.text + ": n(n-1)/2 overflows");
  return product / 2;
}

// One draw per pair (i, j), i < j, lexicographic.
std::vector<Edge> random_dag_edges(Prng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.unit() < p)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), 1});
  return edges;
}

std::vector<std::uint32_t> shuffled(Prng& rng, std::size_t n) {
  std::vector<std::uint32_t> list(n);
  std::iota(list.begin(), list.end(), 0u);
  for (std::size_t i = n; i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(list[i], list[j]);
  }
  return list;
}

Instance make_chain(const InstanceSpec& spec) {
  const std::size_t n = positive_size(spec, "n");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), 1});
  return GraphInstance{CsrGraph::from_edges(n, edges)};
}

Instance make_randgraph(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  const auto m = spec.integer("m");
  const auto wmax = spec.integer("wmax");
  const auto directed = spec.integer("directed");
  if (wmax == 0) throw ParseError(spec.text + ": wmax must be positive");
  if (directed > 1) throw ParseError(spec.text + ": directed must be 0 or 1");
  if (m > (std::size_t{1} << 40)) throw OverflowError(spec.text + ": m too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    const auto u = static_cast<VertexId>(rng.uniform(0, n - 1));
    const auto v = static_cast<VertexId>(rng.uniform(0, n - 1));
    edges.push_back({u, v, rng.uniform(1, wmax)});
  }
  CsrGraph g = CsrGraph::from_edges(n, edges);
  return GraphInstance{directed ? std::move(g) : g.symmetrized()};
}

Instance make_dag(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  const double p = probability(spec);
  pair_count(spec, n);
  JobInstance job;
  job.durations.resize(n);
  for (auto& t : job.durations) t = rng.uniform(1, 80);
  job.graph = CsrGraph::from_edges(n, random_dag_edges(rng, n, p));
  return job;
}

Instance make_closuredag(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  const double p = probability(spec);
  pair_count(spec, n);
  return GraphInstance{CsrGraph::from_edges(n, random_dag_edges(rng, n, p))};
}

Instance make_sm(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  pair_count(spec, n + 1);
  MatchingInstance sm;
  sm.men.reserve(n);
  sm.women.reserve(n);
  for (std::size_t m = 0; m < n; ++m) sm.men.push_back(shuffled(rng, n));
  for (std::size_t w = 0; w < n; ++w) sm.women.push_back(shuffled(rng, n));
  return sm;
}

Instance make_knap(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  const auto cap = spec.integer("cap");
  const auto wmax = spec.integer("wmax");
  const auto vmax = spec.integer("vmax");
  if (wmax == 0 || vmax == 0) throw ParseError(spec.text + ": wmax and vmax must be positive");
  std::size_t cells = 0;
  if (cap >= std::numeric_limits<std::size_t>::max() ||
      __builtin_mul_overflow(n + 1, static_cast<std::size_t>(cap) + 1, &cells))
    throw OverflowError(spec.text + ": (n+1)(cap+1) overflows");
  KnapsackInstance k;
  k.capacity = cap;
  k.weights.resize(n);
  k.values.resize(n);
  for (auto& w : k.weights) w = rng.uniform(1, wmax);
  for (auto& v : k.values) v = rng.uniform(1, vmax);
  return k;
}

Instance make_reduce(const InstanceSpec& spec, Prng& rng) {
  const std::size_t n = positive_size(spec, "n");
  ReduceInstance r;
  r.values.resize(n);
  for (auto& v : r.values) v = rng.next() >> 32;
  return r;
}

Instance load_file(const InstanceSpec& spec) {
  const std::filesystem::path path(spec.path);
  const auto format = path.extension() == ".gr" ? GraphFormat::DimacsGr : GraphFormat::EdgeList;
  return GraphInstance{load_graph(path, format)};
}

}  // namespace

void validate_preferences(const MatchingInstance& instance) {
  const std::size_t n = instance.men.size();
  auto check = [n](const std::vector<std::vector<std::uint32_t>>& lists, const char* side) {
    if (lists.size() != n) throw MalformedInstance("unbalanced matching instance");
    for (const auto& list : lists) {
      std::vector<bool> seen(n, false);
      if (list.size() != n) throw MalformedInstance(std::string(side) + " list is incomplete");
      for (auto x : list) {
        if (x >= n || seen[x])
          throw MalformedInstance(std::string(side) + " list is not a permutation");
        seen[x] = true;
      }
    }
  };
  check(instance.men, "men's preference");
  check(instance.women, "women's preference");
}

Instance generate(const InstanceSpec& spec, std::uint64_t seed) {
  Prng rng(seed);
  if (spec.kind == "chain") return make_chain(spec);
  if (spec.kind == "randgraph") return make_randgraph(spec, rng);
  if (spec.kind == "dag") return make_dag(spec, rng);
  if (spec.kind == "closuredag") return make_closuredag(spec, rng);
  if (spec.kind == "sm") return make_sm(spec, rng);
  if (spec.kind == "knap") return make_knap(spec, rng);
  if (spec.kind == "reduce") return make_reduce(spec, rng);
  if (spec.kind == "file") return load_file(spec);
  throw ParseError("unknown instance kind '" + spec.kind + "'");
}

Instance generate(std::string_view spec, std::uint64_t seed) {
  return generate(parse_instance_spec(spec), seed);
}

std::string_view instance_kind(const Instance& instance) noexcept {
  struct Visitor {
    std::string_view operator()(const GraphInstance&) const { return "graph"; }
    std::string_view operator()(const JobInstance&) const { return "jobs"; }
    std::string_view operator()(const MatchingInstance&) const { return "matching"; }
    std::string_view operator()(const KnapsackInstance&) const { return "knapsack"; }
    std::string_view operator()(const ReduceInstance&) const { return "reduce"; }
  };
  return std::visit(Visitor{}, instance);
}

// Serialization ------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'L', 'L', 'P', 'I'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  }
  void values(std::span<const Value> vs) {
    u64(vs.size());
    for (Value v : vs) u64(v);
  }
  void graph(const CsrGraph& g) {
    u64(g.num_vertices());
    u64(g.num_edges());
    for (const Edge& e : g.edges()) {
      u64(e.from);
      u64(e.to);
      u64(e.weight);
    }
  }
  std::vector<std::uint8_t> out;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    if (bytes_.size() - pos_ < 8) throw ParseError("truncated instance cache");
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= std::uint64_t{bytes_[pos_ + b]} << (8 * b);
    pos_ += 8;
    return v;
  }
  std::size_t count() {
    const auto n = u64();
    if (n > (bytes_.size() - pos_)) throw ParseError("corrupt length in instance cache");
    return static_cast<std::size_t>(n);
  }
  std::vector<Value> values() {
    std::vector<Value> vs(count());
    for (auto& v : vs) v = u64();
    return vs;
  }
  CsrGraph graph() {
    const auto n = u64();
    const auto m = count();
    std::vector<Edge> edges(m);
    for (auto& e : edges) {
      e.from = static_cast<VertexId>(u64());
      e.to = static_cast<VertexId>(u64());
      e.weight = u64();
    }
    try {
      return CsrGraph::from_edges(static_cast<std::size_t>(n), edges);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("corrupt graph in instance cache: ") + e.what());
    }
  }
  void expect(std::span<const std::uint8_t> raw) {
    if (bytes_.size() - pos_ < raw.size() ||
        !std::equal(raw.begin(), raw.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(pos_)))
      throw ParseError("not an instance cache");
    pos_ += raw.size();
  }
  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<Value> widen(const std::vector<std::uint32_t>& list) {
  return {list.begin(), list.end()};
}

std::vector<std::uint32_t> narrow(const std::vector<Value>& list) {
  std::vector<std::uint32_t> out;
  out.reserve(list.size());
  for (Value v : list) {
    if (v > std::numeric_limits<std::uint32_t>::max())
      throw ParseError("corrupt preference list in instance cache");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> serialize(const Instance& instance) {
  Writer w;
  w.out.insert(w.out.end(), kMagic, kMagic + 4);
  w.u64(kVersion);
  w.u64(instance.index());
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, GraphInstance>) {
          w.graph(inst.graph);
        } else if constexpr (std::is_same_v<T, JobInstance>) {
          w.graph(inst.graph);
          w.values(inst.durations);
        } else if constexpr (std::is_same_v<T, MatchingInstance>) {
          w.u64(inst.men.size());
          for (const auto& l : inst.men) w.values(widen(l));
          for (const auto& l : inst.women) w.values(widen(l));
        } else if constexpr (std::is_same_v<T, KnapsackInstance>) {
          w.u64(inst.capacity);
          w.values(inst.weights);
          w.values(inst.values);
        } else {
          w.values(inst.values);
        }
      },
      instance);
  return std::move(w.out);
}

Instance deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect({reinterpret_cast<const std::uint8_t*>(kMagic), 4});
  if (r.u64() != kVersion) throw ParseError("unsupported instance cache version");
  Instance result;
  switch (r.u64()) {
    case 0:
      result = GraphInstance{r.graph()};
      break;
    case 1: {
      JobInstance job;
      job.graph = r.graph();
      job.durations = r.values();
      result = std::move(job);
      break;
    }
    case 2: {
      MatchingInstance sm;
      const auto n = r.count();
      for (std::size_t i = 0; i < n; ++i) sm.men.push_back(narrow(r.values()));
      for (std::size_t i = 0; i < n; ++i) sm.women.push_back(narrow(r.values()));
      result = std::move(sm);
      break;
    }
    case 3: {
      KnapsackInstance k;
      k.capacity = r.u64();
      k.weights = r.values();
      k.values = r.values();
      result = std::move(k);
      break;
    }
    case 4:
      result = ReduceInstance{r.values()};
      break;
    default:
      throw ParseError("unknown instance tag in cache");
  }
  if (!r.done()) throw ParseError("trailing bytes in instance cache");
  return result;
}

}  // namespace llp

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string_view>

#include "llp/driver.hpp"

namespace llp {

std::uint64_t solution_checksum(std::span<const Value> solution) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (Value v : solution) {
    for (int b = 0; b < 8; ++b) {
      hash ^= (v >> (8 * b)) & 0xFFu;
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    std::string field = text.substr(pos, end - pos);
    field.erase(0, field.find_first_not_of(" \t"));
    field.erase(field.find_last_not_of(" \t") + 1);
    if (!field.empty()) out.push_back(std::move(field));
    pos = end + 1;
  }
  return out;
}

std::vector<std::size_t> cap_threads(std::vector<std::size_t> threads) {
  if (const char* env = std::getenv("LLP_THREADS_CAP"); env && *env) {
    const std::string_view text(env);
    std::size_t cap = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || end != text.data() + text.size() || cap == 0)
      throw ConfigError("LLP_THREADS_CAP must be a positive integer");
    for (auto& t : threads) t = std::min(t, cap);
  }
  std::vector<std::size_t> unique;
  for (auto t : threads)
    if (std::find(unique.begin(), unique.end(), t) == unique.end()) unique.push_back(t);
  return unique;
}

}  // namespace llp

#include "wsnprio/engine/random.hpp"

#include <cmath>

#include "wsnprio/error.hpp"

namespace wsnprio::engine {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(Purpose purpose) {
  switch (purpose) {
    case Purpose::Mobility: return "mobility";
    case Purpose::Placement: return "placement";
    case Purpose::Traffic: return "traffic";
    case Purpose::Importance: return "importance";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t master_seed, Purpose purpose, std::uint64_t index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ (static_cast<std::uint64_t>(purpose) + 1) * 0xD6E8FEB86659FD93ULL);
  return splitmix64(s ^ splitmix64(index));
}

RandomStream::RandomStream(std::uint64_t master_seed, Purpose purpose, std::uint64_t index)
    : engine_(derive_seed(master_seed, purpose, index)), purpose_(purpose) {}

std::uint64_t RandomStream::raw() {
  const std::uint64_t v = engine_();
  ++draws_;
  for (int byte = 0; byte < 8; ++byte) {
    digest_ ^= (v >> (8 * byte)) & 0xFFU;
    digest_ *= 0x100000001b3ULL;
  }
  return v;
}

double RandomStream::next(const Uniform& range) {
  if (!(range.lo <= range.hi)) {
    throw BadRange("uniform(" + std::to_string(range.lo) + ", " + std::to_string(range.hi) + ")");
  }
  // 53 random mantissa bits -> [0, 1).
  const double u = static_cast<double>(raw() >> 11) * 0x1.0p-53;
  if (range.lo == range.hi) return range.lo;
  const double v = range.lo + (range.hi - range.lo) * u;
  return std::fmin(v, range.hi);
}

std::uint64_t RandomStream::index_below(std::uint64_t n) {
  if (n == 0) throw BadRange("index_below(0)");
  const double u = static_cast<double>(raw() >> 11) * 0x1.0p-53;
  const auto i = static_cast<std::uint64_t>(u * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace wsnprio::engine

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wsnprio::engine {

/// Consumers of randomness. Each gets its own stream family so that adding a
/// consumer never shifts another consumer's draws.
enum class Purpose : std::uint8_t { Mobility, Placement, Traffic, Importance };

std::string_view to_string(Purpose purpose);

/// Closed uniform range [lo, hi].
struct Uniform {
  double lo{};
  double hi{};
};

/// A seeded pseudo-random stream. The stream is identified by
/// (master seed, purpose, index); the index selects an independent substream,
/// e.g. one per node for mobility or one per flow for importance draws.
///
/// Draws are produced from the raw 64-bit engine output with fixed
/// arithmetic, so sequences do not depend on the standard library's
/// distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, Purpose purpose, std::uint64_t index = 0);

  /// Value in [lo, hi]; a degenerate range returns lo. Throws BadRange if lo > hi.
  double next(const Uniform& range);
  double uniform(double lo, double hi) { return next(Uniform{lo, hi}); }

  /// Integer in [0, n). n must be positive.
  std::uint64_t index_below(std::uint64_t n);

  [[nodiscard]] Purpose purpose() const noexcept { return purpose_; }
  [[nodiscard]] std::uint64_t draws() const noexcept { return draws_; }
  /// FNV-1a digest over every raw value drawn so far.
  [[nodiscard]] std::uint64_t digest() const noexcept { return digest_; }

 private:
  std::uint64_t raw();

  std::mt19937_64 engine_;
  Purpose purpose_;
  std::uint64_t draws_{0};
  std::uint64_t digest_{0xcbf29ce484222325ULL};
};

/// Free-function form of RandomStream::next.
inline double next_from(RandomStream& stream, const Uniform& range) { return stream.next(range); }

std::uint64_t derive_seed(std::uint64_t master_seed, Purpose purpose, std::uint64_t index);

}  // namespace wsnprio::engine

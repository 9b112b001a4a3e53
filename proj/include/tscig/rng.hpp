#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tscig {

using Rng = std::mt19937_64;

/// Stream labels mixed into derived seeds so that independent consumers never
/// share a generator.
enum class StreamTag : std::uint64_t {
  Model = 0x6d6f64656cULL,
  Simulation = 0x73696dULL,
};

/// Folds `tags` into `seed` with the splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept;

Rng make_stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> path);

}  // namespace tscig

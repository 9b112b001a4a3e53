#include "tscig/rng.hpp"

namespace tscig {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t t : tags) h = splitmix64(h ^ splitmix64(t));
  return h;
}

Rng make_stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = derive_seed(seed, {static_cast<std::uint64_t>(tag)});
  h = derive_seed(h, path);
  return Rng(h);
}

}  // namespace tscig

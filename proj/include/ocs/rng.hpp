#pragma once

#include <cstdint>
#include <vector>

namespace ocs {

// splitmix64: the public-domain mixing generator. Ten lines, full 64-bit
// state, identical output on every platform, which is the whole point here;
// seeded draws must be bit-reproducible. The unit tests pin the well-known
// seed-0 output vector.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-ish draw in [0, n). Plain modulo: the bias is about n / 2^64,
  // irrelevant for the shuffle sizes this library sees, and the definition
  // stays one line and stable.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// Fisher-Yates, high index down, using the generator above. Not std::shuffle,
// whose output is implementation-defined.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, SplitMix64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace ocs

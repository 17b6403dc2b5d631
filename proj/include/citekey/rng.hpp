#ifndef CITEKEY_RNG_HPP_
#define CITEKEY_RNG_HPP_

// Reproducible randomness. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard. The standard distributions are not,
// so bounded draws and shuffles are done here by hand:
//
//   uniform_below(n): draw 64-bit words, reject those >= the largest multiple
//                     of n below 2^64, return word % n.
//   shuffle:          Fisher-Yates from the back, j = uniform_below(i + 1).
//
// Any implementation following these rules with the same seed reproduces the
// same samples.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace citekey {

using Mt64 = std::mt19937_64;

inline std::uint64_t uniform_below(Mt64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform_unit(Mt64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle(std::vector<T>& v, Mt64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace citekey

#endif  // CITEKEY_RNG_HPP_

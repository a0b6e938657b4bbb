#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace vetocore {

// std::mt19937_64's output sequence is fixed by the standard but the library
// distributions are not, so draws go through these helpers to stay
// reproducible across standard libraries.

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <class T>
void portable_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace vetocore

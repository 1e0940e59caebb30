#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mdet {

// Seeded random stream. All randomness in the project (initialization,
// dropout masks, shuffling, synthetic corpora) flows through Rng so a single
// seed fixes a whole run. Floating-point draws are built directly from the
// generator's 64-bit output so results do not depend on the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n); n must be > 0
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // derived stream; distinct salts give independent streams from one seed
  Rng fork(uint64_t salt) const {
    std::mt19937_64 probe = gen_;
    return Rng(probe() ^ (salt * 0x9e3779b97f4a7c15ULL));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mdet

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gnas {

// Deterministic splittable RNG. Every random draw in the library flows
// through this class so runs reproduce bit-exactly across platforms;
// std:: distributions and std::shuffle are implementation-defined and
// must not be used for anything that reaches an output file.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // [0, 1)
  double uniform();
  // (0, 1), never returns an exact 0 or 1; safe under nested logs
  double uniform_open();
  double uniform(double lo, double hi);
  // inclusive bounds
  int64_t uniform_int(int64_t lo, int64_t hi);
  double normal();
  // standard Gumbel(0,1): -log(-log U)
  double gumbel();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (size_t i = v.size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(uniform_int(0, static_cast<int64_t>(i)));
      std::swap(v[i], v[j]);
    }
  }

  // Derives an independent named substream without advancing this stream.
  Rng split(const std::string& stream) const;
  Rng split(uint64_t stream_id) const;

 private:
  uint64_t state_;
};

}  // namespace gnas

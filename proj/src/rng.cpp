#include "gnas/rng.hpp"

#include <cmath>

namespace gnas {

namespace {

constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

uint64_t mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

uint64_t Rng::next_u64() {
  state_ += kGamma;
  return mix(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  uint64_t range = static_cast<uint64_t>(hi - lo) + 1;
  // Lemire multiply-shift; bias is < 2^-64 per draw and fully deterministic.
  unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * range;
  return lo + static_cast<int64_t>(wide >> 64);
}

double Rng::normal() {
  double u1 = uniform_open();
  double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::gumbel() { return -std::log(-std::log(uniform_open())); }

Rng Rng::split(const std::string& stream) const {
  return Rng(mix(state_ ^ fnv1a(stream)));
}

Rng Rng::split(uint64_t stream_id) const {
  return Rng(mix(state_ ^ mix(stream_id + kGamma)));
}

}  // namespace gnas

#include "cubiclab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cubiclab {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  // Mix the index in through a SplitMix64 round so neighboring indices do
  // not produce correlated states.
  std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (index + 1));
  return RandomStream(splitmix64(s));
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform01_open() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  const double u1 = uniform01_open();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec RandomStream::gaussian_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = gaussian();
  return v;
}

Vec RandomStream::unit_vector(int n) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v = gaussian_vector(n);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
  throw std::runtime_error("unit_vector: degenerate gaussian draws");
}

Mat RandomStream::haar_orthogonal(int n) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = gaussian();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace cubiclab

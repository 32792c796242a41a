#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

namespace cubiclab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Default seed used by the CLI and by every operation that does not receive
// an explicit one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED5EEDULL;

/// Deterministic random stream: xoshiro256++ seeded through SplitMix64.
/// Gaussians come from Box-Muller on the raw uniforms, so identical seeds
/// give bitwise-identical values on every platform with IEEE doubles and
/// the same libm. Substreams derived from (seed, index) are independent,
/// which keeps parallel sampling loops reproducible across thread counts.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Stream for sample `index` of a loop seeded with `seed`.
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64();
  double uniform01();   // [0, 1)
  double uniform01_open();  // (0, 1], safe for log()
  double gaussian();    // standard normal

  Vec gaussian_vector(int n);
  Vec unit_vector(int n);  // normalized gaussian_vector; rejects |x| ~ 0

  /// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
  /// R-diagonal signs folded into Q.
  Mat haar_orthogonal(int n);

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace cubiclab

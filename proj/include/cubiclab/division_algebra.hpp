#pragma once

#include <array>

#include <Eigen/Dense>

#include "cubiclab/rng.hpp"

namespace cubiclab {

struct DivisionAlgebraElement {
  int d;       // 1, 2, 4 or 8
  Vec coords;  // length d
};

/// Multiplication tables of the classical division algebras F_d:
/// reals, complex numbers, quaternions (ij = k), and octonions with the
/// Fano-plane convention e_i e_{i+1} = e_{i+3} (imaginary indices mod 7).
/// This single convention is the source for every catalog form built on
/// division-algebra arithmetic.
class DivisionAlgebra {
 public:
  static const DivisionAlgebra& get(int d);

  int dim() const { return d_; }
  /// e_i e_j = sign(i,j) * e_{index(i,j)}
  double basis_sign(int i, int j) const { return sign_[i][j]; }
  int basis_index(int i, int j) const { return index_[i][j]; }

  Vec multiply(const Vec& a, const Vec& b) const;
  Vec conjugate(const Vec& a) const;
  double real_part(const Vec& a) const { return a[0]; }

 private:
  explicit DivisionAlgebra(int d);
  int d_;
  std::array<std::array<double, 8>, 8> sign_{};
  std::array<std::array<int, 8>, 8> index_{};
};

Vec division_multiply(const DivisionAlgebraElement& a, const DivisionAlgebraElement& b);

}  // namespace cubiclab

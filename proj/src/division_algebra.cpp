#include "cubiclab/division_algebra.hpp"

#include <stdexcept>

#include "cubiclab/errors.hpp"

namespace cubiclab {

DivisionAlgebra::DivisionAlgebra(int d) : d_(d) {
  for (int j = 0; j < d; ++j) {
    sign_[0][j] = sign_[j][0] = 1.0;
    index_[0][j] = index_[j][0] = j;
  }
  for (int i = 1; i < d; ++i) {
    sign_[i][i] = -1.0;
    index_[i][i] = 0;
  }
  if (d <= 2) return;

  const auto set_line = [&](int a, int b, int c) {
    // cyclic triple: e_a e_b = e_c and its rotations; reversed order negates
    const int tri[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
    for (const auto& t : tri) {
      sign_[t[0]][t[1]] = 1.0;
      index_[t[0]][t[1]] = t[2];
      sign_[t[1]][t[0]] = -1.0;
      index_[t[1]][t[0]] = t[2];
    }
  };
  if (d == 4) {
    set_line(1, 2, 3);
    return;
  }
  // octonions: lines (i, i+1, i+3) on {1..7}, indices mod 7
  for (int i = 1; i <= 7; ++i) set_line(i, (i % 7) + 1, ((i + 2) % 7) + 1);
}

const DivisionAlgebra& DivisionAlgebra::get(int d) {
  static const DivisionAlgebra r(1), c(2), h(4), o(8);
  switch (d) {
    case 1: return r;
    case 2: return c;
    case 4: return h;
    case 8: return o;
    default: throw std::invalid_argument("DivisionAlgebra: d must be 1, 2, 4 or 8");
  }
}

Vec DivisionAlgebra::multiply(const Vec& a, const Vec& b) const {
  if (a.size() != d_ || b.size() != d_)
    throw DimensionMismatch("DivisionAlgebra::multiply: wrong element dimension");
  Vec out = Vec::Zero(d_);
  for (int i = 0; i < d_; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < d_; ++j) out[index_[i][j]] += sign_[i][j] * a[i] * b[j];
  }
  return out;
}

Vec DivisionAlgebra::conjugate(const Vec& a) const {
  Vec out = -a;
  out[0] = a[0];
  return out;
}

Vec division_multiply(const DivisionAlgebraElement& a, const DivisionAlgebraElement& b) {
  if (a.d != b.d) throw DimensionMismatch("division_multiply: mismatched algebra dimensions");
  return DivisionAlgebra::get(a.d).multiply(a.coords, b.coords);
}

}  // namespace cubiclab

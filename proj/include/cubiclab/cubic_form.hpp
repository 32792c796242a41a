#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cubiclab/rng.hpp"

namespace cubiclab {

struct MonomialTerm {
  std::array<int, 3> monomial;  // sorted, 0-based
  double coeff;
};

/// A cubic form u on R^n, stored as monomial coefficients over packed index
/// triples i<=j<=k. The fully symmetric trilinear tensor T with
/// u(x) = T(x,x,x)/6 is exposed through tensor(); the bridge between the
/// two views is the fixed multiplicity table
///   T_{ijk} = coeff            (i<j<k, each of the 6 permutations)
///   T_{iik} = 2*coeff          (two equal indices, each of 3 permutations)
///   T_{iii} = 6*coeff.
/// The product of the attached commutative algebra V(u) is
/// <x*y, z> = T(x,y,z), so the gradient of u is x^2/2 and the Hessian of u
/// is the multiplication operator L_x.
///
/// All operations are pure functions of immutable state; CubicForm values
/// are freely shareable across threads.
class CubicForm {
 public:
  /// Canonicalizes polynomial input; duplicate triples are summed.
  static CubicForm from_monomials(int dim, const std::vector<MonomialTerm>& terms,
                                  std::string label = "");
  static CubicForm zero(int dim, std::string label = "");

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Entry of the fully symmetric tensor T, any index order.
  double tensor(int i, int j, int k) const;
  /// Largest |T| entry; used for relative tolerances.
  double tensor_max_abs() const;

  double evaluate(const Vec& x) const;
  /// Full trilinear polarization u(x,y,z); symmetric, u(x,x,x) = 6 u(x).
  double polarize(const Vec& x, const Vec& y, const Vec& z) const;
  /// Algebra product: <multiply(x,y), z> = polarize(x,y,z).
  Vec multiply(const Vec& x, const Vec& y) const;
  /// Multiplication operator L_x (equals the Hessian of u at x).
  Mat mult_operator(const Vec& x) const;
  /// Gradient of u, i.e. x^2/2.
  Vec gradient_u(const Vec& x) const;

  /// Round-trips with from_monomials bitwise; zero coefficients dropped,
  /// triples sorted.
  std::vector<MonomialTerm> to_monomials() const;

  /// The form s*u (product scales by s as well).
  CubicForm scaled(double s) const;

  bool is_zero(double tol = 0.0) const;

 private:
  CubicForm(int dim, std::string label);
  void rebuild_nonzeros();
  void check_dim(const Vec& x, const char* op) const;

  // Contraction paths: dense iteration over all packed triples for
  // dim <= kDenseLimit, iteration over the nonzero triple list above it.
  static constexpr int kDenseLimit = 64;
  template <typename Fn>
  void for_each_term(Fn&& fn) const;

  int dim_ = 0;
  std::string label_;
  std::vector<double> coeff_;  // packed monomial coefficients, i<=j<=k
  std::vector<std::array<int, 3>> nonzeros_;  // sparse path (dim > kDenseLimit)
};

/// Packed index of the sorted triple i<=j<=k.
inline std::size_t packed_index(int i, int j, int k) {
  const auto c2 = [](std::int64_t m) { return m * (m + 1) / 2; };
  const auto c3 = [](std::int64_t m) { return m * (m + 1) * (m + 2) / 6; };
  return static_cast<std::size_t>(c3(k) + c2(j) + i);
}

inline std::size_t packed_size(int n) { return packed_index(0, 0, n); }

/// V(u) is the zero algebra iff u is identically zero; checked on the basis.
bool is_zero_algebra(const CubicForm& u, double tol = 1e-14);

/// I.i.d. standard normal monomial coefficients (xoshiro256++/Box-Muller),
/// generated in nested (i<=j<=k) loop order. Identical (dim, seed) give a
/// bitwise-identical form.
CubicForm random_form(int dim, std::uint64_t seed);

}  // namespace cubiclab

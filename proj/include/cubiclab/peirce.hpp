#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubiclab/cubic_form.hpp"
#include "cubiclab/parallel.hpp"

namespace cubiclab {

struct PeirceCluster {
  double eigenvalue = 0.0;  // cluster center (mean of merged eigenvalues)
  int multiplicity = 0;
  Mat basis;  // n x multiplicity, orthonormal
};

struct PeirceDecomposition {
  Vec c;
  std::vector<PeirceCluster> clusters;  // ascending by eigenvalue
  double cluster_tol = 0.0;

  int total_multiplicity() const;
  /// Index of the cluster whose center is nearest to `value`.
  int nearest_cluster(double value) const;
};

/// Full eigendecomposition of L_c with eigenvalues merged within
/// cluster_tol (default 1e-6 * ||L_c||). Requires |c^2 - c| <= 1e-8.
PeirceDecomposition peirce_decompose(const CubicForm& u, const Vec& c,
                                     double cluster_tol = -1.0);

enum class FusionProfile { Eiconal, Jordan, Free };

struct FusionCell {
  int i = 0, j = 0;                  // cluster indices, i <= j
  double lambda_i = 0.0, lambda_j = 0.0;
  std::vector<int> target;           // prescribed target clusters (empty = zero product)
  double leakage = 0.0;              // max relative component outside the target
  bool pass = true;
  bool skipped = false;              // empty eigenspace cell
};

struct FusionReport {
  std::vector<FusionCell> cells;
  int n_samples = 0;
  double tol = 0.0;
  bool all_pass = true;
};

/// Samples unit elements of each eigenspace pair and measures the relative
/// component of their product outside the profile's target span.
/// Eiconal profile: clusters are labeled by the nearest of {1, 1/2, -1} and
/// checked against the eiconal fusion laws (V-1*V-1 in Rc, V-1*V1/2 in V1/2,
/// V1/2*V1/2 in Rc + V-1). Jordan profile: labels {0, 1/2, 1} with the
/// Jordan laws. Free profile reports the full component grid with no
/// pass/fail.
FusionReport fusion_table(const CubicForm& u, const PeirceDecomposition& dec,
                          FusionProfile profile, int n_samples, std::uint64_t seed,
                          double tol = 1e-9, ExecMode mode = ExecMode::Parallel);

enum class ProductScaling { Raw, Eiconal };

struct EiconalResiduals {
  double norm_identity = 0.0;      // <x^2,x^2> = <x,x>^2
  double cube_identity = 0.0;      // x^3 = <x,x> x
  double operator_identity = 0.0;  // L_{x^2} + 2 L_x^2 = <x,x> + 2 x(x)x
  double trilinear_identity = 0.0; // x(yz)+y(zx)+z(xy) = <x,y>z+<y,z>x+<z,x>y
  double commutator = 0.0;         // ||[L_{x^2}, L_x^2]||
  double max() const;
};

/// Max relative residuals of the eiconal identities over seeded unit
/// samples. Eiconal scaling divides the product by 6 (i.e. runs on u/6),
/// matching the normalization under which a Cartan cubic is eiconal.
EiconalResiduals eiconal_residuals(const CubicForm& u, ProductScaling scaling, int n_samples,
                                   std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

struct MunznerResiduals {
  double munzner = 0.0;   // max |  |grad u|^2/(9|x|^4) - 1 |
  double harmonic = 0.0;  // max |trace L_{e_i}| over the basis
};

MunznerResiduals munzner_residuals(const CubicForm& u, int n_samples, std::uint64_t seed,
                                   ExecMode mode = ExecMode::Parallel);

struct CliffordResiduals {
  double clifford_identity = 0.0;  // L_x^2 = (3/4)|x|^2 on V_{1/2}, x in V_{-1}
  double operator_identity = 0.0;  // 2 L_c^2 + L_c - 1 = 0 on c-perp
  int dim_half = 0;
  int dim_minus = 0;
  bool half_dim_even = false;
};

/// Clifford-system checks on an eiconal-profile decomposition; requires
/// nonempty V_{-1} and V_{1/2} eigenspaces.
CliffordResiduals clifford_check(const CubicForm& u, const PeirceDecomposition& dec,
                                 int n_samples, std::uint64_t seed);

/// Absolute residual of L_x^2 - (3/4)|x|^2 restricted to V_{1/2}; scales
/// quadratically in |x|.
double clifford_residual_at(const CubicForm& u, const PeirceDecomposition& dec, const Vec& x);

/// Hurwitz-Radon function: rho(m) = 8a + 2^b for m = 2^{4a+b} * odd, 0<=b<=3.
int hurwitz_radon(int m);

struct DimensionVerdict {
  int dim_minus = 0;   // dim V_{-1}
  int dim_half = 0;    // dim V_{1/2}
  int n = 0;
  int m = 0;           // dim V_{-1} - 1
  int rho = 0;         // rho(dim_half / 2)
  bool radon_ok = false;        // dim V_{-1} - 1 <= rho(dim_half/2)
  bool harmonic_checked = false;
  bool harmonic_ok = true;      // dim_half = 2m, rho(m) >= m, n = 3m+2 in {5,8,14,26}
  bool pass = false;
  std::string detail;
};

/// Dimensional bounds for an eiconal-profile decomposition (clusters must
/// match {1, 1/2, -1}); the harmonic branch additionally enforces the
/// division-algebra dimensions.
DimensionVerdict dimension_check(const PeirceDecomposition& dec, bool harmonic);

}  // namespace cubiclab

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "cubiclab/cubic_form.hpp"
#include "cubiclab/parallel.hpp"

namespace cubiclab {

/// The ray function w(x) = scale * <x^2, x> / |x|^alpha attached to a cubic
/// form (note <x^2, x> = 6 u(x)). Homogeneous of degree 3 - alpha; for
/// alpha = 1 the Hessian is degree-0 homogeneous and odd.
struct RayFunction {
  CubicForm u;
  double alpha = 1.0;  // in [1, 2)
  double scale = 1.0;

  RayFunction(CubicForm form, double a = 1.0, double s = 1.0);
};

double w_eval(const RayFunction& r, const Vec& x);
std::pair<double, Vec> w_eval_grad(const RayFunction& r, const Vec& x);
Mat w_hessian(const RayFunction& r, const Vec& x);
double w_laplacian(const RayFunction& r, const Vec& x);

/// Closed-form spectrum of the Hessian of w (alpha = 1) at an idempotent c:
/// scale * { 2/|c| } united with scale * { (6 lambda - 1)/|c| } over the
/// eigenvalues lambda of L_c restricted to the complement of c. Sorted
/// ascending.
Vec idempotent_spectrum(const RayFunction& r, const Vec& c);

/// Compares the characteristic polynomial of H(c)/scale against
///   6^n (|c| t - 2) / (|c|^n (|c| t - 5)) * chi_{L_c}((1 + |c| t)/6)
/// on the grid; returns the max relative residual. Grid points at the pole
/// t = 5/|c| or the cancellation point t = 2/|c| are rejected. When
/// require_simple_top is set (generic-evidence forms), additionally checks
/// that 2/|c| is a simple eigenvalue of H(c)/scale.
double charpoly_check(const RayFunction& r, const Vec& c, const std::vector<double>& grid,
                      bool require_simple_top = false);

/// Deterministic 20-point default grid keeping distance >= 0.3 from the
/// pole, the cancellation point and the eigenvalues of H(c)/scale.
std::vector<double> default_charpoly_grid(const RayFunction& r, const Vec& c,
                                          int n_points = 20);

struct MHyperbolicity {
  enum class Kind { ZeroClass, Infinite, Finite };
  Kind kind = Kind::Finite;
  double M = 0.0;  // >= 1 when finite
  double lambda_min = 0.0, lambda_max = 0.0;
};

/// M-hyperbolicity of a symmetric matrix: ZeroClass if every eigenvalue is
/// within zero_tol of 0, Infinite if the sign condition
/// lambda_min < 0 < lambda_max fails, else M = max(-l1/ln, -ln/l1).
MHyperbolicity m_hyperbolicity(const Mat& A, double zero_tol);

struct PairSample {
  double lambda_min = 0.0, lambda_max = 0.0;
  double M = 0.0;  // inf for violations, 0 for zero-class pairs
};

struct HyperbolicityReport {
  double M_sup = 0.0;         // inf when violations > 0
  bool finite = false;
  long n_pairs = 0;
  long violations = 0;
  long zero_class = 0;
  double sampled_M = 0.0;     // best M before refinement
  Vec worst_x, worst_y;
  Mat worst_U;                // identity unless orbit mode
  bool orbit = false;
  double zero_tol_scale = 0.0;
  std::uint64_t seed = 0;
  std::vector<PairSample> samples;  // kept only on request (CSV export)

  bool hyperbolic_evidence() const { return violations == 0; }
};

/// Samples unit pairs (x, y); in orbit mode conjugates the second Hessian
/// by a Haar-random orthogonal matrix. Per-pair zero tolerance is
/// zero_tol_scale * (1 + max|H(x)| + max|H(y)|). After sampling, a
/// deterministic pattern search from the best pairs tightens M_sup.
/// Bitwise deterministic for fixed seed at any thread count.
HyperbolicityReport hyperbolic_set_estimate(const RayFunction& r, long n_pairs,
                                            std::uint64_t seed, bool orbit,
                                            double zero_tol_scale = 1e-10,
                                            ExecMode mode = ExecMode::Parallel,
                                            bool keep_samples = false);

/// Spectral gap ratio: with mu_1 >= ... >= mu_n sorted descending, returns
/// max(|mu_1/mu_3|, |mu_n/mu_{n-2}|); infinity when a denominator is
/// within zero_tol of 0. Requires length >= 3.
double gap_ratio(const Vec& spectrum, double zero_tol = 1e-300);

struct GapScanReport {
  double max_rho = 0.0;            // over sampled directions (finite entries)
  long violating_dirs = 0;         // sampled rho >= 2 - delta
  double delta = 0.0;
  std::vector<double> sampled_rho; // per direction
  std::vector<double> extremal_rho;  // at extremal idempotent directions
  bool extremal_violates = false;  // some extremal direction has rho >= 2 - delta
  bool gap_condition_holds = false;
};

/// Samples unit directions d and evaluates gap_ratio of spectrum(L_d / 2);
/// additionally evaluates it at every extremal idempotent direction found
/// by a seeded Newton multistart.
GapScanReport gap_scan(const CubicForm& u, int n_dirs, std::uint64_t seed, double delta,
                       ExecMode mode = ExecMode::Parallel);

/// Coefficients (A, B, C, D) of the degree-5 Hessian invariant
///   A (tr H)^5 + B (tr H)^3 + C tr H + D det H
/// that vanishes identically for w = u5/|x| with the Cartan-normalized u5
/// (|grad u5|^2 = 9 |x|^4).
inline constexpr std::array<double, 4> kHessianQuinticCoeffs = {5.0, 9216.0, 995328.0,
                                                                32768.0};

/// Residual of the quintic invariant at x for w = scale_s * u(x)/|x| (u
/// expected Cartan-normalized), normalized by the largest |term|.
double f5_residual(const CubicForm& u, const Vec& x, double scale_s);

struct ScaleSearchResult {
  double s_star = 0.0;
  double best_residual = 0.0;
  std::vector<std::pair<double, double>> trace;  // (s, max residual over points)
};

/// Logarithmic scale search over s in [-1e3,-1e-3] u [1e-3, 1e3]
/// minimizing the max f5 residual over seeded unit points, followed by a
/// golden-section refinement in log-space.
ScaleSearchResult f5_scale_search(const CubicForm& u, int n_points, std::uint64_t seed,
                                  int grid_per_sign = 61);

struct HsiangFit {
  double C1 = 0.0, C2 = 0.0;
  double harmonic = 0.0;      // max |trace L_{e_i}|
  double residual_sq = 0.0;   // trace(L_x^2) = C1 |x|^2
  double residual_cube = 0.0; // trace(L_x^3) = C2 u(x)
  bool pass(double tol) const {
    return harmonic <= tol && residual_sq <= tol && residual_cube <= tol;
  }
};

/// Fits C1, C2 of the Hessian trace system at probe points and reports the
/// max relative residuals over seeded samples.
HsiangFit hsiang_fit(const CubicForm& u, int n_samples, std::uint64_t seed,
                     ExecMode mode = ExecMode::Parallel);

}  // namespace cubiclab

#include "cubiclab/peirce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubiclab/errors.hpp"
#include "cubiclab/rng.hpp"

namespace cubiclab {

namespace {

constexpr double kEiconalLabels[3] = {-1.0, 0.5, 1.0};
constexpr double kJordanLabels[3] = {0.0, 0.5, 1.0};

double nearest_label(double x, const double (&labels)[3]) {
  double best = labels[0];
  for (double l : labels)
    if (std::abs(x - l) < std::abs(x - best)) best = l;
  return best;
}

}  // namespace

int PeirceDecomposition::total_multiplicity() const {
  int s = 0;
  for (const auto& cl : clusters) s += cl.multiplicity;
  return s;
}

int PeirceDecomposition::nearest_cluster(double value) const {
  int best = 0;
  for (int i = 1; i < static_cast<int>(clusters.size()); ++i)
    if (std::abs(clusters[i].eigenvalue - value) <
        std::abs(clusters[best].eigenvalue - value))
      best = i;
  return best;
}

PeirceDecomposition peirce_decompose(const CubicForm& u, const Vec& c, double cluster_tol) {
  if (c.size() != u.dim()) throw DimensionMismatch("peirce_decompose: dimension mismatch");
  const double res = (u.multiply(c, c) - c).norm();
  if (res > 1e-8)
    throw NonIdempotentInput("peirce_decompose: |c^2 - c| = " + std::to_string(res));
  const Mat L = u.mult_operator(c);
  Eigen::SelfAdjointEigenSolver<Mat> es(L);
  const Vec lam = es.eigenvalues();
  const Mat V = es.eigenvectors();
  const double norm = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
  if (cluster_tol < 0.0) cluster_tol = 1e-6 * norm;

  PeirceDecomposition dec;
  dec.c = c;
  dec.cluster_tol = cluster_tol;
  int start = 0;
  const int n = u.dim();
  for (int i = 1; i <= n; ++i) {
    if (i == n || lam[i] - lam[i - 1] > cluster_tol) {
      PeirceCluster cl;
      cl.multiplicity = i - start;
      cl.eigenvalue = lam.segment(start, cl.multiplicity).mean();
      cl.basis = V.middleCols(start, cl.multiplicity);
      dec.clusters.push_back(std::move(cl));
      start = i;
    }
  }
  return dec;
}

FusionReport fusion_table(const CubicForm& u, const PeirceDecomposition& dec,
                          FusionProfile profile, int n_samples, std::uint64_t seed,
                          double tol, ExecMode mode) {
  const int nc = static_cast<int>(dec.clusters.size());
  if (nc == 0) throw std::invalid_argument("fusion_table: empty decomposition");
  const double scale = 1.0 + u.tensor_max_abs();

  FusionReport rep;
  rep.n_samples = n_samples;
  rep.tol = tol;

  // label each cluster for the profile
  std::vector<double> label(nc, 0.0);
  for (int k = 0; k < nc; ++k) {
    const double ev = dec.clusters[k].eigenvalue;
    label[k] = (profile == FusionProfile::Jordan) ? nearest_label(ev, kJordanLabels)
                                                  : nearest_label(ev, kEiconalLabels);
  }
  const auto targets_for = [&](double li, double lj) -> std::vector<double> {
    if (profile == FusionProfile::Eiconal) {
      if (li > lj) std::swap(li, lj);
      if (li == -1.0 && lj == -1.0) return {1.0};
      if (li == -1.0 && lj == 0.5) return {0.5};
      if (li == 0.5 && lj == 0.5) return {1.0, -1.0};
      if (lj == 1.0) return {li};  // c * x = lambda x stays in its eigenspace
      return {};
    }
    if (li > lj) std::swap(li, lj);
    if (li == 0.0 && lj == 0.0) return {0.0};
    if (li == 1.0 && lj == 1.0) return {1.0};
    if (li == 0.0 && lj == 1.0) return {};  // zero product
    if (lj == 0.5 && li != 0.5) return {0.5};
    return {0.0, 1.0};  // (1/2, 1/2)
  };

  struct CellSlot {
    double leakage = 0.0;
    std::vector<double> components;
  };
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < nc; ++i)
    for (int j = i; j < nc; ++j) cells.emplace_back(i, j);
  std::vector<CellSlot> slots(cells.size());

  for_each_index(static_cast<long>(cells.size()), mode, [&](long ci) {
    const auto [i, j] = cells[ci];
    const Mat& Qi = dec.clusters[i].basis;
    const Mat& Qj = dec.clusters[j].basis;
    std::vector<int> target_idx;
    if (profile != FusionProfile::Free) {
      for (double t : targets_for(label[i], label[j]))
        for (int k = 0; k < nc; ++k)
          if (label[k] == t) target_idx.push_back(k);
    }
    CellSlot slot;
    slot.components.assign(nc, 0.0);
    for (int s = 0; s < n_samples; ++s) {
      RandomStream rng = RandomStream::substream(
          seed, static_cast<std::uint64_t>(ci) * static_cast<std::uint64_t>(n_samples) + s);
      const Vec x = Qi * rng.unit_vector(static_cast<int>(Qi.cols()));
      const Vec y = Qj * rng.unit_vector(static_cast<int>(Qj.cols()));
      const Vec p = u.multiply(x, y);
      const double pn = p.norm();
      if (pn <= 1e-13 * scale) continue;  // negligible product, containment vacuous
      double outside_sq = 0.0;
      for (int k = 0; k < nc; ++k) {
        const double comp = (dec.clusters[k].basis.transpose() * p).norm();
        slot.components[k] = std::max(slot.components[k], comp / pn);
        if (profile != FusionProfile::Free &&
            std::find(target_idx.begin(), target_idx.end(), k) == target_idx.end())
          outside_sq += comp * comp;
      }
      if (profile != FusionProfile::Free)
        slot.leakage = std::max(slot.leakage, std::sqrt(outside_sq) / pn);
    }
    slots[ci] = std::move(slot);
  });

  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto [i, j] = cells[ci];
    FusionCell cell;
    cell.i = i;
    cell.j = j;
    cell.lambda_i = dec.clusters[i].eigenvalue;
    cell.lambda_j = dec.clusters[j].eigenvalue;
    if (profile != FusionProfile::Free) {
      for (double t : targets_for(label[i], label[j]))
        for (int k = 0; k < nc; ++k)
          if (label[k] == t) cell.target.push_back(k);
    }
    cell.leakage = slots[ci].leakage;
    cell.pass = (profile == FusionProfile::Free) || cell.leakage <= tol;
    if (!cell.pass) rep.all_pass = false;
    rep.cells.push_back(std::move(cell));
  }
  return rep;
}

double EiconalResiduals::max() const {
  return std::max({norm_identity, cube_identity, operator_identity, trilinear_identity,
                   commutator});
}

EiconalResiduals eiconal_residuals(const CubicForm& u_in, ProductScaling scaling,
                                   int n_samples, std::uint64_t seed, ExecMode mode) {
  const CubicForm u = (scaling == ProductScaling::Eiconal) ? u_in.scaled(1.0 / 6.0) : u_in;
  const int n = u.dim();
  const Mat I = Mat::Identity(n, n);

  std::vector<EiconalResiduals> slots(n_samples);
  for_each_index(n_samples, mode, [&](long s) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(s));
    const Vec x = rng.unit_vector(n);
    const Vec y = rng.unit_vector(n);
    const Vec z = rng.unit_vector(n);
    EiconalResiduals& r = slots[s];

    const Vec x2 = u.multiply(x, x);
    const Vec x3 = u.multiply(x2, x);
    r.norm_identity = std::abs(x2.dot(x2) - 1.0) / (1.0 + x2.dot(x2));
    r.cube_identity = (x3 - x).norm() / (1.0 + x3.norm());

    const Mat Lx = u.mult_operator(x);
    const Mat Lx2 = u.mult_operator(x2);
    const Mat LxLx = Lx * Lx;
    const Mat op = Lx2 + 2.0 * LxLx - I - 2.0 * x * x.transpose();
    const double op_scale = 1.0 + Lx2.cwiseAbs().maxCoeff() + 2.0 * LxLx.cwiseAbs().maxCoeff();
    r.operator_identity = op.cwiseAbs().maxCoeff() / op_scale;

    const Vec lhs = u.multiply(x, u.multiply(y, z)) + u.multiply(y, u.multiply(z, x)) +
                    u.multiply(z, u.multiply(x, y));
    const Vec rhs = x.dot(y) * z + y.dot(z) * x + z.dot(x) * y;
    r.trilinear_identity = (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm());

    const Mat comm = Lx2 * LxLx - LxLx * Lx2;
    r.commutator = comm.cwiseAbs().maxCoeff() /
                   (1.0 + Lx2.cwiseAbs().maxCoeff() * LxLx.cwiseAbs().maxCoeff());
  });

  EiconalResiduals out;
  for (const auto& r : slots) {
    out.norm_identity = std::max(out.norm_identity, r.norm_identity);
    out.cube_identity = std::max(out.cube_identity, r.cube_identity);
    out.operator_identity = std::max(out.operator_identity, r.operator_identity);
    out.trilinear_identity = std::max(out.trilinear_identity, r.trilinear_identity);
    out.commutator = std::max(out.commutator, r.commutator);
  }
  return out;
}

MunznerResiduals munzner_residuals(const CubicForm& u, int n_samples, std::uint64_t seed,
                                   ExecMode mode) {
  const int n = u.dim();
  std::vector<double> devs(n_samples, 0.0);
  for_each_index(n_samples, mode, [&](long s) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(s));
    const Vec x = rng.unit_vector(n);
    const Vec g = u.gradient_u(x);
    devs[s] = std::abs(g.squaredNorm() / 9.0 - 1.0);
  });
  MunznerResiduals out;
  for (double d : devs) out.munzner = std::max(out.munzner, d);
  for (int i = 0; i < n; ++i) {
    Vec ei = Vec::Zero(n);
    ei[i] = 1.0;
    out.harmonic = std::max(out.harmonic, std::abs(u.mult_operator(ei).trace()));
  }
  return out;
}

double clifford_residual_at(const CubicForm& u, const PeirceDecomposition& dec, const Vec& x) {
  const int half = dec.nearest_cluster(0.5);
  const Mat& Qh = dec.clusters[half].basis;
  const Mat Lx = u.mult_operator(x);
  const Mat R = Qh.transpose() * (Lx * Lx) * Qh -
                0.75 * x.squaredNorm() * Mat::Identity(Qh.cols(), Qh.cols());
  return R.cwiseAbs().maxCoeff();
}

CliffordResiduals clifford_check(const CubicForm& u, const PeirceDecomposition& dec,
                                 int n_samples, std::uint64_t seed) {
  const int minus = dec.nearest_cluster(-1.0);
  const int half = dec.nearest_cluster(0.5);
  if (std::abs(dec.clusters[minus].eigenvalue + 1.0) > 0.1 ||
      std::abs(dec.clusters[half].eigenvalue - 0.5) > 0.1)
    throw std::invalid_argument("clifford_check: missing V_{-1} or V_{1/2} eigenspace");

  CliffordResiduals out;
  out.dim_minus = dec.clusters[minus].multiplicity;
  out.dim_half = dec.clusters[half].multiplicity;
  out.half_dim_even = out.dim_half % 2 == 0;

  const Mat& Qm = dec.clusters[minus].basis;
  for (int s = 0; s < n_samples; ++s) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(s));
    const Vec x = Qm * rng.unit_vector(static_cast<int>(Qm.cols()));
    out.clifford_identity = std::max(out.clifford_identity, clifford_residual_at(u, dec, x));
  }

  // 2 L_c^2 + L_c - 1 vanishes on the complement of c
  const int n = u.dim();
  const Vec c = dec.c;
  const Mat Lc = u.mult_operator(c);
  const Mat A = 2.0 * Lc * Lc + Lc - c.squaredNorm() * Mat::Identity(n, n) -
                2.0 * c * c.transpose();
  out.operator_identity = A.cwiseAbs().maxCoeff();
  return out;
}

int hurwitz_radon(int m) {
  if (m < 1) throw std::invalid_argument("hurwitz_radon: m must be >= 1");
  int t = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++t;
  }
  const int a = t / 4, b = t % 4;
  return 8 * a + (1 << b);
}

DimensionVerdict dimension_check(const PeirceDecomposition& dec, bool harmonic) {
  DimensionVerdict v;
  v.harmonic_checked = harmonic;
  int dim_one = 0;
  for (const auto& cl : dec.clusters) {
    const double l = nearest_label(cl.eigenvalue, kEiconalLabels);
    if (std::abs(cl.eigenvalue - l) > 1e-3)
      throw std::invalid_argument("dimension_check: non-eiconal spectrum profile (cluster at " +
                                  std::to_string(cl.eigenvalue) + ")");
    if (l == 1.0)
      dim_one += cl.multiplicity;
    else if (l == 0.5)
      v.dim_half += cl.multiplicity;
    else
      v.dim_minus += cl.multiplicity;
  }
  v.n = dec.total_multiplicity();
  v.m = v.dim_minus - 1;
  if (v.dim_half > 0 && v.dim_half % 2 == 0) {
    v.rho = hurwitz_radon(v.dim_half / 2);
    v.radon_ok = v.m <= v.rho;
  } else if (v.dim_half == 0) {
    v.rho = 0;
    v.radon_ok = v.m <= 0;
    v.detail = "V_{1/2} empty";
  } else {
    v.rho = 0;
    v.radon_ok = false;
    v.detail = "dim V_{1/2} odd";
  }
  if (harmonic) {
    const bool dims = (v.m >= 1) && (v.dim_half == 2 * v.m) && (v.n == 3 * v.m + 2);
    const bool division = dims && hurwitz_radon(std::max(v.m, 1)) >= v.m &&
                          (v.n == 5 || v.n == 8 || v.n == 14 || v.n == 26);
    v.harmonic_ok = dims && division;
    if (!v.harmonic_ok && v.detail.empty()) v.detail = "harmonic profile mismatch";
  }
  v.pass = v.radon_ok && (!harmonic || v.harmonic_ok);
  if (dim_one != 1 && v.detail.empty()) v.detail = "eigenvalue-1 block not 1-dimensional";
  return v;
}

}  // namespace cubiclab

#include "cubiclab/hessian_w.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubiclab/errors.hpp"
#include "cubiclab/idempotent.hpp"

namespace cubiclab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_nonzero(const Vec& x, const char* op) {
  if (x.norm() == 0.0) throw std::invalid_argument(std::string(op) + ": zero input");
}

void check_idempotent(const CubicForm& u, const Vec& c, const char* op) {
  const double res = (u.multiply(c, c) - c).norm();
  if (res > 1e-8)
    throw NonIdempotentInput(std::string(op) + ": |c^2 - c| = " + std::to_string(res));
}

}  // namespace

RayFunction::RayFunction(CubicForm form, double a, double s)
    : u(std::move(form)), alpha(a), scale(s) {
  if (!(a >= 1.0 && a < 2.0))
    throw std::invalid_argument("RayFunction: alpha must lie in [1, 2)");
}

double w_eval(const RayFunction& r, const Vec& x) {
  check_nonzero(x, "w_eval");
  const Vec x2 = r.u.multiply(x, x);
  return r.scale * x2.dot(x) * std::pow(x.norm(), -r.alpha);
}

std::pair<double, Vec> w_eval_grad(const RayFunction& r, const Vec& x) {
  check_nonzero(x, "w_eval_grad");
  const double rn = x.norm();
  const double a = r.alpha;
  const Vec x2 = r.u.multiply(x, x);
  const double f = x2.dot(x);
  const double ra = std::pow(rn, -a);
  const Vec grad = r.scale * (3.0 * ra * x2 - a * f * ra / (rn * rn) * x);
  return {r.scale * f * ra, grad};
}

Mat w_hessian(const RayFunction& r, const Vec& x) {
  check_nonzero(x, "w_hessian");
  const int n = r.u.dim();
  const double rn = x.norm();
  const double a = r.alpha;
  const Vec x2 = r.u.multiply(x, x);
  const double f = x2.dot(x);
  const double ra = std::pow(rn, -a);
  const double ra2 = ra / (rn * rn);
  const double ra4 = ra2 / (rn * rn);
  Mat H = 6.0 * ra * r.u.mult_operator(x);
  H -= a * f * ra2 * Mat::Identity(n, n);
  const Mat sym = x * x2.transpose() + x2 * x.transpose();
  H -= 3.0 * a * ra2 * sym;
  H += a * (a + 2.0) * f * ra4 * (x * x.transpose());
  return r.scale * H;
}

double w_laplacian(const RayFunction& r, const Vec& x) {
  check_nonzero(x, "w_laplacian");
  const double rn = x.norm();
  const double a = r.alpha;
  const Vec x2 = r.u.multiply(x, x);
  const double f = x2.dot(x);
  const int n = r.u.dim();
  const double tr = r.u.mult_operator(x).trace();
  return r.scale * (6.0 * std::pow(rn, -a) * tr -
                    a * (n + 4.0 - a) * f * std::pow(rn, -a - 2.0));
}

Vec idempotent_spectrum(const RayFunction& r, const Vec& c) {
  check_nonzero(c, "idempotent_spectrum");
  check_idempotent(r.u, c, "idempotent_spectrum");
  const double cn = c.norm();
  const Vec restr = restricted_spectrum(r.u, c);
  Vec spec(restr.size() + 1);
  spec[0] = r.scale * 2.0 / cn;
  for (int i = 0; i < restr.size(); ++i) spec[i + 1] = r.scale * (6.0 * restr[i] - 1.0) / cn;
  std::sort(spec.data(), spec.data() + spec.size());
  return spec;
}

double charpoly_check(const RayFunction& r, const Vec& c, const std::vector<double>& grid,
                      bool require_simple_top) {
  check_idempotent(r.u, c, "charpoly_check");
  const int n = r.u.dim();
  const double cn = c.norm();

  Eigen::SelfAdjointEigenSolver<Mat> esH(w_hessian(r, c) / r.scale);
  const Vec mu = esH.eigenvalues();
  Eigen::SelfAdjointEigenSolver<Mat> esL(r.u.mult_operator(c));
  const Vec lam = esL.eigenvalues();

  double worst = 0.0;
  for (double t : grid) {
    if (std::abs(cn * t - 5.0) < 1e-6 || std::abs(cn * t - 2.0) < 1e-6)
      throw std::invalid_argument("charpoly_check: grid point at a pole or cancellation");
    double lhs = 1.0;
    for (int i = 0; i < n; ++i) lhs *= t - mu[i];
    double chi = 1.0;
    const double z = (1.0 + cn * t) / 6.0;
    for (int i = 0; i < n; ++i) chi *= z - lam[i];
    const double rhs = std::pow(6.0, n) * (cn * t - 2.0) /
                       (std::pow(cn, n) * (cn * t - 5.0)) * chi;
    worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300));
  }
  if (require_simple_top) {
    int count = 0;
    const double top = 2.0 / cn;
    for (int i = 0; i < n; ++i)
      if (std::abs(mu[i] - top) <= 1e-8 * (1.0 + std::abs(top))) ++count;
    if (count != 1)
      throw std::runtime_error("charpoly_check: 2/|c| is not a simple eigenvalue");
  }
  return worst;
}

std::vector<double> default_charpoly_grid(const RayFunction& r, const Vec& c, int n_points) {
  const double cn = c.norm();
  Eigen::SelfAdjointEigenSolver<Mat> esH(w_hessian(r, c) / r.scale);
  const Vec mu = esH.eigenvalues();
  std::vector<double> grid;
  for (double t = -12.0; t <= 12.0 && static_cast<int>(grid.size()) < n_points; t += 0.5) {
    if (std::abs(cn * t - 5.0) < 0.3 || std::abs(cn * t - 2.0) < 0.3) continue;
    bool near_eig = false;
    for (int i = 0; i < mu.size(); ++i)
      if (std::abs(t - mu[i]) < 0.3) near_eig = true;
    if (!near_eig) grid.push_back(t);
  }
  return grid;
}

MHyperbolicity m_hyperbolicity(const Mat& A, double zero_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A, Eigen::EigenvaluesOnly);
  const Vec lam = es.eigenvalues();
  MHyperbolicity out;
  out.lambda_min = lam[0];
  out.lambda_max = lam[lam.size() - 1];
  if (lam.cwiseAbs().maxCoeff() <= zero_tol) {
    out.kind = MHyperbolicity::Kind::ZeroClass;
    out.M = 0.0;
    return out;
  }
  if (!(out.lambda_min < 0.0 && 0.0 < out.lambda_max)) {
    out.kind = MHyperbolicity::Kind::Infinite;
    out.M = kInf;
    return out;
  }
  out.kind = MHyperbolicity::Kind::Finite;
  out.M = std::max(-out.lambda_min / out.lambda_max, -out.lambda_max / out.lambda_min);
  return out;
}

namespace {

struct PairEval {
  MHyperbolicity hyp;
  double zero_tol = 0.0;
};

PairEval eval_pair(const RayFunction& r, const Vec& x, const Vec& y, const Mat* U,
                   double zero_tol_scale) {
  const Mat Hx = w_hessian(r, x);
  Mat Hy = w_hessian(r, y);
  if (U) Hy = (*U) * Hy * U->transpose();
  const double ztol =
      zero_tol_scale * (1.0 + Hx.cwiseAbs().maxCoeff() + Hy.cwiseAbs().maxCoeff());
  PairEval pe;
  pe.zero_tol = ztol;
  pe.hyp = m_hyperbolicity(Hx - Hy, ztol);
  return pe;
}

/// Deterministic pattern search maximizing the finite M over unit pairs.
double refine_pair(const RayFunction& r, Vec x, Vec y, const Mat* U, double zero_tol_scale,
                   double M0) {
  const int n = static_cast<int>(x.size());
  double best = M0;
  double h = 0.1;
  for (int sweep = 0; sweep < 200 && h > 1e-7; ++sweep) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      Vec& v = which == 0 ? x : y;
      for (int i = 0; i < n; ++i) {
        for (double dir : {1.0, -1.0}) {
          Vec vt = v;
          vt[i] += dir * h;
          vt.normalize();
          const Vec& xt = which == 0 ? vt : x;
          const Vec& yt = which == 0 ? y : vt;
          const PairEval pe = eval_pair(r, xt, yt, U, zero_tol_scale);
          if (pe.hyp.kind == MHyperbolicity::Kind::Finite && pe.hyp.M > best) {
            best = pe.hyp.M;
            v = vt;
            improved = true;
            break;
          }
        }
      }
    }
    if (!improved) h *= 0.5;
  }
  return best;
}

}  // namespace

HyperbolicityReport hyperbolic_set_estimate(const RayFunction& r, long n_pairs,
                                            std::uint64_t seed, bool orbit,
                                            double zero_tol_scale, ExecMode mode,
                                            bool keep_samples) {
  if (n_pairs < 1) throw std::invalid_argument("hyperbolic_set_estimate: n_pairs >= 1");
  const int n = r.u.dim();

  std::vector<PairSample> samples(n_pairs);
  for_each_index(n_pairs, mode, [&](long i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec x = rng.unit_vector(n);
    const Vec y = rng.unit_vector(n);
    Mat U;
    if (orbit) U = rng.haar_orthogonal(n);
    const PairEval pe = eval_pair(r, x, y, orbit ? &U : nullptr, zero_tol_scale);
    samples[i] = {pe.hyp.lambda_min, pe.hyp.lambda_max,
                  pe.hyp.kind == MHyperbolicity::Kind::ZeroClass ? 0.0 : pe.hyp.M};
  });

  HyperbolicityReport rep;
  rep.n_pairs = n_pairs;
  rep.orbit = orbit;
  rep.zero_tol_scale = zero_tol_scale;
  rep.seed = seed;

  long best_idx = -1;
  long first_violation = -1;
  for (long i = 0; i < n_pairs; ++i) {
    const PairSample& s = samples[i];
    if (std::isinf(s.M)) {
      ++rep.violations;
      if (first_violation < 0) first_violation = i;
    } else if (s.M == 0.0) {
      ++rep.zero_class;
    } else if (s.M > rep.sampled_M) {
      rep.sampled_M = s.M;
      best_idx = i;
    }
  }

  const auto pair_of = [&](long i, Vec& x, Vec& y, Mat& U) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    x = rng.unit_vector(n);
    y = rng.unit_vector(n);
    if (orbit) U = rng.haar_orthogonal(n);
  };

  if (rep.violations > 0) {
    rep.M_sup = kInf;
    rep.finite = false;
    Vec x, y;
    Mat U = Mat::Identity(n, n);
    pair_of(first_violation, x, y, U);
    rep.worst_x = x;
    rep.worst_y = y;
    rep.worst_U = U;
  } else if (best_idx >= 0) {
    // refine from the top finite pairs (deterministic, at most 3 starts)
    std::vector<long> order;
    for (long i = 0; i < n_pairs; ++i)
      if (std::isfinite(samples[i].M) && samples[i].M > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](long a, long b) {
      if (samples[a].M != samples[b].M) return samples[a].M > samples[b].M;
      return a < b;
    });
    double refined = rep.sampled_M;
    for (std::size_t k = 0; k < order.size() && k < 3; ++k) {
      Vec x, y;
      Mat U = Mat::Identity(n, n);
      pair_of(order[k], x, y, U);
      refined = std::max(refined, refine_pair(r, x, y, orbit ? &U : nullptr, zero_tol_scale,
                                              samples[order[k]].M));
    }
    rep.M_sup = refined;
    rep.finite = true;
    Vec x, y;
    Mat U = Mat::Identity(n, n);
    pair_of(best_idx, x, y, U);
    rep.worst_x = x;
    rep.worst_y = y;
    rep.worst_U = U;
  } else {
    // every difference was zero-class
    rep.M_sup = 0.0;
    rep.finite = true;
    rep.worst_x = Vec::Zero(n);
    rep.worst_y = Vec::Zero(n);
    rep.worst_U = Mat::Identity(n, n);
  }
  if (keep_samples) rep.samples = std::move(samples);
  return rep;
}

double gap_ratio(const Vec& spectrum, double zero_tol) {
  const int n = static_cast<int>(spectrum.size());
  if (n < 3) throw std::invalid_argument("gap_ratio: spectrum must have length >= 3");
  Vec mu = spectrum;
  std::sort(mu.data(), mu.data() + n, std::greater<double>());
  double rho = 0.0;
  for (auto [num, den] : {std::pair{mu[0], mu[2]}, std::pair{mu[n - 1], mu[n - 3]}}) {
    if (std::abs(den) <= zero_tol) {
      if (std::abs(num) <= zero_tol) continue;  // 0/0: no constraint from this side
      return kInf;
    }
    rho = std::max(rho, std::abs(num / den));
  }
  return rho;
}

GapScanReport gap_scan(const CubicForm& u, int n_dirs, std::uint64_t seed, double delta,
                       ExecMode mode) {
  if (n_dirs < 1) throw std::invalid_argument("gap_scan: n_dirs >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("gap_scan: delta in (0,1)");
  const int n = u.dim();

  GapScanReport rep;
  rep.delta = delta;
  rep.sampled_rho.assign(n_dirs, 0.0);
  for_each_index(n_dirs, mode, [&](long i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec d = rng.unit_vector(n);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * u.mult_operator(d), Eigen::EigenvaluesOnly);
    rep.sampled_rho[i] = gap_ratio(es.eigenvalues());
  });
  for (double rho : rep.sampled_rho) {
    if (rho >= 2.0 - delta) ++rep.violating_dirs;
    if (std::isfinite(rho)) rep.max_rho = std::max(rep.max_rho, rho);
  }

  NewtonOptions nopts;
  nopts.seed = seed ^ 0x9E3779B97F4A7C15ULL;  // independent of the direction stream
  nopts.mode = mode;
  const auto found = newton_search(u, nopts);
  for (const auto& rec : found.records) {
    if (!rec.extremal || rec.square_zero_witness) continue;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * u.mult_operator(rec.c),
                                          Eigen::EigenvaluesOnly);
    const double rho = gap_ratio(es.eigenvalues());
    rep.extremal_rho.push_back(rho);
    if (rho >= 2.0 - delta) rep.extremal_violates = true;
  }
  rep.gap_condition_holds = rep.violating_dirs == 0 && !rep.extremal_violates;
  return rep;
}

double f5_residual(const CubicForm& u, const Vec& x, double scale_s) {
  check_nonzero(x, "f5_residual");
  if (u.dim() != 5) throw std::invalid_argument("f5_residual: form must live on R^5");
  // w = scale_s * u/|x| equals (scale_s/6) * <x^2,x>/|x|
  const RayFunction r(u, 1.0, scale_s / 6.0);
  const Mat H = w_hessian(r, x);
  const double tr = H.trace();
  const double det = H.determinant();
  const auto& cf = kHessianQuinticCoeffs;
  const std::array<double, 4> terms = {cf[0] * std::pow(tr, 5), cf[1] * std::pow(tr, 3),
                                       cf[2] * tr, cf[3] * det};
  double sum = 0.0, largest = 0.0;
  for (double t : terms) {
    sum += t;
    largest = std::max(largest, std::abs(t));
  }
  if (largest == 0.0) return 0.0;
  return std::abs(sum) / largest;
}

ScaleSearchResult f5_scale_search(const CubicForm& u, int n_points, std::uint64_t seed,
                                  int grid_per_sign) {
  if (u.dim() != 5) throw std::invalid_argument("f5_scale_search: form must live on R^5");
  // cache trace/determinant of the unit-scale Hessian per point; under
  // w -> s*w they scale as s and s^5
  struct Cached {
    double tr, det;
  };
  std::vector<Cached> pts(n_points);
  const RayFunction r1(u, 1.0, 1.0 / 6.0);  // w = u/|x|
  for (int i = 0; i < n_points; ++i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec x = rng.unit_vector(5);
    const Mat H = w_hessian(r1, x);
    pts[i] = {H.trace(), H.determinant()};
  }
  const auto& cf = kHessianQuinticCoeffs;
  const auto residual_at = [&](double s) {
    double worst = 0.0;
    for (const auto& p : pts) {
      const double tr = s * p.tr;
      const std::array<double, 4> terms = {cf[0] * std::pow(tr, 5), cf[1] * std::pow(tr, 3),
                                           cf[2] * tr, cf[3] * std::pow(s, 5) * p.det};
      double sum = 0.0, largest = 0.0;
      for (double t : terms) {
        sum += t;
        largest = std::max(largest, std::abs(t));
      }
      worst = std::max(worst, largest == 0.0 ? 0.0 : std::abs(sum) / largest);
    }
    return worst;
  };

  ScaleSearchResult result;
  result.best_residual = kInf;
  for (double sign : {1.0, -1.0}) {
    for (int k = 0; k < grid_per_sign; ++k) {
      const double lg = -3.0 + 6.0 * k / (grid_per_sign - 1);
      const double s = sign * std::pow(10.0, lg);
      const double res = residual_at(s);
      result.trace.emplace_back(s, res);
      if (res < result.best_residual) {
        result.best_residual = res;
        result.s_star = s;
      }
    }
  }
  // golden-section refinement in log-space around the best grid point
  const double sign = result.s_star < 0.0 ? -1.0 : 1.0;
  double lo = std::log10(std::abs(result.s_star)) - 6.0 / (grid_per_sign - 1);
  double hi = std::log10(std::abs(result.s_star)) + 6.0 / (grid_per_sign - 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
  double fa = residual_at(sign * std::pow(10.0, a));
  double fb = residual_at(sign * std::pow(10.0, b));
  for (int it = 0; it < 80; ++it) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - gr * (hi - lo);
      fa = residual_at(sign * std::pow(10.0, a));
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + gr * (hi - lo);
      fb = residual_at(sign * std::pow(10.0, b));
    }
  }
  const double s_ref = sign * std::pow(10.0, fa < fb ? a : b);
  const double res_ref = std::min(fa, fb);
  if (res_ref < result.best_residual) {
    result.best_residual = res_ref;
    result.s_star = s_ref;
  }
  result.trace.emplace_back(result.s_star, result.best_residual);
  return result;
}

HsiangFit hsiang_fit(const CubicForm& u, int n_samples, std::uint64_t seed, ExecMode mode) {
  const int n = u.dim();
  HsiangFit fit;
  for (int i = 0; i < n; ++i) {
    Vec ei = Vec::Zero(n);
    ei[i] = 1.0;
    fit.harmonic = std::max(fit.harmonic, std::abs(u.mult_operator(ei).trace()));
  }
  // probes: first sample fixes C1; first sample with u(x) away from 0 fixes C2
  double c2_best_u = 0.0;
  bool have_c2 = false;
  {
    RandomStream rng = RandomStream::substream(seed, 0);
    const Vec x = rng.unit_vector(n);
    const Mat L = u.mult_operator(x);
    fit.C1 = (L * L).trace();  // |x| = 1
  }
  for (int i = 0; i < n_samples; ++i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec x = rng.unit_vector(n);
    const double ux = u.evaluate(x);
    if (std::abs(ux) > std::abs(c2_best_u)) {
      const Mat L = u.mult_operator(x);
      fit.C2 = (L * L * L).trace() / ux;
      c2_best_u = ux;
      have_c2 = true;
    }
  }
  if (!have_c2 || std::abs(c2_best_u) < 1e-12)
    throw std::runtime_error("hsiang_fit: degenerate probe, u vanishes on all samples");

  std::vector<double> r1(n_samples, 0.0), r2(n_samples, 0.0);
  for_each_index(n_samples, mode, [&](long i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec x = rng.unit_vector(n);
    const Mat L = u.mult_operator(x);
    const Mat L2 = L * L;
    r1[i] = std::abs(L2.trace() - fit.C1) / (1.0 + std::abs(fit.C1));
    r2[i] = std::abs((L2 * L).trace() - fit.C2 * u.evaluate(x)) / (1.0 + std::abs(fit.C2));
  });
  for (int i = 0; i < n_samples; ++i) {
    fit.residual_sq = std::max(fit.residual_sq, r1[i]);
    fit.residual_cube = std::max(fit.residual_cube, r2[i]);
  }
  return fit;
}

}  // namespace cubiclab

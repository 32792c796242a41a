#include "cubiclab/idempotent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cubiclab/errors.hpp"

namespace cubiclab {

namespace {

constexpr double kExtremalTol = 1e-8;

/// Orthonormal basis of the complement of v (columns), via Householder.
Mat complement_basis(const Vec& v) {
  const int n = static_cast<int>(v.size());
  Vec w = v.normalized();
  // Householder vector mapping e_0 to w: H = I - 2 h h^T
  Vec h = w;
  h[0] += (w[0] >= 0.0 ? 1.0 : -1.0);
  h.normalize();
  // Columns 1..n-1 of the reflector I - 2 h h^T are an orthonormal basis
  // of the complement of w.
  Mat basis(n, n - 1);
  for (int j = 1; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    basis.col(j - 1) = e - 2.0 * h * h[j];
  }
  return basis;
}

void fill_flags(const CubicForm& u, IdempotentRecord& rec) {
  const Mat L = u.mult_operator(rec.c);
  Eigen::SelfAdjointEigenSolver<Mat> es(L);
  rec.spectrum = es.eigenvalues();
  const double scale = 1.0 + rec.spectrum.cwiseAbs().maxCoeff();
  int ones = 0;
  for (int i = 0; i < rec.spectrum.size(); ++i)
    if (std::abs(rec.spectrum[i] - 1.0) <= 1e-8 * scale) ++ones;
  rec.primitive = (ones == 1);
  if (rec.c.size() == 1) {
    rec.extremal = true;  // no complement to test
  } else {
    const Vec restr = restricted_spectrum(u, rec.c);
    rec.extremal = (restr.maxCoeff() <= 0.5 + kExtremalTol);
  }
}

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

Vec restricted_spectrum(const CubicForm& u, const Vec& c) {
  const Mat Q = complement_basis(c);
  const Mat B = Q.transpose() * u.mult_operator(c) * Q;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (B + B.transpose()));
  return es.eigenvalues();
}

Vec newton_step(const CubicForm& u, const Vec& x) {
  const int n = u.dim();
  const Vec g = u.multiply(x, x) - x;
  Mat J = 2.0 * u.mult_operator(x) - Mat::Identity(n, n);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(J);
  return cod.solve(-g);
}

NewtonSearchResult newton_search(const CubicForm& u, const NewtonOptions& opts) {
  if (opts.n_starts < 1) throw std::invalid_argument("newton_search: n_starts must be >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("newton_search: tol must be positive");
  const int n = u.dim();

  struct Outcome {
    bool converged = false;
    bool zero = false;
    Vec c;
    double residual = 0.0;
  };
  std::vector<Outcome> slots(opts.n_starts);

  for_each_index(opts.n_starts, opts.mode, [&](long s) {
    RandomStream rng = RandomStream::substream(opts.seed, static_cast<std::uint64_t>(s));
    Vec x = rng.unit_vector(n);
    Eigen::SelfAdjointEigenSolver<Mat> es(u.mult_operator(x));
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    x /= std::max(radius, 1e-6);

    double res = (u.multiply(x, x) - x).norm();
    bool converged = res <= opts.tol;
    for (int it = 0; it < opts.max_iter && !converged; ++it) {
      const Vec delta = newton_step(u, x);
      if (!delta.allFinite()) break;
      // backtracking on the residual norm
      double t = 1.0;
      Vec xn = x + delta;
      double rn = (u.multiply(xn, xn) - xn).norm();
      for (int h = 0; h < 24 && !(rn < res); ++h) {
        t *= 0.5;
        xn = x + t * delta;
        rn = (u.multiply(xn, xn) - xn).norm();
      }
      if (!(rn < res)) break;  // stalled
      x = xn;
      res = rn;
      converged = res <= opts.tol;
    }
    Outcome& o = slots[s];
    if (!converged) return;
    if (x.norm() <= 10.0 * opts.tol) {
      o.zero = true;
      return;
    }
    o.converged = true;
    o.c = x;
    o.residual = res;
  });

  NewtonSearchResult result;
  std::vector<std::pair<Vec, double>> hits;
  for (const auto& o : slots) {
    if (o.zero)
      ++result.converged_to_zero;
    else if (o.converged)
      hits.emplace_back(o.c, o.residual);
    else
      ++result.non_converged;
  }
  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return lex_less(a.first, b.first);
  });
  std::vector<std::pair<Vec, double>> kept;
  for (const auto& h : hits) {
    bool dup = false;
    for (const auto& k : kept)
      if ((h.first - k.first).norm() <= 10.0 * opts.tol) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(h);
  }
  for (const auto& k : kept) {
    IdempotentRecord rec;
    rec.c = k.first;
    rec.residual = k.second;
    rec.origin = IdempotentOrigin::Newton;
    fill_flags(u, rec);
    result.records.push_back(std::move(rec));
  }
  return result;
}

double variational_objective(const CubicForm& u, const Vec& x) {
  return u.multiply(x, x).dot(x);
}

IdempotentRecord variational_search(const CubicForm& u, const Vec& x0,
                                    const VariationalOptions& opts) {
  const int n = u.dim();
  if (x0.size() != n) throw DimensionMismatch("variational_search: x0 dimension mismatch");
  if (std::abs(x0.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("variational_search: x0 must be a unit vector");

  Vec x = x0.normalized();
  double f = variational_objective(u, x);
  const double gtol = 1e-13 * (1.0 + u.tensor_max_abs());
  bool stationary = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Vec x2 = u.multiply(x, x);
    const Vec grad = 3.0 * (x2 - f * x);  // Riemannian gradient on the sphere
    if (grad.norm() <= gtol) {
      stationary = true;
      break;
    }
    // backtracking ascent; monotone in f up to the line-search tolerance
    double eta = 0.5 / (1.0 + u.tensor_max_abs());
    bool accepted = false;
    for (int h = 0; h < 40; ++h) {
      Vec xn = (x + eta * grad).normalized();
      const double fn = variational_objective(u, xn);
      if (fn >= f + 1e-4 * eta * grad.squaredNorm()) {
        x = xn;
        f = fn;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      stationary = true;  // no ascent direction left at line-search resolution
      break;
    }
  }
  if (!stationary)
    throw ConvergenceFailure("variational_search: ascent did not settle in max_iter");

  const Vec x2 = u.multiply(x, x);
  if (x2.norm() <= opts.tol) {
    IdempotentRecord rec;
    rec.c = x;
    rec.residual = (x2 - x).norm();
    rec.origin = IdempotentOrigin::Variational;
    rec.square_zero_witness = true;
    fill_flags(u, rec);
    return rec;
  }

  Vec c = x / x2.dot(x);
  // Newton polish towards residual <= tol
  double res = (u.multiply(c, c) - c).norm();
  for (int it = 0; it < 30 && res > opts.tol; ++it) {
    const Vec delta = newton_step(u, c);
    if (!delta.allFinite()) break;
    const Vec cn = c + delta;
    const double rn = (u.multiply(cn, cn) - cn).norm();
    if (!(rn < res)) break;
    c = cn;
    res = rn;
  }
  if (res > opts.tol)
    throw ConvergenceFailure("variational_search: residual " + std::to_string(res) +
                             " above tol");
  IdempotentRecord rec;
  rec.c = c;
  rec.residual = res;
  rec.origin = IdempotentOrigin::Variational;
  fill_flags(u, rec);
  return rec;
}

GenericityReport genericity_report(const CubicForm& u,
                                   const std::vector<IdempotentRecord>& records, double tol) {
  GenericityReport rep;
  rep.tol = tol;
  rep.generic_evidence = true;
  for (const auto& rec : records) {
    GenericityEntry e;
    double dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rec.spectrum.size(); ++i)
      dist = std::min(dist, std::abs(rec.spectrum[i] - 0.5));
    e.dist_half = dist;
    e.has_half = dist <= tol;
    const int n = u.dim();
    const Mat J = 2.0 * u.mult_operator(rec.c) - Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(J);
    e.sigma_min = svd.singularValues().minCoeff();
    e.jacobian_singular = e.sigma_min <= 2.0 * tol;
    if (e.has_half != e.jacobian_singular) rep.cross_check_consistent = false;
    if (e.has_half) rep.generic_evidence = false;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace cubiclab

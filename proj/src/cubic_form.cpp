#include "cubiclab/cubic_form.hpp"

#include <algorithm>
#include <cmath>

#include "cubiclab/errors.hpp"

namespace cubiclab {

namespace {

// Distinct permutations of a sorted triple, fixed enumeration order.
// Returns count; perms[p] = {a,b,c}.
int distinct_perms(const std::array<int, 3>& t, std::array<std::array<int, 3>, 6>& perms) {
  const int i = t[0], j = t[1], k = t[2];
  if (i == j && j == k) {
    perms[0] = {i, i, i};
    return 1;
  }
  if (i == j) {  // i = j < k
    perms[0] = {i, i, k};
    perms[1] = {i, k, i};
    perms[2] = {k, i, i};
    return 3;
  }
  if (j == k) {  // i < j = k
    perms[0] = {i, j, j};
    perms[1] = {j, i, j};
    perms[2] = {j, j, i};
    return 3;
  }
  perms[0] = {i, j, k};
  perms[1] = {i, k, j};
  perms[2] = {j, i, k};
  perms[3] = {j, k, i};
  perms[4] = {k, i, j};
  perms[5] = {k, j, i};
  return 6;
}

int multiplicity(int i, int j, int k) {
  if (i == j && j == k) return 1;
  if (i == j || j == k || i == k) return 3;
  return 6;
}

}  // namespace

CubicForm::CubicForm(int dim, std::string label)
    : dim_(dim), label_(std::move(label)), coeff_(packed_size(dim), 0.0) {}

CubicForm CubicForm::zero(int dim, std::string label) {
  if (dim < 1) throw std::invalid_argument("CubicForm: dim must be positive");
  return CubicForm(dim, std::move(label));
}

CubicForm CubicForm::from_monomials(int dim, const std::vector<MonomialTerm>& terms,
                                    std::string label) {
  CubicForm f = zero(dim, std::move(label));
  for (const auto& t : terms) {
    const auto [i, j, k] = t.monomial;
    if (!(0 <= i && i <= j && j <= k && k < dim))
      throw std::invalid_argument("from_monomials: index triple out of range or unsorted");
    if (!std::isfinite(t.coeff))
      throw std::invalid_argument("from_monomials: non-finite coefficient");
    f.coeff_[packed_index(i, j, k)] += t.coeff;
  }
  f.rebuild_nonzeros();
  return f;
}

void CubicForm::rebuild_nonzeros() {
  nonzeros_.clear();
  if (dim_ <= kDenseLimit) return;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      for (int k = j; k < dim_; ++k)
        if (coeff_[packed_index(i, j, k)] != 0.0) nonzeros_.push_back({i, j, k});
}

void CubicForm::check_dim(const Vec& x, const char* op) const {
  if (x.size() != dim_)
    throw DimensionMismatch(std::string(op) + ": element dimension does not match form");
}

template <typename Fn>
void CubicForm::for_each_term(Fn&& fn) const {
  if (dim_ <= kDenseLimit) {
    for (int i = 0; i < dim_; ++i)
      for (int j = i; j < dim_; ++j)
        for (int k = j; k < dim_; ++k) {
          const double c = coeff_[packed_index(i, j, k)];
          if (c != 0.0) fn(i, j, k, c);
        }
  } else {
    for (const auto& t : nonzeros_) fn(t[0], t[1], t[2], coeff_[packed_index(t[0], t[1], t[2])]);
  }
}

double CubicForm::tensor(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
    throw std::out_of_range("tensor: index out of range");
  int a = i, b = j, c = k;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  const double co = coeff_[packed_index(a, b, c)];
  return (6.0 / multiplicity(a, b, c)) * co;
}

double CubicForm::tensor_max_abs() const {
  double m = 0.0;
  for_each_term([&](int i, int j, int k, double c) {
    m = std::max(m, (6.0 / multiplicity(i, j, k)) * std::abs(c));
  });
  return m;
}

double CubicForm::evaluate(const Vec& x) const {
  check_dim(x, "evaluate");
  double s = 0.0;
  for_each_term([&](int i, int j, int k, double c) { s += c * x[i] * x[j] * x[k]; });
  return s;
}

double CubicForm::polarize(const Vec& x, const Vec& y, const Vec& z) const {
  check_dim(x, "polarize");
  check_dim(y, "polarize");
  check_dim(z, "polarize");
  double s = 0.0;
  std::array<std::array<int, 3>, 6> perms;
  for_each_term([&](int i, int j, int k, double c) {
    const double w = (6.0 / multiplicity(i, j, k)) * c;  // tensor entry
    const int np = distinct_perms({i, j, k}, perms);
    double acc = 0.0;
    for (int p = 0; p < np; ++p) acc += x[perms[p][0]] * y[perms[p][1]] * z[perms[p][2]];
    s += w * acc;
  });
  return s;
}

Vec CubicForm::multiply(const Vec& x, const Vec& y) const {
  check_dim(x, "multiply");
  check_dim(y, "multiply");
  Vec out = Vec::Zero(dim_);
  std::array<std::array<int, 3>, 6> perms;
  for_each_term([&](int i, int j, int k, double c) {
    const double w = (6.0 / multiplicity(i, j, k)) * c;
    const int np = distinct_perms({i, j, k}, perms);
    for (int p = 0; p < np; ++p) out[perms[p][2]] += w * x[perms[p][0]] * y[perms[p][1]];
  });
  return out;
}

Mat CubicForm::mult_operator(const Vec& x) const {
  check_dim(x, "mult_operator");
  Mat L = Mat::Zero(dim_, dim_);
  std::array<std::array<int, 3>, 6> perms;
  for_each_term([&](int i, int j, int k, double c) {
    const double w = (6.0 / multiplicity(i, j, k)) * c;
    const int np = distinct_perms({i, j, k}, perms);
    for (int p = 0; p < np; ++p) L(perms[p][2], perms[p][1]) += w * x[perms[p][0]];
  });
  return L;
}

Vec CubicForm::gradient_u(const Vec& x) const {
  check_dim(x, "gradient_u");
  return 0.5 * multiply(x, x);
}

std::vector<MonomialTerm> CubicForm::to_monomials() const {
  std::vector<MonomialTerm> out;
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      for (int k = j; k < dim_; ++k) {
        const double c = coeff_[packed_index(i, j, k)];
        if (c != 0.0) out.push_back({{i, j, k}, c});
      }
  return out;
}

CubicForm CubicForm::scaled(double s) const {
  CubicForm f = *this;
  for (double& c : f.coeff_) c *= s;
  f.rebuild_nonzeros();
  return f;
}

bool CubicForm::is_zero(double tol) const {
  for (double c : coeff_)
    if (std::abs(c) > tol) return false;
  return true;
}

bool is_zero_algebra(const CubicForm& u, double tol) {
  const int n = u.dim();
  const double scale = 1.0 + u.tensor_max_abs();
  for (int i = 0; i < n; ++i) {
    Vec ei = Vec::Zero(n);
    ei[i] = 1.0;
    for (int j = i; j < n; ++j) {
      Vec ej = Vec::Zero(n);
      ej[j] = 1.0;
      if (u.multiply(ei, ej).lpNorm<Eigen::Infinity>() > tol * scale) return false;
    }
  }
  return true;
}

CubicForm random_form(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_form: dim must be positive");
  RandomStream rng(seed);
  std::vector<MonomialTerm> terms;
  terms.reserve(packed_size(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = j; k < dim; ++k) terms.push_back({{i, j, k}, rng.gaussian()});
  return CubicForm::from_monomials(dim, terms,
                                   "random:" + std::to_string(dim) + ":" + std::to_string(seed));
}

}  // namespace cubiclab

#include "cubiclab/catalog.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cubiclab/division_algebra.hpp"
#include "cubiclab/errors.hpp"

namespace cubiclab {

namespace {

void add(std::vector<MonomialTerm>& terms, int i, int j, int k, double c) {
  int a = i, b = j, d = k;
  if (a > b) std::swap(a, b);
  if (b > d) std::swap(b, d);
  if (a > b) std::swap(a, b);
  terms.push_back({{a, b, d}, c});
}

}  // namespace

CubicForm cartan_cubic(int d) {
  if (d != 1 && d != 2 && d != 4 && d != 8)
    throw std::invalid_argument("cartan_cubic: d must be 1, 2, 4 or 8");
  const int n = 3 * d + 2;
  const int z1 = 2, z2 = 2 + d, z3 = 2 + 2 * d;
  const double s3 = std::sqrt(3.0);
  std::vector<MonomialTerm> terms;
  add(terms, 0, 0, 0, 1.0);
  add(terms, 0, 1, 1, -3.0);
  for (int i = 0; i < d; ++i) {
    add(terms, 0, z1 + i, z1 + i, 1.5);
    add(terms, 0, z2 + i, z2 + i, 1.5);
    add(terms, 0, z3 + i, z3 + i, -3.0);
    add(terms, 1, z2 + i, z2 + i, 1.5 * s3);
    add(terms, 1, z1 + i, z1 + i, -1.5 * s3);
  }
  // 3*sqrt(3) Re((z1 z2) z3); Re(q c) = q0 c0 - sum_{k>=1} q_k c_k
  const auto& alg = DivisionAlgebra::get(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int k = alg.basis_index(i, j);
      const double eps = (k == 0) ? 1.0 : -1.0;
      add(terms, z1 + i, z2 + j, z3 + k, 3.0 * s3 * alg.basis_sign(i, j) * eps);
    }
  return CubicForm::from_monomials(n, terms, "cartan:" + std::to_string(d));
}

CubicForm u5_determinant(U5Variant variant) {
  // matrix entries as linear forms: (variable, coefficient) lists
  using Lin = std::vector<std::pair<int, double>>;
  const double is3 = 1.0 / std::sqrt(3.0);
  const Lin m21 = (variant == U5Variant::Printed) ? Lin{{1, 1.0}} : Lin{{2, 1.0}};
  const Lin A[3][3] = {
      {{{0, is3}, {1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}},
      {m21, {{0, -2.0 * is3}}, {{4, 1.0}}},
      {{{3, 1.0}}, {{4, 1.0}}, {{0, is3}, {1, -1.0}}},
  };
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  std::vector<MonomialTerm> terms;
  for (int p = 0; p < 6; ++p) {
    const double sgn = (p < 3) ? 1.0 : -1.0;
    for (const auto& [v1, c1] : A[0][perm[p][0]])
      for (const auto& [v2, c2] : A[1][perm[p][1]])
        for (const auto& [v3, c3] : A[2][perm[p][2]]) add(terms, v1, v2, v3, sgn * c1 * c2 * c3);
  }
  return CubicForm::from_monomials(
      5, terms, variant == U5Variant::Printed ? "u5-printed" : "u5");
}

CubicForm triality_form(int d) {
  if (d != 2 && d != 4 && d != 8)
    throw std::invalid_argument("triality_form: d must be 2, 4 or 8");
  const auto& alg = DivisionAlgebra::get(d);
  std::vector<MonomialTerm> terms;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int k = alg.basis_index(i, j);
      const double eps = (k == 0) ? 1.0 : -1.0;
      add(terms, i, d + j, 2 * d + k, alg.basis_sign(i, j) * eps);
    }
  return CubicForm::from_monomials(3 * d, terms, "triality:" + std::to_string(d));
}

CubicForm det3_form() {
  const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  std::vector<MonomialTerm> terms;
  for (int p = 0; p < 6; ++p) {
    const double sgn = (p < 3) ? 1.0 : -1.0;
    // row-major X: entry (r, c) -> variable 3r + c
    add(terms, 0 + perm[p][0], 3 + perm[p][1], 6 + perm[p][2], sgn);
  }
  return CubicForm::from_monomials(9, terms, "u9");
}

double munzner_probe_deviation(const CubicForm& u, double* kappa_out, int n_probe,
                               std::uint64_t seed) {
  const int n = u.dim();
  double sum = 0.0;
  std::vector<double> ratios(n_probe);
  for (int i = 0; i < n_probe; ++i) {
    RandomStream rng = RandomStream::substream(seed, static_cast<std::uint64_t>(i));
    const Vec x = rng.unit_vector(n);
    const Vec g = u.gradient_u(x);
    ratios[i] = g.squaredNorm();  // |x| = 1
    sum += ratios[i];
  }
  const double kappa = sum / n_probe;
  if (kappa_out) *kappa_out = kappa;
  if (!(kappa > 0.0)) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (double r : ratios) dev = std::max(dev, std::abs(r - kappa) / kappa);
  return dev;
}

MunznerResult normalize_munzner(const CubicForm& u, double tol, int n_probe,
                                std::uint64_t seed) {
  double kappa = 0.0;
  const double dev = munzner_probe_deviation(u, &kappa, n_probe, seed);
  if (!(dev <= tol))
    throw NotEiconalError("normalize_munzner: |grad u|^2/|x|^4 is not constant (form '" +
                          u.label() + "', deviation " + std::to_string(dev) + ")");
  CubicForm out = u.scaled(3.0 / std::sqrt(kappa));
  out.set_label(u.label() + "|munzner");
  return {std::move(out), kappa};
}

double mazya_exponent(const MazyaParams& p) {
  if (p.n < 2) throw std::invalid_argument("mazya_exponent: n must be >= 2");
  if (p.kappa * p.kappa > p.mu * p.nu)
    throw NotStronglyElliptic("mazya_exponent: kappa^2 > mu*nu");
  const double den = p.nu + 2.0 * p.kappa + p.mu;
  if (den == 0.0) throw std::invalid_argument("mazya_exponent: nu + 2*kappa + mu = 0");
  const double radicand =
      p.n * p.n / 4.0 - (p.n - 1.0) * (p.kappa * p.n + p.mu) / den;
  if (radicand < 0.0) throw NegativeRadicand("mazya_exponent: negative radicand");
  return 2.0 - p.n / 2.0 + std::sqrt(radicand);
}

MazyaParams mazya_eps_params(int n, double eps) {
  return {n, static_cast<double>(n) * (n - 2), static_cast<double>(n) * n,
          static_cast<double>(n - 2) * (n - 2) + eps};
}

Vec hopf_map(const Vec& x, int d) {
  if (d != 2 && d != 4 && d != 8)
    throw std::invalid_argument("hopf_map: d must be 2, 4 or 8");
  if (x.size() != 2 * d) throw DimensionMismatch("hopf_map: x must lie in R^{2d}");
  const auto& alg = DivisionAlgebra::get(d);
  const Vec z1 = x.head(d), z2 = x.tail(d);
  Vec eta(d + 1);
  eta[0] = z1.squaredNorm() - z2.squaredNorm();
  eta.tail(d) = 2.0 * alg.multiply(z1, alg.conjugate(z2));
  return eta;
}

double lawson_osserman_prefactor(int d) {
  return 0.5 * std::sqrt((2.0 * d + 1.0) / (d - 1.0));
}

Vec lawson_osserman(const Vec& x, int d) {
  const double r = x.norm();
  if (r == 0.0) throw std::invalid_argument("lawson_osserman: zero input");
  return lawson_osserman_prefactor(d) * hopf_map(x, d) / r;
}

CubicForm parse_form_selector(const std::string& selector) {
  if (selector == "u5") return u5_determinant(U5Variant::Symmetric);
  if (selector == "u5-printed") return u5_determinant(U5Variant::Printed);
  if (selector == "u9") return det3_form();
  const auto colon = selector.find(':');
  const std::string head = selector.substr(0, colon);
  if (head == "file") {
    if (colon == std::string::npos) throw SelectorError("selector 'file:' needs a path");
    return load_form_json(selector.substr(colon + 1));
  }
  if (head == "cartan" || head == "triality") {
    if (colon == std::string::npos)
      throw SelectorError("selector '" + head + "' needs ':<d>'");
    int d = 0;
    try {
      d = std::stoi(selector.substr(colon + 1));
    } catch (const std::exception&) {
      throw SelectorError("bad dimension in selector '" + selector + "'");
    }
    return head == "cartan" ? cartan_cubic(d) : triality_form(d);
  }
  if (head == "random") {
    const auto second = selector.find(':', colon + 1);
    if (colon == std::string::npos || second == std::string::npos)
      throw SelectorError("selector 'random' needs ':<dim>:<seed>'");
    try {
      const int dim = std::stoi(selector.substr(colon + 1, second - colon - 1));
      const std::uint64_t seed = std::stoull(selector.substr(second + 1));
      return random_form(dim, seed);
    } catch (const std::invalid_argument&) {
      throw SelectorError("bad random selector '" + selector + "'");
    } catch (const std::out_of_range&) {
      throw SelectorError("bad random selector '" + selector + "'");
    }
  }
  throw SelectorError("unknown form selector '" + selector + "'");
}

CubicForm load_form_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormFileError("cannot open form file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormFileError("malformed form file '" + path + "': " + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<MonomialTerm> terms;
    for (const auto& t : j.at("terms")) {
      const auto& m = t.at("monomial");
      terms.push_back({{m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()},
                       t.at("coeff").get<double>()});
    }
    return CubicForm::from_monomials(dim, terms, "file:" + path);
  } catch (const nlohmann::json::exception& e) {
    throw FormFileError("malformed form file '" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormFileError("invalid form data in '" + path + "': " + e.what());
  }
}

std::string form_to_json(const CubicForm& u) {
  nlohmann::json j;
  j["dim"] = u.dim();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : u.to_monomials())
    j["terms"].push_back({{"monomial", {t.monomial[0], t.monomial[1], t.monomial[2]}},
                          {"coeff", t.coeff}});
  return j.dump(2) + "\n";
}

}  // namespace cubiclab

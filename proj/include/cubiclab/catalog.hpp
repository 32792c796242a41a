#pragma once

#include <cstdint>
#include <string>

#include "cubiclab/cubic_form.hpp"

namespace cubiclab {

/// Cartan isoparametric cubic on R^{3d+2}, d in {1,2,4,8}:
///   u = x1^3 + (3/2) x1 (|z1|^2 + |z2|^2 - 2|z3|^2 - 2 x2^2)
///       + (3*sqrt(3)/2) x2 (|z2|^2 - |z1|^2) + 3*sqrt(3) Re((z1 z2) z3),
/// with z_i in F_d. Harmonic and |grad u|^2 = 9 |x|^4.
CubicForm cartan_cubic(int d);

enum class U5Variant { Printed, Symmetric };

/// The 5-variable determinant form
///   det [ x1/sqrt(3)+x2   x3                x4
///         m21             -2 x1/sqrt(3)     x5
///         x4              x5                x1/sqrt(3)-x2 ]
/// with m21 = x2 (Printed) or m21 = x3 (Symmetric). Only the Symmetric
/// reading has |grad u|^2/|x|^4 constant (= 4/3).
CubicForm u5_determinant(U5Variant variant);

/// Triality form Re((z1 z2) z3) on F_d^3, d in {2,4,8}.
CubicForm triality_form(int d);

/// Determinant of a general 3x3 matrix as a cubic on R^9 (row-major).
CubicForm det3_form();

struct MunznerResult {
  CubicForm form;  // (3/sqrt(kappa)) * u
  double kappa;    // measured |grad u|^2 / |x|^4
};

/// Rescales u so that |grad u|^2 = 9 |x|^4, provided the ratio is constant
/// to relative `tol` over a seeded probe; throws NotEiconalError otherwise.
MunznerResult normalize_munzner(const CubicForm& u, double tol = 1e-6, int n_probe = 1000,
                                std::uint64_t seed = kDefaultSeed);

/// Largest relative deviation of |grad u|^2/(9|x|^4) from 1 over the probe;
/// shared by normalize_munzner and the verification suite.
double munzner_probe_deviation(const CubicForm& u, double* kappa_out, int n_probe,
                               std::uint64_t seed);

struct MazyaParams {
  int n;                  // ambient dimension >= 2
  double kappa, mu, nu;   // coefficients of the 4th-order operator
};

/// Exponent a with w = |x|^a solving the Mazya operator:
///   a = 2 - n/2 + sqrt(n^2/4 - (n-1)(kappa n + mu)/(nu + 2 kappa + mu)).
/// Requires kappa^2 <= mu*nu (strong ellipticity up to the boundary), a
/// nonzero denominator and a nonnegative radicand.
double mazya_exponent(const MazyaParams& p);

/// Parameter family kappa = n(n-2), mu = n^2, nu = (n-2)^2 + eps.
MazyaParams mazya_eps_params(int n, double eps);

/// Hopf map eta(z1,z2) = (|z1|^2 - |z2|^2, 2 z1 conj(z2)) : R^{2d} -> R^{d+1};
/// |eta(x)| = |x|^2.
Vec hopf_map(const Vec& x, int d);

/// Lawson-Osserman cone map w(x) = (1/2) sqrt((2d+1)/(d-1)) eta(x)/|x|,
/// d in {2,4,8}; positively homogeneous of degree 1. Throws on x = 0.
Vec lawson_osserman(const Vec& x, int d);

double lawson_osserman_prefactor(int d);

/// Selector mini-language: "cartan:<d>", "u5", "u5-printed", "u9",
/// "triality:<d>", "random:<dim>:<seed>", "file:<path>".
CubicForm parse_form_selector(const std::string& selector);

/// Form file schema: {"dim": n, "terms": [{"monomial":[i,j,k],"coeff":c},...]}
CubicForm load_form_json(const std::string& path);
std::string form_to_json(const CubicForm& u);

}  // namespace cubiclab

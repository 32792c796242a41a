#pragma once

#include <cstdint>
#include <vector>

#include "cubiclab/cubic_form.hpp"
#include "cubiclab/parallel.hpp"

namespace cubiclab {

enum class IdempotentOrigin { Newton, Variational };

struct IdempotentRecord {
  Vec c;
  double residual = 0.0;  // |c^2 - c|
  IdempotentOrigin origin = IdempotentOrigin::Newton;
  Vec spectrum;  // eigenvalues of L_c, ascending
  bool primitive = false;           // eigenvalue 1 of L_c simple
  bool extremal = false;            // spectrum(L_c | c-perp) <= 1/2 + 1e-8
  bool square_zero_witness = false; // variational search hit x^2 = 0
};

struct NewtonOptions {
  int n_starts = 64;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-12;
  int max_iter = 80;
  ExecMode mode = ExecMode::Parallel;
};

struct NewtonSearchResult {
  std::vector<IdempotentRecord> records;  // deduplicated, sorted
  int non_converged = 0;
  int converged_to_zero = 0;
};

/// One Newton step for g(x) = x^2 - x with Jacobian 2 L_x - I, solved as a
/// minimum-norm least-squares problem (the Jacobian is exactly singular on
/// idempotent continua, where 1/2 enters the spectrum).
Vec newton_step(const CubicForm& u, const Vec& x);

/// Multistart Newton solve of c^2 = c. Starts are unit-sphere Gaussians
/// scaled onto the idempotent shell by 1/max|spectrum(L_x)|; each start
/// draws its own substream of `seed`, so results are bitwise reproducible
/// at any thread count. The zero solution is excluded and records closer
/// than 10*tol are merged; output is sorted by (residual, coordinates).
NewtonSearchResult newton_search(const CubicForm& u, const NewtonOptions& opts = {});

struct VariationalOptions {
  double tol = 1e-10;   // residual target / square-zero threshold
  int max_iter = 5000;
};

/// Projected-gradient ascent of <x, x^2> on the unit sphere from x0, then a
/// Newton polish of c = x*/<x*^2, x*>. Returns a square_zero_witness record
/// when the stationary point has x^2 ~ 0. Throws ConvergenceFailure if the
/// ascent does not settle within max_iter.
IdempotentRecord variational_search(const CubicForm& u, const Vec& x0,
                                    const VariationalOptions& opts = {});

/// Objective <x, x^2> of the variational problem (6 u(x)).
double variational_objective(const CubicForm& u, const Vec& x);

struct GenericityEntry {
  bool has_half = false;        // 1/2 in spectrum(L_c) within tol
  double dist_half = 0.0;       // min |lambda - 1/2|
  double sigma_min = 0.0;       // smallest singular value of 2 L_c - I
  bool jacobian_singular = false;  // sigma_min <= 2*tol
};

struct GenericityReport {
  std::vector<GenericityEntry> entries;
  bool generic_evidence = false;  // no found idempotent carries 1/2
  bool cross_check_consistent = true;  // has_half == jacobian_singular per record
  double tol = 0.0;
};

/// Flags 1/2 in each record's Peirce spectrum and cross-checks against the
/// singularity of 2 L_c - I.
GenericityReport genericity_report(const CubicForm& u,
                                   const std::vector<IdempotentRecord>& records, double tol);

/// Eigenvalues of L_c restricted to the orthogonal complement of c.
Vec restricted_spectrum(const CubicForm& u, const Vec& c);

}  // namespace cubiclab

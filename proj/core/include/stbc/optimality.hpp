#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stbc/algebra.hpp"
#include "stbc/numerics.hpp"

namespace stbc {

/// Residuals for the unitary trace-orthogonal conditions
///   A_i A_i^H = (n/k) I       (scaled unitarity)
///   Tr(A_i^H A_j) = 0, i != j (trace orthogonality)
/// plus, when available, the Phi criterion and the sufficient conditions on
/// the underlying algebra. Residuals are raw numbers; verdicts compare them
/// against `tolerance`.
struct OptimalityReport {
  double tolerance = kDefaultTolerance;

  std::vector<double> unitary_residuals;
  double max_unitary_residual = 0.0;
  double trace_orthogonality_residual = 0.0;
  bool unitary_pass = false;
  bool trace_orthogonality_pass = false;

  std::optional<double> phi_residual;
  std::optional<bool> phi_pass;

  std::optional<double> cocycle_modulus_residual;
  std::optional<double> basis_orthogonality_residual;
  std::optional<bool> algebra_conditions_pass;

  bool unitary_trace_orthogonal_pass() const noexcept { return unitary_pass && trace_orthogonality_pass; }
  /// True when every criterion that was evaluated passed.
  bool all_pass() const noexcept;
};

OptimalityReport check_unitary_trace_orthogonal(const LinearSTBC& code, double tol = kDefaultTolerance);

/// Phi = sqrt(k/n) [vec(W_0) ... vec(W_{k-1})], columns in weight-index order
/// (basis index fastest). The sqrt(k/n) factor undoes the per-weight power
/// normalization so that an optimal full-rate code gives Phi Phi^H = n I.
CMatrix phi_matrix(const LinearSTBC& code);

struct PhiCheck {
  double residual = 0.0;  // ||Phi Phi^H - n I_{n^2}||_F
  bool passed = false;
};

/// Throws std::invalid_argument unless k = n^2.
PhiCheck check_phi(const LinearSTBC& code, double tol = kDefaultTolerance);

struct AlgebraConditionCheck {
  double modulus_residual = 0.0;                // max ||x| - 1| over sigma_j(t_i), phi
  double basis_orthogonality_residual = 0.0;    // max_{j != j'} |sum_i sigma_j(t_i) conj(sigma_j'(t_i))|
  bool passed = false;
};

AlgebraConditionCheck check_algebra_conditions(const AlgebraSpec& spec, double tol = kDefaultTolerance);

/// Scaled unitarity and trace orthogonality, plus Phi for full-rate codes,
/// plus the algebra conditions when `spec` is given.
OptimalityReport verify_optimality(const LinearSTBC& code, const AlgebraSpec* spec,
                                   double tol = kDefaultTolerance);

class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiversityReport {
  double min_det_modulus = 0.0;
  std::vector<Complex> argmin;  // symbol-difference vector attaining the minimum
  std::uint64_t pairs_examined = 0;
};

inline constexpr std::uint64_t kMinDetBudget = 10'000'000;

/// Distinct values a - b over the constellation, sorted by (re, im). Includes 0.
std::vector<Complex> difference_set(std::span<const Complex> constellation);

/// Exhaustive min |det(sum df_idx W_idx)| over nonzero difference vectors.
/// Work is split over `threads` workers (0 = hardware concurrency); the
/// result, including the argmin (first in enumeration order among exact
/// ties), does not depend on the thread count. Throws BudgetExceededError
/// when |difference set|^k exceeds `budget`.
DiversityReport min_det_diversity(const LinearSTBC& code, std::span<const Complex> constellation,
                                  unsigned threads = 0, std::uint64_t budget = kMinDetBudget);

/// Same quantity over `samples` random nonzero difference vectors. An upper
/// bound on the true minimum.
DiversityReport min_det_sampled(const LinearSTBC& code, std::span<const Complex> constellation,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace stbc

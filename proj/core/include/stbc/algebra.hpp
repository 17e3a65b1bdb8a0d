#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/numerics.hpp"

namespace stbc {

/// n x n table stored row-major.
template <typename T>
class SquareTable {
 public:
  SquareTable() = default;
  explicit SquareTable(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}
  SquareTable(std::size_t n, std::vector<T> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n_ * n_) throw DimensionError("SquareTable: entry count is not n*n");
  }

  std::size_t n() const noexcept { return n_; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const SquareTable&, const SquareTable&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Numerical description of a crossed product algebra (K, G, phi).
///
/// Group elements are indexed 0..n-1 with index 0 the identity.
///   group_table(i, j)      index of sigma_i o sigma_j
///   cocycle(i, j)          phi(sigma_i, sigma_j)
///   basis_embeddings(j, i) sigma_j(t_i); row 0 holds the basis t_i itself
///
/// Cocycle values are assumed to lie in the fixed field, i.e. every Galois
/// action leaves them unchanged. All catalog constructions satisfy this.
struct AlgebraSpec {
  std::size_t n = 0;
  SquareTable<std::size_t> group_table;
  SquareTable<Complex> cocycle;
  SquareTable<Complex> basis_embeddings;

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

enum class ViolationKind {
  kShape,
  kNotAGroup,
  kCocycleCondition,
  kCocycleZero,
  kNonFinite,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double cocycle_residual = 0.0;  // max |phi(s,tg)phi(t,g) - phi(st,g)phi(s,t)|

  bool valid() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const noexcept;
  std::string summary() const;
};

class InvalidSpecError : public std::invalid_argument {
 public:
  explicit InvalidSpecError(const ValidationReport& report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Checks the group axioms and the cocycle identity. Never throws; failures
/// are collected in the report.
ValidationReport validate(const AlgebraSpec& spec, double tol = kDefaultTolerance);

/// P_j: entry (k, l) = phi(sigma_j, sigma_l) when sigma_j sigma_l = sigma_k.
CMatrix permutation_matrix(const AlgebraSpec& spec, std::size_t j);

/// Q_i = diag(sigma_0(t_i), ..., sigma_{n-1}(t_i)).
CMatrix diagonal_matrix(const AlgebraSpec& spec, std::size_t i);

/// Linear dispersion code X = sum_idx f_idx W_idx with k square n x n weights.
///
/// Weights coming from an algebra are flattened as idx = j * n + i, with j
/// the group element and i the basis element.
class LinearSTBC {
 public:
  LinearSTBC() = default;
  LinearSTBC(std::size_t n, double alpha, std::vector<CMatrix> weights);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return weights_.size(); }
  double alpha() const noexcept { return alpha_; }
  bool full_rate() const noexcept { return k() == n_ * n_; }

  const std::vector<CMatrix>& weights() const noexcept { return weights_; }
  const CMatrix& weight(std::size_t idx) const { return weights_.at(idx); }

  static std::size_t weight_index(std::size_t i, std::size_t j, std::size_t n) noexcept {
    return j * n + i;
  }

  friend bool operator==(const LinearSTBC&, const LinearSTBC&) = default;

 private:
  std::size_t n_ = 0;
  double alpha_ = 1.0;
  std::vector<CMatrix> weights_;
};

/// W_{i,j} = P_j Q_i / sqrt(alpha) with alpha = (1/n^2) sum ||P_j Q_i||_F^2,
/// which is n for unit-modulus data. Throws InvalidSpecError if validation
/// fails at `tol`.
LinearSTBC build_stbc(const AlgebraSpec& spec, double tol = kDefaultTolerance);

/// sum_idx symbols[idx] * W_idx. Throws DimensionError on a length mismatch.
CMatrix assemble(const LinearSTBC& code, std::span<const Complex> symbols);

}  // namespace stbc

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stbc {

using Complex = std::complex<double>;

/// Default absolute tolerance for Frobenius-norm residual checks.
inline constexpr double kDefaultTolerance = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major, value semantics.
///
/// Every free function in this header is pure: arguments are taken by const
/// reference and results are returned as new values, so a `const CMatrix`
/// may be shared read-only across threads.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix column(std::span<const Complex> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

  bool all_finite() const noexcept;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale) noexcept;

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);
CMatrix operator*(CMatrix a, Complex s);

/// Standard matrix product. Throws DimensionError when a.cols() != b.rows().
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Conjugate transpose.
CMatrix hermitian(const CMatrix& a);

/// Sum of the diagonal of a square matrix.
Complex trace(const CMatrix& a);

/// tr(a^H b) without forming the product.
Complex trace_inner(const CMatrix& a, const CMatrix& b);

/// Column-stacking vectorization into a (rows*cols) x 1 matrix.
CMatrix vec(const CMatrix& a);

double frobenius_norm(const CMatrix& a);
double frobenius_norm_squared(const CMatrix& a);

/// Solves a*x = b for Hermitian positive definite `a` via Cholesky.
/// Throws NotPositiveDefiniteError when `a` is not Hermitian or a pivot is
/// non-positive.
CMatrix solve_hermitian_positive(const CMatrix& a, const CMatrix& b);

/// Determinant via LU with partial pivoting.
Complex determinant(const CMatrix& a);

struct ScaledUnitaryCheck {
  bool passed = false;
  double residual = 0.0;  // ||a a^H - scale I||_F
};

/// Tests a * a^H == scale * I within `tol` on the Frobenius residual.
ScaledUnitaryCheck is_scaled_unitary(const CMatrix& a, double scale, double tol);

std::string to_string(const CMatrix& a);

}  // namespace stbc

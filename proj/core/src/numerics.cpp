#include "stbc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stbc {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw DimensionError(msg.str());
  }
}

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    std::ostringstream msg;
    msg << op << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("CMatrix: entry count does not match rows*cols");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("CMatrix: ragged initializer list");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::column(std::span<const Complex> values) {
  return {values.size(), 1, std::vector<Complex>(values.begin(), values.end())};
}

bool CMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : entries_) z *= scale;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols() << " * " << b.rows()
        << "x" << b.cols() << ")";
    throw DimensionError(msg.str());
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Complex ail = a(i, l);
      if (ail == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

CMatrix hermitian(const CMatrix& a) {
  CMatrix h(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(j, i) = std::conj(a(i, j));
  return h;
}

Complex trace(const CMatrix& a) {
  require_square(a, "trace");
  Complex sum{};
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

Complex trace_inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "trace_inner");
  Complex sum{};
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) sum += std::conj(ea[i]) * eb[i];
  return sum;
}

CMatrix vec(const CMatrix& a) {
  CMatrix v(a.rows() * a.cols(), 1);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < a.rows(); ++r) v(c * a.rows() + r, 0) = a(r, c);
  return v;
}

double frobenius_norm_squared(const CMatrix& a) {
  double sum = 0.0;
  for (Complex z : a.entries()) sum += std::norm(z);
  return sum;
}

double frobenius_norm(const CMatrix& a) { return std::sqrt(frobenius_norm_squared(a)); }

CMatrix solve_hermitian_positive(const CMatrix& a, const CMatrix& b) {
  require_square(a, "solve_hermitian_positive");
  if (b.rows() != a.rows()) throw DimensionError("solve_hermitian_positive: rhs row count differs");
  const std::size_t n = a.rows();

  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (std::abs(a(i, j) - std::conj(a(j, i))) > 1e-12 * scale) {
        throw NotPositiveDefiniteError("solve_hermitian_positive: matrix is not Hermitian");
      }
    }
  }

  // Lower-triangular Cholesky factor, a = L L^H.
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j).real();
    for (std::size_t p = 0; p < j; ++p) pivot -= std::norm(l(j, p));
    if (!(pivot > 1e-14 * scale)) {
      throw NotPositiveDefiniteError("solve_hermitian_positive: matrix is not positive definite");
    }
    const double d = std::sqrt(pivot);
    l(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * std::conj(l(j, p));
      l(i, j) = s / d;
    }
  }

  CMatrix x = b;
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = x(i, c);
      for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * x(p, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      Complex s = x(ii, c);
      for (std::size_t p = ii + 1; p < n; ++p) s -= std::conj(l(p, ii)) * x(p, c);
      x(ii, c) = s / l(ii, ii);
    }
  }
  return x;
}

Complex determinant(const CMatrix& a) {
  require_square(a, "determinant");
  const std::size_t n = a.rows();
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  CMatrix lu = a;
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == Complex{}) return Complex{};
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

ScaledUnitaryCheck is_scaled_unitary(const CMatrix& a, double scale, double tol) {
  if (!a.is_square()) return {false, std::numeric_limits<double>::infinity()};
  CMatrix gram = matmul(a, hermitian(a));
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= scale;
  const double residual = frobenius_norm(gram);
  return {residual <= tol, residual};
}

std::string to_string(const CMatrix& a) {
  std::ostringstream out;
  out.precision(6);
  out << "[";
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out << (r == 0 ? "[" : " [");
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Complex z = a(r, c);
      out << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
      if (c + 1 < a.cols()) out << ", ";
    }
    out << "]";
    if (r + 1 < a.rows()) out << "\n";
  }
  out << "]";
  return out.str();
}

}  // namespace stbc

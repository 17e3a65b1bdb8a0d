#include "stbc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stbc {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool is_permutation_of_indices(std::span<const std::size_t> values, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (std::size_t v : values) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void check_group(const AlgebraSpec& spec, ValidationReport& report) {
  const std::size_t n = spec.n;
  const auto& g = spec.group_table;
  auto flag = [&](std::string detail) {
    report.violations.push_back({ViolationKind::kNotAGroup, "not a group: " + std::move(detail), 0.0});
  };

  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> row(n), col(n);
    for (std::size_t c = 0; c < n; ++c) {
      row[c] = g(r, c);
      col[c] = g(c, r);
    }
    if (!is_permutation_of_indices(row, n)) {
      flag("row " + std::to_string(r) + " is not a permutation");
      return;
    }
    if (!is_permutation_of_indices(col, n)) {
      flag("column " + std::to_string(r) + " is not a permutation");
      return;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (g(0, i) != i || g(i, 0) != i) {
      flag("index 0 is not the identity");
      return;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g(g(a, b), c) != g(a, g(b, c))) {
          std::ostringstream msg;
          msg << "associativity fails at (" << a << ", " << b << ", " << c << ")";
          flag(msg.str());
          return;
        }
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < n && !has_inverse; ++b) has_inverse = g(a, b) == 0 && g(b, a) == 0;
    if (!has_inverse) {
      flag("element " + std::to_string(a) + " has no two-sided inverse");
      return;
    }
  }
}

void check_cocycle(const AlgebraSpec& spec, double tol, ValidationReport& report) {
  const std::size_t n = spec.n;
  const auto& g = spec.group_table;
  const auto& phi = spec.cocycle;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (phi(a, b) == Complex{}) {
        std::ostringstream msg;
        msg << "phi(" << a << ", " << b << ") is zero";
        report.violations.push_back({ViolationKind::kCocycleZero, msg.str(), 0.0});
        return;
      }

  // phi(s, t g) phi(t, g) = phi(s t, g) g(phi(s, t)), with g acting trivially
  // on cocycle values.
  double worst = 0.0;
  std::size_t ws = 0, wt = 0, wg = 0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t gm = 0; gm < n; ++gm) {
        const Complex lhs = phi(s, g(t, gm)) * phi(t, gm);
        const Complex rhs = phi(g(s, t), gm) * phi(s, t);
        const double r = std::abs(lhs - rhs);
        if (r > worst) {
          worst = r;
          ws = s, wt = t, wg = gm;
        }
      }
  report.cocycle_residual = worst;
  if (worst > tol) {
    std::ostringstream msg;
    msg << "cocycle condition fails, worst at (" << ws << ", " << wt << ", " << wg
        << "), residual " << worst;
    report.violations.push_back({ViolationKind::kCocycleCondition, msg.str(), worst});
  }
}

void require_index(const AlgebraSpec& spec, std::size_t idx, const char* op) {
  if (idx >= spec.n) {
    std::ostringstream msg;
    msg << op << ": index " << idx << " out of range for n = " << spec.n;
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kShape: return "shape";
    case ViolationKind::kNotAGroup: return "not_a_group";
    case ViolationKind::kCocycleCondition: return "cocycle_condition";
    case ViolationKind::kCocycleZero: return "cocycle_zero";
    case ViolationKind::kNonFinite: return "non_finite";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const {
  if (valid()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) out << "; ";
    out << to_string(violations[i].kind) << ": " << violations[i].detail;
  }
  return out.str();
}

InvalidSpecError::InvalidSpecError(const ValidationReport& report)
    : std::invalid_argument("invalid algebra spec: " + report.summary()), report_(report) {}

ValidationReport validate(const AlgebraSpec& spec, double tol) {
  ValidationReport report;
  const std::size_t n = spec.n;
  if (n == 0 || spec.group_table.n() != n || spec.cocycle.n() != n ||
      spec.basis_embeddings.n() != n) {
    report.violations.push_back(
        {ViolationKind::kShape, "tables must all be n x n with n >= 1", 0.0});
    return report;
  }

  const bool all_finite =
      std::all_of(spec.cocycle.data().begin(), spec.cocycle.data().end(), finite) &&
      std::all_of(spec.basis_embeddings.data().begin(), spec.basis_embeddings.data().end(), finite);
  if (!all_finite) {
    report.violations.push_back(
        {ViolationKind::kNonFinite, "cocycle or basis embeddings contain NaN/Inf", 0.0});
    return report;
  }

  check_group(spec, report);
  if (report.has(ViolationKind::kNotAGroup)) return report;
  check_cocycle(spec, tol, report);
  return report;
}

CMatrix permutation_matrix(const AlgebraSpec& spec, std::size_t j) {
  require_index(spec, j, "permutation_matrix");
  CMatrix p(spec.n, spec.n);
  for (std::size_t l = 0; l < spec.n; ++l) p(spec.group_table(j, l), l) = spec.cocycle(j, l);
  return p;
}

CMatrix diagonal_matrix(const AlgebraSpec& spec, std::size_t i) {
  require_index(spec, i, "diagonal_matrix");
  std::vector<Complex> diag(spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) diag[j] = spec.basis_embeddings(j, i);
  return CMatrix::diagonal(diag);
}

LinearSTBC::LinearSTBC(std::size_t n, double alpha, std::vector<CMatrix> weights)
    : n_(n), alpha_(alpha), weights_(std::move(weights)) {
  if (n_ == 0) throw DimensionError("LinearSTBC: n must be positive");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw std::invalid_argument("LinearSTBC: alpha must be positive and finite");
  }
  if (weights_.empty()) throw DimensionError("LinearSTBC: at least one weight matrix required");
  for (const auto& w : weights_) {
    if (w.rows() != n_ || w.cols() != n_) throw DimensionError("LinearSTBC: weights must be n x n");
  }
}

LinearSTBC build_stbc(const AlgebraSpec& spec, double tol) {
  const ValidationReport report = validate(spec, tol);
  if (!report.valid()) throw InvalidSpecError(report);

  const std::size_t n = spec.n;
  std::vector<CMatrix> products(n * n);
  double energy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const CMatrix p = permutation_matrix(spec, j);
    for (std::size_t i = 0; i < n; ++i) {
      CMatrix pq = matmul(p, diagonal_matrix(spec, i));
      energy += frobenius_norm_squared(pq);
      products[LinearSTBC::weight_index(i, j, n)] = std::move(pq);
    }
  }
  const double alpha = energy / static_cast<double>(n * n);
  const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
  for (auto& w : products) w *= inv_sqrt_alpha;
  return {n, alpha, std::move(products)};
}

CMatrix assemble(const LinearSTBC& code, std::span<const Complex> symbols) {
  if (symbols.size() != code.k()) {
    std::ostringstream msg;
    msg << "assemble: expected " << code.k() << " symbols, got " << symbols.size();
    throw DimensionError(msg.str());
  }
  CMatrix x(code.n(), code.n());
  for (std::size_t idx = 0; idx < symbols.size(); ++idx) {
    const Complex f = symbols[idx];
    if (f == Complex{}) continue;
    const auto w = code.weight(idx).entries();
    for (std::size_t e = 0; e < w.size(); ++e) x(e / code.n(), e % code.n()) += f * w[e];
  }
  return x;
}

}  // namespace stbc

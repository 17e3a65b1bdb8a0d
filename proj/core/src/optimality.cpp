#include "stbc/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "stbc/rng.hpp"

namespace stbc {

namespace {

// In-place LU determinant of an n x n row-major buffer.
Complex determinant_in_place(std::span<Complex> a, std::size_t n) {
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) pivot = i;
    if (a[pivot * n + k] == Complex{}) return Complex{};
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

struct MinCandidate {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;

  bool better_than(const MinCandidate& other) const noexcept {
    return value < other.value || (value == other.value && index < other.index);
  }
};

// Evaluates |det| of the codeword difference for difference-vector digits.
class DifferenceEvaluator {
 public:
  DifferenceEvaluator(const LinearSTBC& code, std::span<const Complex> diffs)
      : n_(code.n()), k_(code.k()), diffs_(diffs), scratch_(n_ * n_), symbols_(k_) {
    flat_.reserve(k_ * n_ * n_);
    for (const auto& w : code.weights()) flat_.insert(flat_.end(), w.entries().begin(), w.entries().end());
  }

  double evaluate(std::uint64_t index) {
    const std::uint64_t base = diffs_.size();
    for (std::size_t s = 0; s < k_; ++s) {
      symbols_[s] = diffs_[index % base];
      index /= base;
    }
    return evaluate_symbols(symbols_);
  }

  double evaluate_symbols(std::span<const Complex> symbols) {
    std::fill(scratch_.begin(), scratch_.end(), Complex{});
    const std::size_t nn = n_ * n_;
    for (std::size_t s = 0; s < k_; ++s) {
      const Complex f = symbols[s];
      if (f == Complex{}) continue;
      const Complex* w = flat_.data() + s * nn;
      for (std::size_t e = 0; e < nn; ++e) scratch_[e] += f * w[e];
    }
    return std::abs(determinant_in_place(scratch_, n_));
  }

 private:
  std::size_t n_;
  std::size_t k_;
  std::span<const Complex> diffs_;
  std::vector<Complex> flat_;
  std::vector<Complex> scratch_;
  std::vector<Complex> symbols_;
};

std::vector<Complex> digits_to_symbols(std::uint64_t index, std::span<const Complex> diffs,
                                       std::size_t k) {
  std::vector<Complex> out(k);
  for (std::size_t s = 0; s < k; ++s) {
    out[s] = diffs[index % diffs.size()];
    index /= diffs.size();
  }
  return out;
}

double max_offdiag_trace(const LinearSTBC& code) {
  double worst = 0.0;
  for (std::size_t a = 0; a < code.k(); ++a)
    for (std::size_t b = a + 1; b < code.k(); ++b)
      worst = std::max(worst, std::abs(trace_inner(code.weight(a), code.weight(b))));
  return worst;
}

}  // namespace

bool OptimalityReport::all_pass() const noexcept {
  if (!unitary_trace_orthogonal_pass()) return false;
  if (phi_pass && !*phi_pass) return false;
  if (algebra_conditions_pass && !*algebra_conditions_pass) return false;
  return true;
}

OptimalityReport check_unitary_trace_orthogonal(const LinearSTBC& code, double tol) {
  OptimalityReport report;
  report.tolerance = tol;
  const double scale = static_cast<double>(code.n()) / static_cast<double>(code.k());
  report.unitary_residuals.reserve(code.k());
  for (const auto& w : code.weights()) {
    const double r = is_scaled_unitary(w, scale, tol).residual;
    report.unitary_residuals.push_back(r);
    report.max_unitary_residual = std::max(report.max_unitary_residual, r);
  }
  report.trace_orthogonality_residual = max_offdiag_trace(code);
  report.unitary_pass = report.max_unitary_residual <= tol;
  report.trace_orthogonality_pass = report.trace_orthogonality_residual <= tol;
  return report;
}

CMatrix phi_matrix(const LinearSTBC& code) {
  const std::size_t rows = code.n() * code.n();
  const double scale = std::sqrt(static_cast<double>(code.k()) / static_cast<double>(code.n()));
  CMatrix phi(rows, code.k());
  for (std::size_t idx = 0; idx < code.k(); ++idx) {
    const CMatrix v = vec(code.weight(idx));
    for (std::size_t r = 0; r < rows; ++r) phi(r, idx) = scale * v(r, 0);
  }
  return phi;
}

PhiCheck check_phi(const LinearSTBC& code, double tol) {
  if (!code.full_rate()) {
    std::ostringstream msg;
    msg << "check_phi: defined for full-rate codes only (k = " << code.k()
        << ", n^2 = " << code.n() * code.n() << ")";
    throw std::invalid_argument(msg.str());
  }
  const CMatrix phi = phi_matrix(code);
  CMatrix gram = matmul(phi, hermitian(phi));
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= static_cast<double>(code.n());
  const double residual = frobenius_norm(gram);
  return {residual, residual <= tol};
}

AlgebraConditionCheck check_algebra_conditions(const AlgebraSpec& spec, double tol) {
  AlgebraConditionCheck out;
  const std::size_t n = spec.n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      out.modulus_residual =
          std::max({out.modulus_residual, std::abs(std::abs(spec.basis_embeddings(a, b)) - 1.0),
                    std::abs(std::abs(spec.cocycle(a, b)) - 1.0)});
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t jp = j + 1; jp < n; ++jp) {
      Complex sum{};
      for (std::size_t i = 0; i < n; ++i)
        sum += spec.basis_embeddings(j, i) * std::conj(spec.basis_embeddings(jp, i));
      out.basis_orthogonality_residual = std::max(out.basis_orthogonality_residual, std::abs(sum));
    }
  }
  out.passed = out.modulus_residual <= tol && out.basis_orthogonality_residual <= tol;
  return out;
}

OptimalityReport verify_optimality(const LinearSTBC& code, const AlgebraSpec* spec, double tol) {
  OptimalityReport report = check_unitary_trace_orthogonal(code, tol);
  if (code.full_rate()) {
    const PhiCheck phi = check_phi(code, tol);
    report.phi_residual = phi.residual;
    report.phi_pass = phi.passed;
  }
  if (spec != nullptr) {
    const AlgebraConditionCheck thm = check_algebra_conditions(*spec, tol);
    report.cocycle_modulus_residual = thm.modulus_residual;
    report.basis_orthogonality_residual = thm.basis_orthogonality_residual;
    report.algebra_conditions_pass = thm.passed;
  }
  return report;
}

std::vector<Complex> difference_set(std::span<const Complex> constellation) {
  std::vector<Complex> diffs;
  diffs.reserve(constellation.size() * constellation.size());
  for (Complex a : constellation)
    for (Complex b : constellation) diffs.push_back(a - b);
  const auto lex_less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(diffs.begin(), diffs.end(), lex_less);
  // Collapse values that differ only by rounding.
  std::vector<Complex> unique;
  for (Complex d : diffs) {
    const bool seen = std::any_of(unique.begin(), unique.end(),
                                  [d](Complex u) { return std::abs(u - d) <= 1e-12; });
    if (!seen) unique.push_back(d);
  }
  std::sort(unique.begin(), unique.end(), lex_less);
  return unique;
}

DiversityReport min_det_diversity(const LinearSTBC& code, std::span<const Complex> constellation,
                                  unsigned threads, std::uint64_t budget) {
  if (constellation.size() < 2) throw std::invalid_argument("min_det_diversity: need >= 2 points");
  // Digit 0 must be the zero difference so that index 0 is the all-zero vector.
  std::vector<Complex> diffs = difference_set(constellation);
  std::stable_partition(diffs.begin(), diffs.end(), [](Complex d) { return d == Complex{}; });

  std::uint64_t total = 1;
  for (std::size_t s = 0; s < code.k(); ++s) {
    if (total > budget / diffs.size()) {
      std::ostringstream msg;
      msg << "min_det_diversity: " << diffs.size() << "^" << code.k()
          << " difference vectors exceed the enumeration budget of " << budget
          << "; use sampling mode instead";
      throw BudgetExceededError(msg.str());
    }
    total *= diffs.size();
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t work = total - 1;  // index 0 is the all-zero vector
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(work, 1)));

  std::vector<MinCandidate> partial(threads);
  auto run_range = [&](unsigned t) {
    DifferenceEvaluator eval(code, diffs);
    const std::uint64_t begin = 1 + work * t / threads;
    const std::uint64_t end = 1 + work * (t + 1) / threads;
    MinCandidate best;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const MinCandidate c{eval.evaluate(idx), idx};
      if (c.better_than(best)) best = c;
    }
    partial[t] = best;
  };

  if (threads == 1) {
    run_range(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run_range, t);
  }

  MinCandidate best;
  for (const auto& c : partial)
    if (c.better_than(best)) best = c;

  return {best.value, digits_to_symbols(best.index, diffs, code.k()), work};
}

DiversityReport min_det_sampled(const LinearSTBC& code, std::span<const Complex> constellation,
                                std::uint64_t samples, std::uint64_t seed) {
  if (constellation.size() < 2) throw std::invalid_argument("min_det_sampled: need >= 2 points");
  if (samples == 0) throw std::invalid_argument("min_det_sampled: samples must be positive");
  const std::vector<Complex> diffs = difference_set(constellation);
  DifferenceEvaluator eval(code, diffs);
  SplitMix64 gen(seed);

  DiversityReport report;
  report.min_det_modulus = std::numeric_limits<double>::infinity();
  std::vector<Complex> symbols(code.k());
  std::uint64_t drawn = 0;
  while (drawn < samples) {
    bool nonzero = false;
    for (auto& s : symbols) {
      s = diffs[gen() % diffs.size()];
      nonzero = nonzero || s != Complex{};
    }
    if (!nonzero) continue;
    ++drawn;
    const double v = eval.evaluate_symbols(symbols);
    if (v < report.min_det_modulus) {
      report.min_det_modulus = v;
      report.argmin = symbols;
    }
  }
  report.pairs_examined = drawn;
  return report;
}

}  // namespace stbc

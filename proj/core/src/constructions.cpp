#include "stbc/constructions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace stbc {

namespace {

constexpr double kModulusTolerance = 1e-12;

Complex unit(double arg) { return std::polar(1.0, arg); }

void require_unit_modulus(Complex z, const char* name) {
  if (std::abs(std::abs(z) - 1.0) > kModulusTolerance) {
    std::ostringstream msg;
    msg << name << " must lie on the unit circle (|" << name << "| = " << std::abs(z) << ")";
    throw InvalidParamsError(msg.str());
  }
}

constexpr std::array<std::string_view, 4> kKnownIds = {"cyclic", "cyclic-delta1", "biquadratic",
                                                       "golden"};

}  // namespace

Complex principal_root(Complex z, std::size_t n) {
  if (n == 0) throw InvalidParamsError("principal_root: n must be positive");
  return std::polar(std::pow(std::abs(z), 1.0 / static_cast<double>(n)),
                    std::arg(z) / static_cast<double>(n));
}

Complex primitive_root_of_unity(std::size_t n) {
  return unit(2.0 * std::numbers::pi / static_cast<double>(n));
}

AlgebraSpec cyclic_spec(const CyclicParams& p) {
  if (p.n < 2) throw InvalidParamsError("cyclic_spec: n must be at least 2");
  require_unit_modulus(p.t, "t");
  if (p.delta == Complex{} || !std::isfinite(std::abs(p.delta))) {
    throw InvalidParamsError("cyclic_spec: delta must be finite and nonzero");
  }

  const std::size_t n = p.n;
  AlgebraSpec spec;
  spec.n = n;
  spec.group_table = SquareTable<std::size_t>(n);
  spec.cocycle = SquareTable<Complex>(n);
  spec.basis_embeddings = SquareTable<Complex>(n);

  const Complex tn = principal_root(p.t, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      spec.group_table(i, j) = (i + j) % n;
      spec.cocycle(i, j) = i + j < n ? Complex{1.0, 0.0} : p.delta;
    }
  }
  // sigma^k(t_n^i) = omega^{ik} t_n^i; reduce ik mod n to keep the angle small.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex ti = std::pow(tn, static_cast<double>(i));
    for (std::size_t k = 0; k < n; ++k) {
      const double turns = static_cast<double>((i * k) % n) / static_cast<double>(n);
      spec.basis_embeddings(k, i) = unit(2.0 * std::numbers::pi * turns) * ti;
    }
  }
  return spec;
}

AlgebraSpec biquadratic_spec(const BiquadraticParams& p) {
  require_unit_modulus(p.x, "x");
  require_unit_modulus(p.y, "y");
  require_unit_modulus(p.delta1, "delta1");
  require_unit_modulus(p.delta2, "delta2");

  constexpr std::size_t n = 4;
  auto has_x = [](std::size_t g) { return (g & 2u) != 0; };
  auto has_y = [](std::size_t g) { return (g & 1u) != 0; };

  AlgebraSpec spec;
  spec.n = n;
  spec.group_table = SquareTable<std::size_t>(n);
  spec.cocycle = SquareTable<Complex>(n);
  spec.basis_embeddings = SquareTable<Complex>(n);

  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      spec.group_table(g, h) = g ^ h;
      Complex phi{1.0, 0.0};
      if (has_x(g) && has_x(h)) phi *= p.delta1;
      if (has_y(g) && has_y(h)) phi *= p.delta2;
      spec.cocycle(g, h) = phi;
    }
  }

  const Complex sx = principal_root(p.x, 2);
  const Complex sy = principal_root(p.y, 2);
  const std::array<Complex, n> basis = {Complex{1.0, 0.0}, sx, sy, sx * sy};
  // Basis element i carries sqrt x when i is 1 or 3 and sqrt y when i is 2 or 3.
  auto carries_sqrt_x = [](std::size_t i) { return i == 1 || i == 3; };
  auto carries_sqrt_y = [](std::size_t i) { return i == 2 || i == 3; };
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t i = 0; i < n; ++i) {
      double sign = 1.0;
      if (has_x(g) && carries_sqrt_x(i)) sign = -sign;
      if (has_y(g) && carries_sqrt_y(i)) sign = -sign;
      spec.basis_embeddings(g, i) = sign * basis[i];
    }
  }
  return spec;
}

LinearSTBC golden_code() {
  const double s5 = std::sqrt(5.0);
  const double theta = (1.0 + s5) / 2.0;
  const double theta_bar = (1.0 - s5) / 2.0;
  const Complex a{1.0, 1.0 - theta};
  const Complex a_bar{1.0, 1.0 - theta_bar};
  const Complex j{0.0, 1.0};
  const double norm = 1.0 / s5;

  std::vector<CMatrix> w;
  w.push_back(norm * CMatrix{{a, 0.0}, {0.0, a_bar}});
  w.push_back(norm * CMatrix{{a * theta, 0.0}, {0.0, a_bar * theta_bar}});
  w.push_back(norm * CMatrix{{0.0, a}, {j * a_bar, 0.0}});
  w.push_back(norm * CMatrix{{0.0, a * theta}, {j * a_bar * theta_bar, 0.0}});
  return {2, 5.0, std::move(w)};
}

CyclicParams default_transcendentals(std::size_t n) {
  if (n < 2) throw InvalidParamsError("default_transcendentals: n must be at least 2");
  return {n, unit(1.0), unit(std::sqrt(5.0))};
}

BiquadraticParams default_biquadratic_params() {
  return {unit(1.0), unit(std::sqrt(2.0)), unit(std::sqrt(3.0)), unit(std::sqrt(5.0))};
}

std::span<const std::string_view> known_code_ids() { return kKnownIds; }

CatalogCode make_code(const CodeSpec& request, double tol) {
  if (request.id == "cyclic" || request.id == "cyclic-delta1") {
    CyclicParams p = request.cyclic;
    p.n = request.n;
    if (request.id == "cyclic-delta1") p.delta = 1.0;
    AlgebraSpec spec = cyclic_spec(p);
    LinearSTBC code = build_stbc(spec, tol);
    return {request.id, std::move(code), std::move(spec)};
  }
  if (request.id == "biquadratic") {
    AlgebraSpec spec = biquadratic_spec(request.biquadratic);
    LinearSTBC code = build_stbc(spec, tol);
    return {request.id, std::move(code), std::move(spec)};
  }
  if (request.id == "golden") return {request.id, golden_code(), std::nullopt};

  std::ostringstream msg;
  msg << "unknown code id '" << request.id << "'; known ids:";
  for (auto id : kKnownIds) msg << " " << id;
  throw UnknownCodeError(msg.str());
}

}  // namespace stbc

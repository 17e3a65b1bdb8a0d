#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "stbc/algebra.hpp"
#include "stbc/numerics.hpp"

namespace stbc {

class InvalidParamsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownCodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cyclic algebra (K, sigma, delta) with K = F(t^{1/n}) and
/// sigma: t_n -> omega_n t_n.
struct CyclicParams {
  std::size_t n = 2;
  Complex t{1.0, 0.0};      // |t| = 1
  Complex delta{1.0, 0.0};  // z^n = delta
};

/// Biquadratic extension F(sqrt x, sqrt y) with Klein four Galois group.
struct BiquadraticParams {
  Complex x{1.0, 0.0};
  Complex y{1.0, 0.0};
  Complex delta1{1.0, 0.0};
  Complex delta2{1.0, 0.0};
};

/// Principal branch: |z|^{1/n} e^{j arg(z)/n}, arg in (-pi, pi].
Complex principal_root(Complex z, std::size_t n);

/// e^{2 pi j / n}.
Complex primitive_root_of_unity(std::size_t n);

/// Cyclic group Z_n, phi(sigma^i, sigma^j) = 1 if i + j < n else delta,
/// basis t_i = t_n^i with sigma^k(t_n^i) = omega_n^{ik} t_n^i.
AlgebraSpec cyclic_spec(const CyclicParams& p);

/// Klein four-group ordered (1, sigma_y, sigma_x, sigma_x sigma_y), so that
/// element index = 2a + b for sigma_x^a sigma_y^b. Basis (1, sqrt x, sqrt y,
/// sqrt x sqrt y). phi(g, h) = delta1^{[x in g and x in h]} delta2^{[y in g
/// and y in h]}.
AlgebraSpec biquadratic_spec(const BiquadraticParams& p);

/// Golden code with its four explicit weight matrices (n = 2, k = 4).
LinearSTBC golden_code();

/// t = e^{j}, delta = e^{j sqrt 5} for every n >= 2.
CyclicParams default_transcendentals(std::size_t n);

/// x = e^{j}, y = e^{j sqrt 2}, delta1 = e^{j sqrt 3}, delta2 = e^{j sqrt 5}.
BiquadraticParams default_biquadratic_params();

/// String-addressable catalog request, as accepted by the CLI and config files.
struct CodeSpec {
  std::string id = "cyclic";
  std::size_t n = 2;
  CyclicParams cyclic = default_transcendentals(2);
  BiquadraticParams biquadratic = default_biquadratic_params();
};

struct CatalogCode {
  std::string id;
  LinearSTBC code;
  std::optional<AlgebraSpec> spec;  // absent for codes given as raw weights
};

/// Known ids: "cyclic", "cyclic-delta1", "biquadratic", "golden".
std::span<const std::string_view> known_code_ids();

/// Builds a catalog code. Throws UnknownCodeError naming the known ids.
CatalogCode make_code(const CodeSpec& spec, double tol = kDefaultTolerance);

}  // namespace stbc

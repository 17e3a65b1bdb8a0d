#include "stbc/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace stbc {

namespace {

std::size_t gray_to_binary(std::size_t g) {
  std::size_t b = g;
  for (std::size_t shift = 1; (g >> shift) != 0; ++shift) b ^= g >> shift;
  return b;
}

}  // namespace

Constellation Constellation::qam(std::size_t order) {
  std::size_t bits = 0;
  switch (order) {
    case 4: bits = 2; break;
    case 16: bits = 4; break;
    case 64: bits = 6; break;
    case 256: bits = 8; break;
    default: throw std::invalid_argument("Constellation::qam: order must be 4, 16, 64 or 256");
  }
  const std::size_t axis_bits = bits / 2;
  const std::size_t levels = std::size_t{1} << axis_bits;
  const std::size_t axis_mask = levels - 1;
  // Mean energy of the unscaled grid {+-1, +-3, ...}^2 is 2 (L^2 - 1) / 3.
  const double scale =
      1.0 / std::sqrt(2.0 * static_cast<double>(levels * levels - 1) / 3.0);

  auto amplitude = [&](std::size_t gray) {
    const auto position = static_cast<double>(gray_to_binary(gray));
    return static_cast<double>(levels - 1) - 2.0 * position;
  };

  std::vector<Complex> points(order);
  for (std::size_t label = 0; label < order; ++label) {
    const std::size_t quad = (label >> axis_bits) & axis_mask;
    const std::size_t inphase = label & axis_mask;
    points[label] = scale * Complex{amplitude(inphase), amplitude(quad)};
  }
  return {order == 4 ? "qpsk" : "qam" + std::to_string(order), bits, std::move(points)};
}

Constellation Constellation::from_name(const std::string& name) {
  if (name == "qpsk" || name == "qam4") return qpsk();
  if (name == "qam16" || name == "16qam") return qam(16);
  if (name == "qam64" || name == "64qam") return qam(64);
  if (name == "qam256" || name == "256qam") return qam(256);
  throw std::invalid_argument("unknown constellation '" + name +
                              "'; known: qpsk, qam16, qam64, qam256");
}

std::vector<Complex> Constellation::scaled_points(double rho) const {
  if (!(rho > 0.0)) throw std::invalid_argument("Constellation: rho must be positive");
  const double s = std::sqrt(rho);
  std::vector<Complex> out(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) out[i] = s * points_[i];
  return out;
}

std::size_t Constellation::label(std::span<const std::uint8_t> bits) const {
  if (bits.size() != bits_per_symbol_) throw std::invalid_argument("Constellation::label: bit count");
  std::size_t value = 0;
  for (std::uint8_t b : bits) value = (value << 1) | (b & 1u);
  return value;
}

void Constellation::bits_of(std::size_t label, std::span<std::uint8_t> out) const {
  if (out.size() != bits_per_symbol_) throw std::invalid_argument("Constellation::bits_of: bit count");
  for (std::size_t i = 0; i < bits_per_symbol_; ++i)
    out[i] = static_cast<std::uint8_t>((label >> (bits_per_symbol_ - 1 - i)) & 1u);
}

std::size_t Constellation::nearest(Complex z, std::span<const Complex> scaled) noexcept {
  std::size_t best = 0;
  double best_d = std::norm(z - scaled[0]);
  for (std::size_t i = 1; i < scaled.size(); ++i) {
    const double d = std::norm(z - scaled[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace stbc

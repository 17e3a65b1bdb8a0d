#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stbc/numerics.hpp"

namespace stbc {

/// Square Gray-labelled QAM with unit average energy.
///
/// Point index == integer label of its bits, most significant bit first.
/// The first half of the label selects the quadrature level, the second half
/// the in-phase level, each Gray coded with 0 mapping to the positive edge.
/// For QPSK this gives 00 -> 1+j, 01 -> -1+j, 11 -> -1-j, 10 -> 1-j (before
/// scaling by 1/sqrt 2).
class Constellation {
 public:
  /// order must be 4, 16, 64 or 256.
  static Constellation qam(std::size_t order);
  static Constellation qpsk() { return qam(4); }
  /// Accepts "qpsk", "qam4", "qam16", "16qam", "qam64", "64qam", "qam256", "256qam".
  static Constellation from_name(const std::string& name);

  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return points_.size(); }
  std::size_t bits_per_symbol() const noexcept { return bits_per_symbol_; }

  /// Unit-average-energy points, indexed by label.
  std::span<const Complex> points() const noexcept { return points_; }
  /// Points scaled to average energy rho.
  std::vector<Complex> scaled_points(double rho) const;

  /// Label of the symbol encoded by `bits` (bits_per_symbol values, 0/1).
  std::size_t label(std::span<const std::uint8_t> bits) const;
  /// Writes the bits of `label` into `out` (bits_per_symbol values).
  void bits_of(std::size_t label, std::span<std::uint8_t> out) const;

  /// Index of the closest point in `scaled`; ties go to the lowest index.
  static std::size_t nearest(Complex z, std::span<const Complex> scaled) noexcept;

 private:
  Constellation(std::string name, std::size_t bits_per_symbol, std::vector<Complex> points)
      : name_(std::move(name)), bits_per_symbol_(bits_per_symbol), points_(std::move(points)) {}

  std::string name_;
  std::size_t bits_per_symbol_ = 0;
  std::vector<Complex> points_;
};

}  // namespace stbc

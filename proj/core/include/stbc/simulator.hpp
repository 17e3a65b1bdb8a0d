#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stbc/algebra.hpp"
#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/numerics.hpp"
#include "stbc/rng.hpp"

namespace stbc {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// k symbols of one codeword together with the bits they carry.
struct SymbolFrame {
  std::vector<Complex> symbols;
  std::vector<std::uint8_t> bits;
};

/// Gray-maps `bits` onto the constellation scaled to average energy rho.
/// Throws std::invalid_argument if the bit count is not a multiple of
/// bits_per_symbol.
SymbolFrame map_bits(std::span<const std::uint8_t> bits, const Constellation& constellation,
                     double rho);

/// Quasi-static channel for one codeword: Y = H X + N with m x n H and N,
/// entries i.i.d. CN(0, 1).
struct ChannelRealization {
  CMatrix h;
  CMatrix noise;
};

ChannelRealization draw_channel(SplitMix64& gen, std::size_t m, std::size_t n);

/// Y = H * assemble(code, frame.symbols) + N.
CMatrix transmit(const LinearSTBC& code, const SymbolFrame& frame, const ChannelRealization& chan);

/// J = (H^H H + I / rho)^{-1} H^H, computed through a Hermitian solve.
CMatrix mmse_filter(const CMatrix& h, double rho);

struct DecodeResult {
  std::vector<Complex> estimates;   // tr(W_idx^H J Y)
  std::vector<std::size_t> labels;  // hard decisions
  std::vector<std::uint8_t> bits;
  std::uint64_t decision_ops = 0;   // distance evaluations, k * |constellation|
};

/// Symbol-by-symbol linear MMSE decoder: soft estimate per weight, then the
/// nearest point of the constellation scaled to energy rho.
DecodeResult decode(const LinearSTBC& code, const CMatrix& j, const CMatrix& y,
                    const Constellation& constellation, double rho);

struct SimConfig {
  CodeSpec code;
  std::size_t m = 4;
  std::string constellation = "qpsk";
  std::vector<double> snr_grid_db{0, 4, 8, 12, 16, 20, 24};
  std::uint64_t trials_per_point = 10'000;
  std::uint64_t seed = 1;
  std::size_t slope_fit_points = 3;
  std::uint64_t slope_min_errors = 10;  // points with fewer bit errors are left out of the fit
  unsigned threads = 1;  // 0 = hardware concurrency; results do not depend on it

  /// Throws ConfigError (m >= n, trials >= 1, strictly increasing grid).
  void validate(std::size_t n) const;
};

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t bit_errors = 0;
  std::uint64_t bits = 0;
  std::uint64_t symbol_errors = 0;
  std::uint64_t symbols = 0;
  double ber = 0.0;
  double ser = 0.0;
  double std_error = 0.0;  // sqrt(ber (1 - ber) / bits)
};

/// Monte Carlo BER/SER over the SNR grid, one independent codeword, channel
/// and noise draw per trial. Trial t of grid point p draws from the stream
/// seeded with substream_seed(seed, p, t), so the output is a function of the
/// config alone, whatever the thread count.
std::vector<BerPoint> run_ber(const LinearSTBC& code, const SimConfig& cfg);
std::vector<BerPoint> run_ber(const SimConfig& cfg);

/// Least-squares slope of -log10(BER) against snr_db / 10 over the last
/// `fit_count` points with at least `min_bit_errors` (and at least one) bit
/// errors. Throws std::invalid_argument when fewer such points exist.
double diversity_slope(std::span<const BerPoint> points, std::size_t fit_count,
                       std::uint64_t min_bit_errors = 1);

}  // namespace stbc

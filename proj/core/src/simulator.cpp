#include "stbc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace stbc {

namespace {

struct Counts {
  std::uint64_t bit_errors = 0;
  std::uint64_t symbol_errors = 0;
};

// One full trial: draw bits, channel and noise from `gen`, encode, decode.
class TrialRunner {
 public:
  TrialRunner(const LinearSTBC& code, const Constellation& constellation, std::size_t m)
      : code_(code), constellation_(constellation), m_(m),
        bits_(code.k() * constellation.bits_per_symbol()) {}

  Counts run(SplitMix64& gen, double rho) {
    std::uint64_t word = 0;
    unsigned available = 0;
    for (auto& b : bits_) {
      if (available == 0) {
        word = gen();
        available = 64;
      }
      b = static_cast<std::uint8_t>(word & 1u);
      word >>= 1;
      --available;
    }
    const SymbolFrame frame = map_bits(bits_, constellation_, rho);
    const ChannelRealization chan = draw_channel(gen, m_, code_.n());
    const CMatrix y = transmit(code_, frame, chan);
    const CMatrix j = mmse_filter(chan.h, rho);
    const DecodeResult out = decode(code_, j, y, constellation_, rho);

    Counts c;
    const std::size_t bps = constellation_.bits_per_symbol();
    for (std::size_t s = 0; s < code_.k(); ++s) {
      bool symbol_wrong = false;
      for (std::size_t b = 0; b < bps; ++b) {
        if (out.bits[s * bps + b] != frame.bits[s * bps + b]) {
          ++c.bit_errors;
          symbol_wrong = true;
        }
      }
      c.symbol_errors += symbol_wrong ? 1 : 0;
    }
    return c;
  }

 private:
  const LinearSTBC& code_;
  const Constellation& constellation_;
  std::size_t m_;
  std::vector<std::uint8_t> bits_;
};

}  // namespace

SymbolFrame map_bits(std::span<const std::uint8_t> bits, const Constellation& constellation,
                     double rho) {
  const std::size_t bps = constellation.bits_per_symbol();
  if (bits.size() % bps != 0) {
    std::ostringstream msg;
    msg << "map_bits: " << bits.size() << " bits is not a multiple of " << bps;
    throw std::invalid_argument(msg.str());
  }
  if (!(rho > 0.0)) throw std::invalid_argument("map_bits: rho must be positive");
  const double scale = std::sqrt(rho);

  SymbolFrame frame;
  frame.bits.assign(bits.begin(), bits.end());
  frame.symbols.reserve(bits.size() / bps);
  for (std::size_t s = 0; s < bits.size(); s += bps) {
    const std::size_t label = constellation.label(bits.subspan(s, bps));
    frame.symbols.push_back(scale * constellation.points()[label]);
  }
  return frame;
}

ChannelRealization draw_channel(SplitMix64& gen, std::size_t m, std::size_t n) {
  ChannelRealization chan{CMatrix(m, n), CMatrix(m, n)};
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) chan.h(r, c) = complex_gaussian(gen);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) chan.noise(r, c) = complex_gaussian(gen);
  return chan;
}

CMatrix transmit(const LinearSTBC& code, const SymbolFrame& frame, const ChannelRealization& chan) {
  if (chan.h.cols() != code.n() || chan.noise.rows() != chan.h.rows() ||
      chan.noise.cols() != code.n()) {
    throw DimensionError("transmit: channel dimensions do not match the code");
  }
  return matmul(chan.h, assemble(code, frame.symbols)) + chan.noise;
}

CMatrix mmse_filter(const CMatrix& h, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("mmse_filter: rho must be positive");
  const CMatrix hh = hermitian(h);
  CMatrix gram = matmul(hh, h);
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) += 1.0 / rho;
  return solve_hermitian_positive(gram, hh);
}

DecodeResult decode(const LinearSTBC& code, const CMatrix& j, const CMatrix& y,
                    const Constellation& constellation, double rho) {
  const CMatrix z = matmul(j, y);
  if (z.rows() != code.n() || z.cols() != code.n()) {
    throw DimensionError("decode: J Y must be n x n");
  }
  const std::vector<Complex> scaled = constellation.scaled_points(rho);
  const std::size_t bps = constellation.bits_per_symbol();

  DecodeResult out;
  out.estimates.resize(code.k());
  out.labels.resize(code.k());
  out.bits.resize(code.k() * bps);
  for (std::size_t idx = 0; idx < code.k(); ++idx) {
    const Complex est = trace_inner(code.weight(idx), z);
    const std::size_t label = Constellation::nearest(est, scaled);
    out.estimates[idx] = est;
    out.labels[idx] = label;
    constellation.bits_of(label, std::span(out.bits).subspan(idx * bps, bps));
    out.decision_ops += scaled.size();
  }
  return out;
}

void SimConfig::validate(std::size_t n) const {
  if (m < n) {
    std::ostringstream msg;
    msg << "receive antennas m = " << m << " must be at least n = " << n
        << " for linear MMSE reception (otherwise the error rate floors)";
    throw ConfigError(msg.str());
  }
  if (trials_per_point < 1) throw ConfigError("trials_per_point must be at least 1");
  if (snr_grid_db.empty()) throw ConfigError("SNR grid is empty");
  for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
    if (!std::isfinite(snr_grid_db[i])) throw ConfigError("SNR grid contains a non-finite value");
    if (i > 0 && !(snr_grid_db[i] > snr_grid_db[i - 1])) {
      throw ConfigError("SNR grid must be strictly increasing");
    }
  }
  if (slope_fit_points < 2) throw ConfigError("slope_fit_points must be at least 2");
  if (slope_min_errors < 1) throw ConfigError("slope_min_errors must be at least 1");
}

std::vector<BerPoint> run_ber(const LinearSTBC& code, const SimConfig& cfg) {
  cfg.validate(code.n());
  const Constellation constellation = Constellation::from_name(cfg.constellation);

  unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials_per_point));

  std::vector<BerPoint> points;
  points.reserve(cfg.snr_grid_db.size());
  for (std::size_t p = 0; p < cfg.snr_grid_db.size(); ++p) {
    const double rho = std::pow(10.0, cfg.snr_grid_db[p] / 10.0);
    std::vector<Counts> partial(threads);

    auto worker = [&](unsigned t) {
      TrialRunner runner(code, constellation, cfg.m);
      const std::uint64_t begin = cfg.trials_per_point * t / threads;
      const std::uint64_t end = cfg.trials_per_point * (t + 1) / threads;
      Counts acc;
      for (std::uint64_t trial = begin; trial < end; ++trial) {
        SplitMix64 gen(substream_seed(cfg.seed, p, trial));
        const Counts c = runner.run(gen, rho);
        acc.bit_errors += c.bit_errors;
        acc.symbol_errors += c.symbol_errors;
      }
      partial[t] = acc;
    };

    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    BerPoint pt;
    pt.snr_db = cfg.snr_grid_db[p];
    for (const auto& c : partial) {
      pt.bit_errors += c.bit_errors;
      pt.symbol_errors += c.symbol_errors;
    }
    pt.symbols = cfg.trials_per_point * code.k();
    pt.bits = pt.symbols * constellation.bits_per_symbol();
    pt.ber = static_cast<double>(pt.bit_errors) / static_cast<double>(pt.bits);
    pt.ser = static_cast<double>(pt.symbol_errors) / static_cast<double>(pt.symbols);
    pt.std_error = std::sqrt(pt.ber * (1.0 - pt.ber) / static_cast<double>(pt.bits));
    points.push_back(pt);
  }
  return points;
}

std::vector<BerPoint> run_ber(const SimConfig& cfg) {
  const CatalogCode built = make_code(cfg.code);
  return run_ber(built.code, cfg);
}

double diversity_slope(std::span<const BerPoint> points, std::size_t fit_count,
                       std::uint64_t min_bit_errors) {
  if (fit_count < 2) throw std::invalid_argument("diversity_slope: fit_count must be at least 2");
  min_bit_errors = std::max<std::uint64_t>(min_bit_errors, 1);
  std::vector<const BerPoint*> usable;
  for (const auto& p : points)
    if (p.bit_errors >= min_bit_errors && p.ber > 0.0) usable.push_back(&p);
  if (usable.size() < fit_count) {
    std::ostringstream msg;
    msg << "diversity_slope: need " << fit_count << " points with at least " << min_bit_errors
        << " bit errors, have " << usable.size();
    throw std::invalid_argument(msg.str());
  }
  const auto first = usable.end() - static_cast<std::ptrdiff_t>(fit_count);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto it = first; it != usable.end(); ++it) {
    const double x = (*it)->snr_db / 10.0;
    const double y = -std::log10((*it)->ber);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double cnt = static_cast<double>(fit_count);
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("diversity_slope: degenerate SNR abscissae");
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace stbc

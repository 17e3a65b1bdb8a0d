#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stbc/constellation.hpp"
#include "stbc/constructions.hpp"
#include "stbc/optimality.hpp"
#include "stbc/serialization.hpp"
#include "stbc/simulator.hpp"

namespace stbc::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

struct CodeOptions {
  std::string id;
  std::size_t n = 2;
  double t_re = 1.0, t_im = 0.0, t_arg = 0.0, delta_arg = 0.0;
  double x_arg = 0.0, y_arg = 0.0, delta1_arg = 0.0, delta2_arg = 0.0;

  CLI::Option* id_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* t_re_opt = nullptr;
  CLI::Option* t_im_opt = nullptr;
  CLI::Option* t_arg_opt = nullptr;
  CLI::Option* delta_arg_opt = nullptr;
  CLI::Option* x_opt = nullptr;
  CLI::Option* y_opt = nullptr;
  CLI::Option* delta1_opt = nullptr;
  CLI::Option* delta2_opt = nullptr;

  void attach(CLI::App& app) {
    id_opt = app.add_option("--code", id, "Code id: cyclic, cyclic-delta1, biquadratic, golden");
    n_opt = app.add_option("--n", n, "Transmit antennas of a cyclic code")->check(CLI::Range(2, 64));
    t_re_opt = app.add_option("--t-re", t_re, "Real part of t (|t| = 1)");
    t_im_opt = app.add_option("--t-im", t_im, "Imaginary part of t");
    t_re_opt->needs(t_im_opt);
    t_im_opt->needs(t_re_opt);
    t_arg_opt = app.add_option("--t-arg", t_arg, "t = exp(j * ARG)")->excludes(t_re_opt)->excludes(t_im_opt);
    delta_arg_opt = app.add_option("--delta-arg", delta_arg, "delta = exp(j * ARG)");
    x_opt = app.add_option("--x-arg", x_arg, "Biquadratic x = exp(j * ARG)");
    y_opt = app.add_option("--y-arg", y_arg, "Biquadratic y = exp(j * ARG)");
    delta1_opt = app.add_option("--delta1-arg", delta1_arg, "Biquadratic delta1 = exp(j * ARG)");
    delta2_opt = app.add_option("--delta2-arg", delta2_arg, "Biquadratic delta2 = exp(j * ARG)");
  }

  void apply(CodeSpec& spec) const {
    if (given(id_opt)) spec.id = id;
    if (given(n_opt)) spec.n = n;
    if (given(t_re_opt)) spec.cyclic.t = {t_re, t_im};
    if (given(t_arg_opt)) spec.cyclic.t = std::polar(1.0, t_arg);
    if (given(delta_arg_opt)) spec.cyclic.delta = std::polar(1.0, delta_arg);
    if (given(x_opt)) spec.biquadratic.x = std::polar(1.0, x_arg);
    if (given(y_opt)) spec.biquadratic.y = std::polar(1.0, y_arg);
    if (given(delta1_opt)) spec.biquadratic.delta1 = std::polar(1.0, delta1_arg);
    if (given(delta2_opt)) spec.biquadratic.delta2 = std::polar(1.0, delta2_arg);
  }
};

struct SimOptions {
  std::size_t m = 4;
  double snr_start = 0.0, snr_stop = 0.0, snr_step = 0.0;
  std::uint64_t trials = 0;
  std::size_t fit_points = 3;
  std::uint64_t min_errors = 10;

  CLI::Option* m_opt = nullptr;
  CLI::Option* start_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* fit_opt = nullptr;
  CLI::Option* min_errors_opt = nullptr;

  void attach(CLI::App& app) {
    m_opt = app.add_option("--m", m, "Receive antennas");
    start_opt = app.add_option("--snr-start", snr_start, "First SNR point in dB");
    stop_opt = app.add_option("--snr-stop", snr_stop, "Last SNR point in dB (inclusive)");
    step_opt = app.add_option("--snr-step", snr_step, "SNR step in dB");
    trials_opt = app.add_option("--trials", trials, "Codewords per SNR point");
    fit_opt = app.add_option("--fit-points", fit_points, "Points used by the slope fit");
    min_errors_opt = app.add_option("--min-errors", min_errors, "Bit errors a point needs to enter the slope fit");
  }

  void apply(SimConfig& cfg) const {
    if (given(m_opt)) cfg.m = m;
    if (given(trials_opt)) cfg.trials_per_point = trials;
    if (given(fit_opt)) cfg.slope_fit_points = fit_points;
    if (given(min_errors_opt)) cfg.slope_min_errors = min_errors;
    if (given(start_opt) || given(stop_opt) || given(step_opt)) {
      const auto& old = cfg.snr_grid_db;
      const double start = given(start_opt) ? snr_start : (old.empty() ? 0.0 : old.front());
      const double stop = given(stop_opt) ? snr_stop : (old.empty() ? start : old.back());
      const double step = given(step_opt) ? snr_step : (old.size() > 1 ? old[1] - old[0] : 4.0);
      if (!(step > 0.0)) throw UsageError("--snr-step must be positive");
      if (stop < start) throw UsageError("--snr-stop must not be below --snr-start");
      std::vector<double> grid;
      for (std::size_t i = 0;; ++i) {
        const double v = start + static_cast<double>(i) * step;
        if (v > stop + 1e-9 * step) break;
        grid.push_back(v);
      }
      cfg.snr_grid_db = std::move(grid);
    }
  }
};

// Shared per-subcommand state.
struct Common {
  std::string config_path;
  std::string out_path;
  std::string format;
  double tol = kDefaultTolerance;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string constellation;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* constellation_opt = nullptr;
  CLI::Option* format_opt = nullptr;

  CodeOptions code;
};

// `randomized` adds the flags of commands that draw random numbers.
void attach_common(CLI::App& app, Common& c, bool randomized) {
  app.add_option("--config", c.config_path, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  app.add_option("--out", c.out_path, "Output file (default: standard output)");
  c.format_opt = app.add_option("--format", c.format, "Output format: json or csv")
                     ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", c.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  if (randomized) {
    c.seed_opt = app.add_option("--seed", c.seed, std::string("RNG seed (default from ") + kSeedEnv + " or 1)");
    c.threads_opt = app.add_option("--threads", c.threads, "Worker threads (0 = all cores); output does not depend on it");
    c.constellation_opt =
        app.add_option("--constellation", c.constellation, "qpsk, qam16, qam64 or qam256");
  }
  c.code.attach(app);
}

std::uint64_t env_seed() {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr || *raw == '\0') return 1;
  std::uint64_t v = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError(std::string(kSeedEnv) + " must be an unsigned integer, got '" + raw + "'");
  }
  return v;
}

// Defaults, then the config file, then flags.
SimConfig resolve_config(const Common& c, const SimOptions* sim) {
  SimConfig cfg;
  cfg.seed = env_seed();
  if (!c.config_path.empty()) cfg = sim_config_from_json(read_json_file(c.config_path), cfg);
  c.code.apply(cfg.code);
  if (given(c.seed_opt)) cfg.seed = c.seed;
  if (given(c.threads_opt)) cfg.threads = c.threads;
  if (given(c.constellation_opt)) cfg.constellation = c.constellation;
  if (sim != nullptr) sim->apply(cfg);
  return cfg;
}

void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + path + "'");
  write(file);
}

void emit_json(const std::string& path, std::ostream& out, const Json& j) {
  emit(path, out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
}

void require_json(const Common& c, const char* command) {
  if (given(c.format_opt) && c.format != "json") {
    throw UsageError(std::string(command) + " writes JSON only");
  }
}

std::string sidecar_path(const std::string& out_path) {
  std::filesystem::path p(out_path);
  std::filesystem::path side = p;
  side.replace_extension(".json");
  if (side == p) side += ".json";
  return side.string();
}

std::optional<double> try_slope(const std::vector<BerPoint>& points, const SimConfig& cfg,
                                std::string& note) {
  try {
    return diversity_slope(points, cfg.slope_fit_points, cfg.slope_min_errors);
  } catch (const std::invalid_argument& e) {
    note = e.what();
    return std::nullopt;
  }
}

Json slope_json(const std::optional<double>& slope) { return slope ? Json(*slope) : Json(nullptr); }

void report_slope(std::ostream& err, const std::string& label, const std::optional<double>& slope,
                  const std::string& note) {
  if (slope) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", *slope);
    err << label << ": diversity slope " << buf << '\n';
  } else {
    err << label << ": diversity slope unavailable (" << note << ")\n";
  }
}

int cmd_construct(const Common& c, std::ostream& out) {
  require_json(c, "construct");
  const SimConfig cfg = resolve_config(c, nullptr);
  const CatalogCode code = make_code(cfg.code, c.tol);
  emit_json(c.out_path, out, catalog_code_to_json(code));
  return kSuccess;
}

int cmd_verify(const Common& c, const std::string& input, std::ostream& out, std::ostream& err) {
  require_json(c, "verify");
  CatalogCode code;
  if (!input.empty()) {
    code = catalog_code_from_json(read_json_file(input));
  } else {
    const SimConfig cfg = resolve_config(c, nullptr);
    try {
      code = make_code(cfg.code);
    } catch (const InvalidSpecError& e) {
      err << "verify " << cfg.code.id << ": FAIL (" << e.what() << ")\n";
      return kVerificationFailure;
    }
  }

  Json report = {{"code", code.id}, {"n", code.code.n()}, {"k", code.code.k()}, {"tolerance", c.tol}};
  bool ok = true;
  if (code.spec) {
    const ValidationReport v = validate(*code.spec, c.tol);
    report["algebra"] = validation_report_to_json(v);
    ok = ok && v.valid();
  } else {
    report["algebra"] = nullptr;
  }
  const OptimalityReport r = verify_optimality(code.code, code.spec ? &*code.spec : nullptr, c.tol);
  report["optimality"] = optimality_report_to_json(r);
  ok = ok && r.all_pass();
  report["pass"] = ok;
  emit_json(c.out_path, out, report);

  err << "verify " << code.id << ": " << (ok ? "PASS" : "FAIL");
  if (!r.unitary_pass) err << " [scaled unitarity residual " << r.max_unitary_residual << "]";
  if (!r.trace_orthogonality_pass) err << " [trace orthogonality residual " << r.trace_orthogonality_residual << "]";
  if (r.phi_pass && !*r.phi_pass) err << " [phi residual " << *r.phi_residual << "]";
  if (r.algebra_conditions_pass && !*r.algebra_conditions_pass) err << " [algebra conditions]";
  if (report["algebra"].is_object() && !report["algebra"]["valid"].get<bool>()) err << " [crossed product validation]";
  err << '\n';
  return ok ? kSuccess : kVerificationFailure;
}

int cmd_diversity(const Common& c, std::uint64_t samples, std::uint64_t budget, std::ostream& out,
                  std::ostream& err) {
  require_json(c, "diversity");
  SimConfig cfg = resolve_config(c, nullptr);
  if (!given(c.threads_opt)) cfg.threads = 0;
  const CatalogCode code = make_code(cfg.code, c.tol);
  const Constellation constellation = Constellation::from_name(cfg.constellation);

  DiversityReport r;
  if (samples == 0) {
    try {
      r = min_det_diversity(code.code, constellation.points(), cfg.threads, budget);
    } catch (const BudgetExceededError& e) {
      throw UsageError(std::string(e.what()) + " (--samples N)");
    }
  } else {
    r = min_det_sampled(code.code, constellation.points(), samples, cfg.seed);
  }
  const bool zero_found = r.min_det_modulus <= c.tol;

  Json j = {{"code", code.id},
            {"constellation", constellation.name()},
            {"mode", samples == 0 ? "exhaustive" : "sampled"},
            {"report", diversity_report_to_json(r)}};
  if (samples == 0 || zero_found) {
    j["fully_diverse"] = !zero_found;
  } else {
    j["fully_diverse"] = nullptr;  // sampling cannot establish it
  }
  emit_json(c.out_path, out, j);
  err << "diversity " << code.id << ": min |det| = " << r.min_det_modulus << " over "
      << r.pairs_examined << " difference vectors\n";
  return zero_found ? kVerificationFailure : kSuccess;
}

int cmd_simulate(const Common& c, const SimOptions& sim, std::ostream& out, std::ostream& err) {
  const SimConfig cfg = resolve_config(c, &sim);
  const CatalogCode code = make_code(cfg.code, c.tol);
  cfg.validate(code.code.n());
  const std::vector<BerPoint> points = run_ber(code.code, cfg);

  std::string note;
  const auto slope = try_slope(points, cfg, note);
  Json summary = {{"config", sim_config_to_json(cfg)},
                  {"points", ber_points_to_json(points)},
                  {"diversity_slope", slope_json(slope)}};
  if (!slope) summary["slope_note"] = note;

  if (c.format == "json") {
    emit_json(c.out_path, out, summary);
  } else {
    emit(c.out_path, out, [&](std::ostream& s) { write_ber_csv(s, points); });
    if (!c.out_path.empty()) write_json_file(sidecar_path(c.out_path), summary);
  }
  report_slope(err, code.id, slope, note);
  return kSuccess;
}

int cmd_sweep(const Common& c, const SimOptions& sim, const std::vector<std::string>& code_ids,
              std::ostream& out, std::ostream& err) {
  const SimConfig cfg = resolve_config(c, &sim);

  std::vector<std::string> ids = code_ids;
  if (ids.empty() && !c.config_path.empty()) {
    const Json file = read_json_file(c.config_path);
    if (file.contains("codes")) ids = file.at("codes").get<std::vector<std::string>>();
  }
  if (ids.empty()) throw UsageError("sweep: empty code list (--codes a,b,...)");

  // Build and check every code before any simulation starts.
  std::vector<CatalogCode> codes;
  for (const auto& id : ids) {
    CodeSpec spec = cfg.code;
    spec.id = id;
    codes.push_back(make_code(spec, c.tol));
    cfg.validate(codes.back().code.n());
  }

  std::vector<std::pair<std::string, std::vector<BerPoint>>> runs;
  Json runs_json = Json::array();
  for (const auto& code : codes) {
    auto points = run_ber(code.code, cfg);
    std::string note;
    const auto slope = try_slope(points, cfg, note);
    report_slope(err, code.id, slope, note);
    runs_json.push_back({{"code", code.id},
                         {"points", ber_points_to_json(points)},
                         {"diversity_slope", slope_json(slope)}});
    runs.emplace_back(code.id, std::move(points));
  }
  const Json summary = {{"config", sim_config_to_json(cfg)}, {"runs", runs_json}};

  if (c.format == "json") {
    emit_json(c.out_path, out, summary);
  } else {
    emit(c.out_path, out, [&](std::ostream& s) { write_sweep_csv(s, runs); });
    if (!c.out_path.empty()) write_json_file(sidecar_path(c.out_path), summary);
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and simulate MMSE-optimal space-time block codes", "stbc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stbc 0.1.0");

  Common construct_c, verify_c, diversity_c, simulate_c, sweep_c;
  SimOptions simulate_s, sweep_s;
  std::string verify_input;
  std::uint64_t samples = 0;
  std::uint64_t budget = kMinDetBudget;
  std::vector<std::string> sweep_codes;

  auto* construct = app.add_subcommand("construct", "Write the algebra and weight matrices of a code as JSON");
  attach_common(*construct, construct_c, false);

  auto* verify = app.add_subcommand("verify", "Check MMSE optimality; exit 2 on failure");
  attach_common(*verify, verify_c, false);
  verify->add_option("--input", verify_input, "Verify a file written by construct")->check(CLI::ExistingFile);

  auto* diversity = app.add_subcommand("diversity", "Minimum |det| over codeword differences; exit 2 if zero");
  attach_common(*diversity, diversity_c, true);
  diversity->add_option("--samples", samples, "Random difference vectors instead of full enumeration");
  diversity->add_option("--budget", budget, "Largest exhaustive enumeration allowed");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER/SER under linear MMSE reception");
  attach_common(*simulate, simulate_c, true);
  simulate_s.attach(*simulate);

  auto* sweep = app.add_subcommand("sweep", "simulate over several codes into one CSV with a code column");
  attach_common(*sweep, sweep_c, true);
  sweep->add_option("--codes", sweep_codes, "Comma-separated code ids")->delimiter(',');
  sweep_s.attach(*sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (construct->parsed()) return cmd_construct(construct_c, out);
    if (verify->parsed()) return cmd_verify(verify_c, verify_input, out, err);
    if (diversity->parsed()) return cmd_diversity(diversity_c, samples, budget, out, err);
    if (simulate->parsed()) return cmd_simulate(simulate_c, simulate_s, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_c, sweep_s, sweep_codes, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace stbc::cli

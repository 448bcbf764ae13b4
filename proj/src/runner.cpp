#include "junction/runner.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "junction/device_table.hpp"
#include "junction/ensemble.hpp"
#include "junction/floquet.hpp"
#include "junction/parallel.hpp"
#include "junction/propagator.hpp"
#include "junction/semiclassical.hpp"

namespace junction {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class CsvFile {
 public:
  CsvFile(const fs::path& dir, const fs::path& name, CommandResult& result) : out_(dir / name) {
    if (!out_) throw std::runtime_error("cannot write " + (dir / name).string());
    result.files.push_back(name);
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  std::ofstream& stream() { return out_; }

 private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::uint64_t x) { return std::to_string(x); }
  static std::string cell(const std::string& x) { return x; }
  static std::string cell(const char* x) { return x; }

  std::ofstream out_;
};

void write_json(const fs::path& dir, const fs::path& name, const json& j, CommandResult& result) {
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  out << j.dump(2) << '\n';
  result.files.push_back(name);
}

void write_populations(const fs::path& dir, const fs::path& name, const ObservableSeries& series, int n_sites,
                       CommandResult& result) {
  CsvFile csv(dir, name, result);
  auto& s = csv.stream();
  s << "time_ns";
  for (int l = 1; l <= n_sites; ++l) s << ",n_" << l;
  s << '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    s << num(series.times[k]);
    for (int l = 0; l < n_sites; ++l) s << ',' << num(series.populations[k](l));
    s << '\n';
  }
}

void write_correlations(const fs::path& dir, const fs::path& name, const ObservableSeries& series,
                        CommandResult& result) {
  CsvFile csv(dir, name, result);
  csv.row("time_ns", "i", "j", "value");
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    for (const auto& [pair, values] : series.correlations) csv.row(series.times[k], pair.first, pair.second, values[k]);
  }
}

DynamicsRequest dynamics_request(const Settings& s) {
  DynamicsRequest request;
  try {
    request.initial = single_excitation(s.n_sites, s.dynamics.initial_site);
    request.times = uniform_times(s.dynamics.horizon_ns, s.dynamics.sample_ns);
  } catch (const std::exception& e) {
    throw ConfigError("dynamics", e.what());
  }
  if (s.sector != 1) throw ConfigError("sector", "dynamics starts from a single excitation and needs sector 1");
  if (s.dynamics.czz_reference < 1 || s.dynamics.czz_reference > s.n_sites) {
    throw ConfigError("dynamics.czz_reference", "outside 1..N");
  }
  request.steps_per_period = s.numerics.steps_per_period;
  request.pairs = pairs_with(s.dynamics.czz_reference, s.n_sites);
  request.keep_realizations = s.dynamics.keep_realizations;
  return request;
}

std::string digest_hex(const unsigned char* digest, unsigned int length) {
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

std::string sha256_bytes(const char* data, std::size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data, size, digest, &length, EVP_sha256(), nullptr);
  return digest_hex(digest, length);
}

}  // namespace

std::string sha256_text(const std::string& text) { return sha256_bytes(text.data(), text.size()); }

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_text(buffer.str());
}

CommandResult cmd_dynamics(const Settings& s, const fs::path& out, int) {
  const ModelConfig config = resolve_model(s);
  const DynamicsRequest request = dynamics_request(s);
  const SectorBasis basis(config.chain.n_sites, config.sector, config.chain.boson_cutoff);
  const ObservableSeries series = run_dynamics(realize(config, 0), basis, request);

  CommandResult result;
  result.seeds = {realization_seed(config.disorder.master_seed, 0)};
  result.steps_per_period = request.steps_per_period;
  write_populations(out, "populations.csv", series, s.n_sites, result);
  write_correlations(out, "czz.csv", series, result);
  return result;
}

CommandResult cmd_ensemble(const Settings& s, const fs::path& out, int workers) {
  const ModelConfig config = resolve_model(s);
  const DynamicsRequest request = dynamics_request(s);
  const EnsembleResult ensemble = run_dynamics_ensemble(config, request, workers);

  CommandResult result;
  result.seeds = ensemble.seeds;
  result.steps_per_period = ensemble.steps_per_period;
  write_populations(out, "ensemble_populations.csv", ensemble.mean, s.n_sites, result);
  write_correlations(out, "ensemble_czz.csv", ensemble.mean, result);
  {
    CsvFile csv(out, "seeds.csv", result);
    csv.row("realization", "seed");
    for (std::size_t r = 0; r < ensemble.seeds.size(); ++r) csv.row(static_cast<int>(r), ensemble.seeds[r]);
  }
  if (!ensemble.per_realization.empty()) {
    fs::create_directories(out / "realizations");
    for (std::size_t r = 0; r < ensemble.per_realization.size(); ++r) {
      char name[64];
      std::snprintf(name, sizeof name, "realizations/populations_r%04zu.csv", r);
      write_populations(out, name, ensemble.per_realization[r], s.n_sites, result);
    }
  }
  return result;
}

CommandResult cmd_spectrum(const Settings& s, const fs::path& out, int workers) {
  const ModelConfig config = resolve_model(s);
  if (s.spectrum.bins < 1) throw ConfigError("spectrum.bins", "must be >= 1");
  if (s.spectrum.coe_dim < 4) throw ConfigError("spectrum.coe_dim", "must be >= 4");
  if (s.spectrum.coe_count < 1) throw ConfigError("spectrum.coe_count", "must be >= 1");

  const SpectrumEnsemble ensemble = run_spectrum_ensemble(config, s.numerics.steps_per_period, workers);
  const RatioSample coe = sample_coe_reference(s.spectrum.coe_dim, s.spectrum.coe_count, s.spectrum.coe_seed, workers);
  const RatioSample& sample = ensemble.pooled;
  if (sample.empty()) throw NumericalError("no non-degenerate gap ratios in the ensemble");

  CommandResult result;
  result.seeds = ensemble.seeds;
  result.steps_per_period = ensemble.steps_per_period;
  {
    CsvFile csv(out, "ratio_histogram.csv", result);
    csv.row("r_bin_lo", "r_bin_hi", "empirical_density", "poisson_density", "coe_density");
    for (const auto& row : ratio_histogram(sample, coe, s.spectrum.bins)) {
      csv.row(row.lo, row.hi, row.empirical, row.poisson, row.coe);
    }
  }
  {
    CsvFile csv(out, "ratios.csv", result);
    csv.row("realization", "r");
    for (std::size_t k = 0; k < sample.size(); ++k) csv.row(sample.source_realizations[k], sample.ratios[k]);
  }
  const CoeFormulaCheck printed = check_printed_coe();
  result.summary = json{
      {"realizations", ensemble.realization_count},
      {"ratio_count", sample.size()},
      {"discarded_degenerate", sample.discarded_degenerate},
      {"mean_r", sample.mean()},
      {"ks_poisson", ks_distance(sample, poisson_cdf)},
      {"ks_coe", ks_distance(sample, coe)},
      {"poisson_mean", poisson_mean()},
      {"coe_reference", {{"dim", s.spectrum.coe_dim}, {"count", s.spectrum.coe_count}, {"seed", s.spectrum.coe_seed},
                         {"mean_r", coe.mean()}}},
      {"printed_coe_formula", {{"r_min", printed.r_min}, {"normalization", printed.normalization},
                               {"min_density", printed.min_density}, {"valid", printed.valid}}},
  };
  write_json(out, "spectrum_summary.json", result.summary, result);
  return result;
}

CommandResult cmd_stability(const Settings& s, const fs::path& out, int workers) {
  const SemiclassicalParams base = resolve_semiclassical(s);
  const auto& st = s.stability;
  if (!(st.omega_max_factor > 0) || st.n_omega < 1) throw ConfigError("stability.n_omega", "empty omega axis");
  if (st.delta1_max_factor < 0 || st.n_delta1 < 1) throw ConfigError("stability.n_delta1", "empty Delta_1 axis");

  const double big_omega = base.small_oscillation_frequency();
  const StabilityGrid grid = stability_grid(base, st.omega_max_factor * big_omega, st.n_omega,
                                            st.delta1_max_factor * base.dc_amplitude, st.n_delta1, workers);
  CommandResult result;
  {
    CsvFile csv(out, "stability_grid.csv", result);
    csv.row("omega", "delta1", "abs_trace", "stable");
    for (int i = 0; i < st.n_delta1; ++i) {
      for (int j = 0; j < st.n_omega; ++j) {
        csv.row(angular_to_mhz(grid.omegas[j]), angular_to_mhz(grid.delta1[i]), grid.abs_trace(i, j),
                grid.stable(i, j) ? 1 : 0);
      }
    }
  }
  const double operating_trace = monodromy_trace(base);
  result.summary = json{
      {"units", "MHz (ordinary frequency)"},
      {"big_omega_mhz", angular_to_mhz(big_omega)},
      {"resonances_mhz", {angular_to_mhz(2 * big_omega), angular_to_mhz(big_omega), angular_to_mhz(2 * big_omega / 3)}},
      {"operating_point", {{"omega_mhz", s.drive.frequency_mhz}, {"delta1_mhz", s.drive.ac_mhz},
                           {"abs_trace", operating_trace}, {"stable", is_stable_trace(operating_trace)}}},
  };
  write_json(out, "stability_summary.json", result.summary, result);
  return result;
}

CommandResult cmd_contours(const Settings& s, const fs::path& out, int) {
  const SemiclassicalParams params = resolve_semiclassical(s);
  if (s.contours.n_q < 2 || s.contours.n_p < 2) throw ConfigError("contours", "grids need at least two points");
  std::vector<double> q, p;
  for (int k = 0; k < s.contours.n_q; ++k) q.push_back(2 * kTwoPi * k / (s.contours.n_q - 1));
  for (int k = 0; k < s.contours.n_p; ++k) p.push_back(-0.5 * kTwoPi + kTwoPi * k / (s.contours.n_p - 1));
  const Eigen::MatrixXd field = potential_contours(q, p, params);

  CommandResult result;
  CsvFile csv(out, "contours.csv", result);
  csv.row("q", "p", "energy_mhz");
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) csv.row(q[j], p[i], angular_to_mhz(field(i, j)));
  }
  return result;
}

CommandResult cmd_device_check(const Settings& s, const std::string& table_path, const fs::path& out) {
  std::string path = table_path;
  if (path.empty()) path = s.device_table.empty() ? bundled_device_table().string() : s.device_table;
  DeviceTable table;
  try {
    table = load_device_table(path);
  } catch (const DeviceTableError& e) {
    throw ConfigError("device_table", e.what());
  }
  const auto warnings = check_device_table(table, s.frame_ghz, s.drive.dc_mhz);

  json qubits = json::array();
  for (const auto& q : table.qubits) {
    qubits.push_back({{"readout_ghz", q.readout_ghz}, {"max_ghz", q.max_ghz}, {"idle_ghz", q.idle_ghz},
                      {"cosine_ghz", q.cosine_ghz}, {"flat_ghz", q.flat_ghz}, {"t1_us", q.t1_us},
                      {"t2s_us", q.t2s_us}, {"eta_mhz", q.eta_mhz}, {"chi_mhz", q.chi_mhz}, {"f00", q.f00},
                      {"f11", q.f11}, {"visibility", q.visibility}, {"integration_ns", q.integration_ns}});
  }
  json warning_list = json::array();
  for (const auto& w : warnings) warning_list.push_back({{"code", w.code}, {"message", w.message}});

  CommandResult result;
  result.summary = json{{"table", path},
                        {"qubits", qubits},
                        {"couplings_mhz", table.couplings_mhz},
                        {"mean_anharmonicity_mhz", table.mean_anharmonicity_mhz()},
                        {"warnings", warning_list}};
  write_json(out, "device_check.json", result.summary, result);
  return result;
}

int run_command(const std::string& command, const Settings& s, const fs::path& out, int workers, std::ostream& log,
                const std::string& table) {
  return run_command(command, [&] { return s; }, out, workers, log, table);
}

int run_command(const std::string& command, const std::function<Settings()>& load, const fs::path& out, int workers,
                std::ostream& log, const std::string& table) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  int code = kExitOk;
  std::string error;

  try {
    fs::create_directories(out);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  json config = nullptr;
  Settings s;
  try {
    s = load();
    config = settings_to_json(s);
    if (command == "dynamics") result = cmd_dynamics(s, out, workers);
    else if (command == "ensemble") result = cmd_ensemble(s, out, workers);
    else if (command == "spectrum") result = cmd_spectrum(s, out, workers);
    else if (command == "stability") result = cmd_stability(s, out, workers);
    else if (command == "contours") result = cmd_contours(s, out, workers);
    else if (command == "device-check") result = cmd_device_check(s, table, out);
    else throw ConfigError("command", "unknown command '" + command + "'");
  } catch (const ConfigError& e) {
    code = kExitConfig;
    error = e.what();
  } catch (const std::exception& e) {
    code = kExitNumerical;
    error = e.what();
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json outputs = json::array();
  for (const auto& f : result.files) {
    outputs.push_back({{"file", f.generic_string()}, {"sha256", sha256_file(out / f)}});
  }
  json manifest{
      {"tool", "junction"},
      {"version", kToolVersion},
      {"command", command},
      {"status", code == kExitOk ? "ok" : "failed"},
      {"exit_code", code},
      {"config", config},
      {"config_sha256", config.is_null() ? json(nullptr) : json(sha256_text(config.dump()))},
      {"master_seed", config.is_null() ? json(nullptr) : json(s.disorder.seed)},
      {"seeds", result.seeds},
      {"steps_per_period", result.steps_per_period},
      {"workers", workers},
      {"duration_s", seconds},
      {"outputs", outputs},
  };
  if (code != kExitOk) manifest["error"] = error;
  {
    std::ofstream mf(out / "manifest.json");
    mf << manifest.dump(2) << '\n';
  }

  if (code != kExitOk) {
    log << "error: " << error << '\n';
  } else {
    if (command == "device-check") {
      for (const auto& w : result.summary["warnings"]) {
        log << "warning [" << w["code"].get<std::string>() << "]: " << w["message"].get<std::string>() << '\n';
      }
    } else if (!result.summary.empty()) {
      log << result.summary.dump(2) << '\n';
    }
    for (const auto& f : result.files) log << "wrote " << (out / f).string() << '\n';
  }
  return code;
}

}  // namespace junction

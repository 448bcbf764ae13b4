#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "junction/model.hpp"
#include "junction/semiclassical.hpp"

namespace junction {

/// Invalid configuration; `path` names the offending field (e.g. "drive.ac_mhz").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class ModelMode { formula, device };

/// User-facing settings in ordinary units (MHz, GHz, ns). Optional fields fall
/// back to mode-dependent defaults at resolve time.
struct Settings {
  ModelMode mode = ModelMode::formula;
  std::string device_table;  // empty: bundled table

  int n_sites = 12;
  double coupling_mhz = 11.5;  // nominal J; also the unit of disorder strength
  std::optional<std::vector<double>> couplings_mhz;  // per-bond override (formula mode)
  std::optional<double> nonlinearity_mhz;            // formula: -250, device: mean eta
  int boson_cutoff = 2;
  int sector = 1;
  double frame_ghz = 4.335;

  struct Drive {
    double dc_mhz = 34.5;
    double ac_mhz = 34.5;
    double frequency_mhz = 19.67;
    double phase = 0.0;
    std::optional<std::pair<int, int>> sites;  // default 1..N/2
    double time_origin_ns = 0.0;
    std::optional<int> index_origin;  // formula: 0, device: 1
  } drive;

  struct Potential {
    ProfileKind profile = ProfileKind::cosine;
    std::optional<int> index_origin;  // defaults to the drive's
    std::optional<std::pair<int, int>> flat_sites;  // default N/2+1..N
    std::optional<std::vector<double>> table_ghz;
  } potential;

  struct Disorder {
    double strength_j = 0.0;  // W in units of the nominal J
    std::optional<std::pair<int, int>> sites;  // default N/2+1..N
    std::uint64_t seed = 12345;
    int realizations = 50;
  } disorder;

  struct Dynamics {
    int initial_site = 3;
    double horizon_ns = 150.0;
    double sample_ns = 1.0;
    int czz_reference = 7;
    bool keep_realizations = false;
  } dynamics;

  struct Numerics {
    int steps_per_period = 256;
  } numerics;

  struct Spectrum {
    int bins = 20;
    int coe_dim = 50;
    int coe_count = 500;
    std::uint64_t coe_seed = 20240601;
  } spectrum;

  struct Stability {
    double omega_max_factor = 3.0;   // omega axis up to this multiple of Omega
    int n_omega = 200;
    double delta1_max_factor = 2.0;  // Delta_1 axis up to this multiple of Delta_0
    int n_delta1 = 200;
  } stability;

  struct Contours {
    int n_q = 121;
    int n_p = 121;
  } contours;
};

ModelMode parse_mode(const std::string& name);
std::string to_string(ModelMode mode);

/// Parses a JSON settings object. Unknown keys and wrong types raise ConfigError.
Settings settings_from_json(const nlohmann::json& j);
nlohmann::json settings_to_json(const Settings& s);

/// Reads a JSON settings file. A relative device_table path is resolved
/// against the file's directory.
Settings load_settings(const std::filesystem::path& path);

/// Path of the device table bundled with the sources.
std::filesystem::path bundled_device_table();

/// Builds the simulation model. Formula mode needs an even N >= 4; device mode
/// needs N = 12 and takes couplings, working frequencies and U from the table.
ModelConfig resolve_model(const Settings& s);

/// Classical parameters of the driven domain at the nominal coupling.
SemiclassicalParams resolve_semiclassical(const Settings& s);

}  // namespace junction

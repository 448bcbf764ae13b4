#include "junction/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "junction/device_table.hpp"

namespace junction {

namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Reads fields of one JSON object and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  ~ObjectReader() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) throw ConfigError(join(path_, key), "unknown key");
    }
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    out = convert<T>(j_.at(key), join(path_, key));
  }

  template <typename T>
  void read(const std::string& key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) return;
    out = convert<T>(j_.at(key), join(path_, key));
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

 private:
  template <typename T>
  static T convert(const json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(path, "expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
      return v.get<int>();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
      return v.get<std::uint64_t>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError(path, "expected a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(path, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
      std::vector<double> out;
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<double>(v[i], path + "[" + std::to_string(i) + "]"));
      return out;
    } else if constexpr (std::is_same_v<T, std::pair<int, int>>) {
      if (!v.is_array() || v.size() != 2) throw ConfigError(path, "expected [first, last]");
      return {convert<int>(v[0], path + "[0]"), convert<int>(v[1], path + "[1]")};
    } else if constexpr (std::is_same_v<T, ProfileKind>) {
      const auto name = convert<std::string>(v, path);
      try {
        return parse_profile_kind(name);
      } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
      }
    } else if constexpr (std::is_same_v<T, ModelMode>) {
      const auto name = convert<std::string>(v, path);
      try {
        return parse_mode(name);
      } catch (const std::exception& e) {
        throw ConfigError(path, e.what());
      }
    }
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
void section(ObjectReader& parent, const std::string& key, F&& body) {
  if (const json* j = parent.child(key)) {
    ObjectReader r(*j, parent.path(key));
    body(r);
  }
}

void require(bool ok, const std::string& path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

SiteRange to_range(const std::optional<std::pair<int, int>>& value, SiteRange fallback) {
  return value ? SiteRange{value->first, value->second} : fallback;
}

json optional_json(const auto& value) { return value ? json(*value) : json(nullptr); }

json range_json(const std::optional<std::pair<int, int>>& value) {
  return value ? json::array({value->first, value->second}) : json(nullptr);
}

}  // namespace

ModelMode parse_mode(const std::string& name) {
  if (name == "formula") return ModelMode::formula;
  if (name == "device") return ModelMode::device;
  throw std::invalid_argument("unknown mode '" + name + "' (expected formula or device)");
}

std::string to_string(ModelMode mode) { return mode == ModelMode::formula ? "formula" : "device"; }

Settings settings_from_json(const json& j) {
  Settings s;
  ObjectReader top(j, "");
  top.read("mode", s.mode);
  top.read("device_table", s.device_table);
  top.read("n_sites", s.n_sites);
  top.read("coupling_mhz", s.coupling_mhz);
  top.read("couplings_mhz", s.couplings_mhz);
  top.read("nonlinearity_mhz", s.nonlinearity_mhz);
  top.read("boson_cutoff", s.boson_cutoff);
  top.read("sector", s.sector);
  top.read("frame_ghz", s.frame_ghz);
  section(top, "drive", [&](ObjectReader& r) {
    r.read("dc_mhz", s.drive.dc_mhz);
    r.read("ac_mhz", s.drive.ac_mhz);
    r.read("frequency_mhz", s.drive.frequency_mhz);
    r.read("phase", s.drive.phase);
    r.read("sites", s.drive.sites);
    r.read("time_origin_ns", s.drive.time_origin_ns);
    r.read("index_origin", s.drive.index_origin);
  });
  section(top, "potential", [&](ObjectReader& r) {
    r.read("profile", s.potential.profile);
    r.read("index_origin", s.potential.index_origin);
    r.read("flat_sites", s.potential.flat_sites);
    r.read("table_ghz", s.potential.table_ghz);
  });
  section(top, "disorder", [&](ObjectReader& r) {
    r.read("strength_j", s.disorder.strength_j);
    r.read("sites", s.disorder.sites);
    r.read("seed", s.disorder.seed);
    r.read("realizations", s.disorder.realizations);
  });
  section(top, "dynamics", [&](ObjectReader& r) {
    r.read("initial_site", s.dynamics.initial_site);
    r.read("horizon_ns", s.dynamics.horizon_ns);
    r.read("sample_ns", s.dynamics.sample_ns);
    r.read("czz_reference", s.dynamics.czz_reference);
    r.read("keep_realizations", s.dynamics.keep_realizations);
  });
  section(top, "numerics", [&](ObjectReader& r) { r.read("steps_per_period", s.numerics.steps_per_period); });
  section(top, "spectrum", [&](ObjectReader& r) {
    r.read("bins", s.spectrum.bins);
    r.read("coe_dim", s.spectrum.coe_dim);
    r.read("coe_count", s.spectrum.coe_count);
    r.read("coe_seed", s.spectrum.coe_seed);
  });
  section(top, "stability", [&](ObjectReader& r) {
    r.read("omega_max_factor", s.stability.omega_max_factor);
    r.read("n_omega", s.stability.n_omega);
    r.read("delta1_max_factor", s.stability.delta1_max_factor);
    r.read("n_delta1", s.stability.n_delta1);
  });
  section(top, "contours", [&](ObjectReader& r) {
    r.read("n_q", s.contours.n_q);
    r.read("n_p", s.contours.n_p);
  });
  return s;
}

json settings_to_json(const Settings& s) {
  return json{
      {"mode", to_string(s.mode)},
      {"device_table", s.device_table},
      {"n_sites", s.n_sites},
      {"coupling_mhz", s.coupling_mhz},
      {"couplings_mhz", optional_json(s.couplings_mhz)},
      {"nonlinearity_mhz", optional_json(s.nonlinearity_mhz)},
      {"boson_cutoff", s.boson_cutoff},
      {"sector", s.sector},
      {"frame_ghz", s.frame_ghz},
      {"drive",
       {{"dc_mhz", s.drive.dc_mhz},
        {"ac_mhz", s.drive.ac_mhz},
        {"frequency_mhz", s.drive.frequency_mhz},
        {"phase", s.drive.phase},
        {"sites", range_json(s.drive.sites)},
        {"time_origin_ns", s.drive.time_origin_ns},
        {"index_origin", optional_json(s.drive.index_origin)}}},
      {"potential",
       {{"profile", to_string(s.potential.profile)},
        {"index_origin", optional_json(s.potential.index_origin)},
        {"flat_sites", range_json(s.potential.flat_sites)},
        {"table_ghz", optional_json(s.potential.table_ghz)}}},
      {"disorder",
       {{"strength_j", s.disorder.strength_j},
        {"sites", range_json(s.disorder.sites)},
        {"seed", s.disorder.seed},
        {"realizations", s.disorder.realizations}}},
      {"dynamics",
       {{"initial_site", s.dynamics.initial_site},
        {"horizon_ns", s.dynamics.horizon_ns},
        {"sample_ns", s.dynamics.sample_ns},
        {"czz_reference", s.dynamics.czz_reference},
        {"keep_realizations", s.dynamics.keep_realizations}}},
      {"numerics", {{"steps_per_period", s.numerics.steps_per_period}}},
      {"spectrum",
       {{"bins", s.spectrum.bins},
        {"coe_dim", s.spectrum.coe_dim},
        {"coe_count", s.spectrum.coe_count},
        {"coe_seed", s.spectrum.coe_seed}}},
      {"stability",
       {{"omega_max_factor", s.stability.omega_max_factor},
        {"n_omega", s.stability.n_omega},
        {"delta1_max_factor", s.stability.delta1_max_factor},
        {"n_delta1", s.stability.n_delta1}}},
      {"contours", {{"n_q", s.contours.n_q}, {"n_p", s.contours.n_p}}},
  };
}

Settings load_settings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", "malformed JSON in " + path.string() + ": " + e.what());
  }
  Settings s = settings_from_json(j);
  if (!s.device_table.empty() && std::filesystem::path(s.device_table).is_relative()) {
    s.device_table = (path.parent_path() / s.device_table).lexically_normal().string();
  }
  return s;
}

std::filesystem::path bundled_device_table() { return std::filesystem::path(JUNCTION_DATA_DIR) / "device_table.json"; }

ModelConfig resolve_model(const Settings& s) {
  const int n = s.n_sites;
  if (s.mode == ModelMode::formula) {
    require(n >= 4 && n % 2 == 0, "n_sites", "formula mode needs an even N >= 4");
  } else {
    require(n == 12, "n_sites", "device mode needs N = 12");
  }
  require(s.coupling_mhz > 0, "coupling_mhz", "nominal coupling must be positive");
  require(s.boson_cutoff >= 1, "boson_cutoff", "must be >= 1");
  require(s.sector >= 0 && s.sector <= n * s.boson_cutoff, "sector", "outside 0..N*n_max");
  require(s.drive.frequency_mhz > 0, "drive.frequency_mhz", "must be positive");
  require(s.disorder.strength_j >= 0, "disorder.strength_j", "must be non-negative");
  require(s.disorder.realizations >= 1, "disorder.realizations", "must be >= 1");
  require(s.numerics.steps_per_period >= 1, "numerics.steps_per_period", "must be >= 1");

  const SiteRange left{1, n / 2};
  const SiteRange right{n / 2 + 1, n};
  const SiteRange driven = to_range(s.drive.sites, left);
  require(driven.first >= 1 && driven.last <= n && !driven.empty(), "drive.sites", "outside 1..N");

  ModelConfig config;
  config.sector = s.sector;
  config.frame_frequency = ghz_to_angular(s.frame_ghz);

  int drive_origin = 0;
  double nonlinearity_mhz = -250.0;
  std::vector<double> couplings_mhz(n - 1, s.coupling_mhz);

  if (s.mode == ModelMode::formula) {
    if (s.couplings_mhz) {
      require(static_cast<int>(s.couplings_mhz->size()) == n - 1, "couplings_mhz", "needs N - 1 values");
      couplings_mhz = *s.couplings_mhz;
    }
    config.background.kind = s.potential.profile;
    if (s.potential.profile == ProfileKind::table) {
      require(s.potential.table_ghz.has_value(), "potential.table_ghz", "table profile needs explicit values");
    }
  } else {
    require(!s.couplings_mhz, "couplings_mhz", "device mode takes couplings from the device table");
    DeviceTable table;
    const std::string path = s.device_table.empty() ? bundled_device_table().string() : s.device_table;
    try {
      table = load_device_table(path);
    } catch (const DeviceTableError& e) {
      throw ConfigError("device_table", e.what());
    }
    couplings_mhz = table.couplings_mhz;
    nonlinearity_mhz = table.mean_anharmonicity_mhz();
    drive_origin = 1;
    config.background.kind = ProfileKind::table;
    if (s.potential.profile == ProfileKind::table) {
      require(s.potential.table_ghz.has_value(), "potential.table_ghz", "table profile needs explicit values");
    } else {
      const auto row = table.working_row_ghz(s.potential.profile);
      config.background.table_values.clear();
      for (double g : row) config.background.table_values.push_back(ghz_to_angular(g));
    }
  }
  if (s.potential.table_ghz && s.potential.profile == ProfileKind::table) {
    require(static_cast<int>(s.potential.table_ghz->size()) == n, "potential.table_ghz", "needs one value per site");
    config.background.table_values.clear();
    for (double g : *s.potential.table_ghz) config.background.table_values.push_back(ghz_to_angular(g));
  }
  if (s.nonlinearity_mhz) nonlinearity_mhz = *s.nonlinearity_mhz;
  if (s.drive.index_origin) drive_origin = *s.drive.index_origin;

  config.background.index_origin = s.potential.index_origin.value_or(drive_origin);
  config.background.flat_sites = to_range(s.potential.flat_sites, right);

  std::vector<double> couplings;
  for (double j : couplings_mhz) couplings.push_back(mhz_to_angular(j));
  config.chain = ChainSpec{n, couplings, mhz_to_angular(nonlinearity_mhz), s.boson_cutoff};

  config.drive = make_drive(n, mhz_to_angular(s.drive.dc_mhz), mhz_to_angular(s.drive.ac_mhz),
                            mhz_to_angular(s.drive.frequency_mhz), driven, drive_origin);
  config.drive.phase = s.drive.phase;
  config.drive.time_origin = s.drive.time_origin_ns;

  config.disorder.strength = s.disorder.strength_j * mhz_to_angular(s.coupling_mhz);
  config.disorder.disordered_sites = to_range(s.disorder.sites, right);
  config.disorder.master_seed = s.disorder.seed;
  config.disorder.realization_count = s.disorder.realizations;

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model", e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError("model", e.what());
  }
  return config;
}

SemiclassicalParams resolve_semiclassical(const Settings& s) {
  require(s.n_sites >= 2 && s.n_sites % 2 == 0, "n_sites", "semiclassical model needs an even N");
  require(s.drive.dc_mhz > 0, "drive.dc_mhz", "semiclassical model needs Delta_0 > 0");
  require(s.coupling_mhz > 0, "coupling_mhz", "must be positive");
  require(s.drive.frequency_mhz > 0, "drive.frequency_mhz", "must be positive");
  return semiclassical_from_mhz(s.n_sites, s.drive.dc_mhz, s.drive.ac_mhz, s.drive.frequency_mhz, s.coupling_mhz);
}

}  // namespace junction

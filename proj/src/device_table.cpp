#include "junction/device_table.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace junction {

namespace {

using nlohmann::json;

constexpr int kQubits = 12;
constexpr int kBonds = 11;

double number_field(const json& row, const char* key, const std::string& where) {
  auto it = row.find(key);
  if (it == row.end()) throw DeviceTableError("device table: missing field '" + where + "." + key + "'");
  if (!it->is_number()) throw DeviceTableError("device table: field '" + where + "." + key + "' is not a number");
  return it->get<double>();
}

void require_positive(double value, const std::string& field) {
  if (!(value > 0)) throw DeviceTableError("device table: field '" + field + "' must be positive");
}

}  // namespace

std::vector<double> DeviceTable::working_row_ghz(ProfileKind row) const {
  std::vector<double> values;
  values.reserve(qubits.size());
  for (const auto& q : qubits) {
    switch (row) {
      case ProfileKind::cosine: values.push_back(q.cosine_ghz); break;
      case ProfileKind::flat: values.push_back(q.flat_ghz); break;
      case ProfileKind::table: throw std::invalid_argument("device table rows are 'cosine' or 'flat'");
    }
  }
  return values;
}

double DeviceTable::mean_anharmonicity_mhz() const {
  double sum = 0;
  for (const auto& q : qubits) sum += q.eta_mhz;
  return qubits.empty() ? 0.0 : sum / static_cast<double>(qubits.size());
}

DeviceTable parse_device_table(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DeviceTableError(std::string("device table: parse error: ") + e.what());
  }
  if (!doc.is_object()) throw DeviceTableError("device table: top level must be an object");

  auto qubits = doc.find("qubits");
  if (qubits == doc.end()) throw DeviceTableError("device table: missing field 'qubits'");
  if (!qubits->is_array() || qubits->size() != kQubits) {
    throw DeviceTableError("device table: field 'qubits' must hold " + std::to_string(kQubits) + " rows");
  }

  DeviceTable table;
  for (std::size_t i = 0; i < qubits->size(); ++i) {
    const json& row = (*qubits)[i];
    const std::string where = "qubits[" + std::to_string(i) + "]";
    if (!row.is_object()) throw DeviceTableError("device table: '" + where + "' must be an object");
    QubitRow q;
    q.readout_ghz = number_field(row, "readout_ghz", where);
    q.max_ghz = number_field(row, "max_ghz", where);
    q.idle_ghz = number_field(row, "idle_ghz", where);
    q.cosine_ghz = number_field(row, "cosine_ghz", where);
    q.flat_ghz = number_field(row, "flat_ghz", where);
    q.t1_us = number_field(row, "t1_us", where);
    q.t2s_us = number_field(row, "t2s_us", where);
    q.eta_mhz = number_field(row, "eta_mhz", where);
    q.chi_mhz = number_field(row, "chi_mhz", where);
    q.f00 = number_field(row, "f00", where);
    q.f11 = number_field(row, "f11", where);
    q.visibility = number_field(row, "visibility", where);
    q.integration_ns = number_field(row, "integration_ns", where);
    for (auto [value, name] : {std::pair{q.readout_ghz, "readout_ghz"}, {q.max_ghz, "max_ghz"},
                               {q.idle_ghz, "idle_ghz"}, {q.cosine_ghz, "cosine_ghz"}, {q.flat_ghz, "flat_ghz"}}) {
      require_positive(value, where + "." + name);
    }
    table.qubits.push_back(q);
  }

  auto couplings = doc.find("couplings_mhz");
  if (couplings == doc.end()) throw DeviceTableError("device table: missing field 'couplings_mhz'");
  if (!couplings->is_array() || couplings->size() != kBonds) {
    throw DeviceTableError("device table: field 'couplings_mhz' must hold " + std::to_string(kBonds) + " values");
  }
  for (std::size_t i = 0; i < couplings->size(); ++i) {
    const json& value = (*couplings)[i];
    const std::string field = "couplings_mhz[" + std::to_string(i) + "]";
    if (!value.is_number()) throw DeviceTableError("device table: field '" + field + "' is not a number");
    require_positive(value.get<double>(), field);
    table.couplings_mhz.push_back(value.get<double>());
  }
  return table;
}

DeviceTable load_device_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DeviceTableError("device table: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_device_table(buffer.str());
}

std::vector<DeviceWarning> check_device_table(const DeviceTable& table, double frame_ghz, double dc_amplitude_mhz,
                                              double tolerance_mhz) {
  std::vector<DeviceWarning> warnings;
  const int n = table.n_sites();
  const auto cosine_row = table.working_row_ghz(ProfileKind::cosine);
  const auto flat_row = table.working_row_ghz(ProfileKind::flat);

  auto max_deviation_mhz = [&](const std::vector<double>& row, const std::vector<double>& expected_offset_mhz,
                               int first, int last) {
    double worst = 0;
    for (int l = first; l <= last; ++l) {
      const double offset_mhz = (row[l - 1] - frame_ghz) * 1e3;
      worst = std::max(worst, std::abs(offset_mhz - expected_offset_mhz[l - 1]));
    }
    return worst;
  };

  auto scaled = [&](int origin) {
    auto profile = cosine_profile(n, origin);
    for (double& p : profile) p *= dc_amplitude_mhz;
    return profile;
  };

  const double printed = max_deviation_mhz(cosine_row, scaled(0), 1, n);
  const double shifted = max_deviation_mhz(cosine_row, scaled(1), 1, n);
  if (printed > tolerance_mhz) {
    std::ostringstream msg;
    msg << "cosine row deviates from gbar + Delta_0 cos(4 pi l/N) by up to " << printed << " MHz";
    if (shifted <= tolerance_mhz) msg << "; it matches cos(4 pi (l-1)/N) within " << shifted << " MHz";
    warnings.push_back({"cosine_index_origin", msg.str()});
  }

  const int first_flat = n / 2 + 1;
  std::vector<double> full(n, dc_amplitude_mhz), half(n, 0.5 * dc_amplitude_mhz);
  const double flat_full = max_deviation_mhz(flat_row, full, first_flat, n);
  const double flat_half = max_deviation_mhz(flat_row, half, first_flat, n);
  if (flat_full > tolerance_mhz) {
    std::ostringstream msg;
    msg << "flat row on sites " << first_flat << ".." << n << " deviates from gbar + Delta_0 by up to " << flat_full
        << " MHz";
    if (flat_half <= tolerance_mhz) msg << "; it matches gbar + Delta_0/2 within " << flat_half << " MHz";
    warnings.push_back({"flat_half_amplitude", msg.str()});
  }
  return warnings;
}

}  // namespace junction

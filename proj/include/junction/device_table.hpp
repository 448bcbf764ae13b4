#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "junction/model.hpp"

namespace junction {

class DeviceTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QubitRow {
  double readout_ghz = 0;
  double max_ghz = 0;
  double idle_ghz = 0;
  double cosine_ghz = 0;
  double flat_ghz = 0;
  double t1_us = 0;
  double t2s_us = 0;
  double eta_mhz = 0;
  double chi_mhz = 0;
  double f00 = 0;
  double f11 = 0;
  double visibility = 0;
  double integration_ns = 0;
};

/// Per-qubit calibration data of the 12-qubit device plus its 11 bond couplings.
/// Only working frequencies, couplings and the anharmonicity feed the model.
struct DeviceTable {
  std::vector<QubitRow> qubits;
  std::vector<double> couplings_mhz;

  int n_sites() const { return static_cast<int>(qubits.size()); }
  std::vector<double> working_row_ghz(ProfileKind row) const;
  double mean_anharmonicity_mhz() const;
};

/// Parses the JSON form: {"qubits": [{readout_ghz, ..., integration_ns}, ...],
/// "couplings_mhz": [...]}. Errors name the offending field.
DeviceTable parse_device_table(const std::string& text);
DeviceTable load_device_table(const std::filesystem::path& path);

struct DeviceWarning {
  std::string code;
  std::string message;
};

/// Compares the working rows against the formula profiles about `frame_ghz`.
/// Flags an index-origin shift of the cosine row and a flat row at
/// gbar + Delta_0/2 instead of gbar + Delta_0.
std::vector<DeviceWarning> check_device_table(const DeviceTable& table, double frame_ghz,
                                              double dc_amplitude_mhz, double tolerance_mhz = 2.0);

}  // namespace junction

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "junction/device_table.hpp"

using namespace junction;
using nlohmann::json;

namespace {

const std::string kBundled = std::string(JUNCTION_TEST_DATA) + "/device_table.json";

json bundled_json() {
  std::ifstream in(kBundled);
  return json::parse(in);
}

// Rows placed exactly on the textbook profiles about 4.335 GHz with Delta_0 = 34.5 MHz.
json synthetic_table() {
  json j = bundled_json();
  for (int l = 1; l <= 12; ++l) {
    const double cosine = 4.335 + 0.0345 * std::cos(4 * std::numbers::pi * l / 12);
    j["qubits"][l - 1]["cosine_ghz"] = cosine;
    j["qubits"][l - 1]["flat_ghz"] = l <= 6 ? cosine : 4.335 + 0.0345;
  }
  return j;
}

}  // namespace

TEST_CASE("bundled table") {
  const DeviceTable t = load_device_table(kBundled);
  REQUIRE(t.n_sites() == 12);
  REQUIRE(t.couplings_mhz.size() == 11);
  CHECK(t.couplings_mhz.front() == doctest::Approx(11.37));
  CHECK(t.couplings_mhz.back() == doctest::Approx(12.00));
  CHECK(t.qubits[8].t1_us == doctest::Approx(35.13));
  CHECK(t.qubits[8].t2s_us == doctest::Approx(1.79));
  CHECK(t.working_row_ghz(ProfileKind::cosine)[3] == doctest::Approx(4.300));
  CHECK(t.mean_anharmonicity_mhz() < -200);
  CHECK_THROWS(t.working_row_ghz(ProfileKind::table));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_device_table(""), DeviceTableError);
  CHECK_THROWS_AS(load_device_table("/nonexistent/table.json"), DeviceTableError);

  json j = bundled_json();
  j["qubits"][3].erase("t1_us");
  try {
    parse_device_table(j.dump());
    FAIL("expected a parse error");
  } catch (const DeviceTableError& e) {
    CHECK(std::string(e.what()).find("qubits[3].t1_us") != std::string::npos);
  }

  j = bundled_json();
  j["couplings_mhz"].erase(0);
  CHECK_THROWS_AS(parse_device_table(j.dump()), DeviceTableError);

  j = bundled_json();
  j["qubits"].erase(11);
  CHECK_THROWS_AS(parse_device_table(j.dump()), DeviceTableError);

  j = bundled_json();
  j["qubits"][0]["cosine_ghz"] = -4.3;
  CHECK_THROWS_AS(parse_device_table(j.dump()), DeviceTableError);

  j = bundled_json();
  j["qubits"][0]["idle_ghz"] = "fast";
  CHECK_THROWS_AS(parse_device_table(j.dump()), DeviceTableError);
}

TEST_CASE("consistency warnings") {
  SUBCASE("bundled table shows both known discrepancies") {
    const auto warnings = check_device_table(load_device_table(kBundled), 4.335, 34.5);
    REQUIRE(warnings.size() == 2);
    CHECK(warnings[0].code == "cosine_index_origin");
    CHECK(warnings[1].code == "flat_half_amplitude");
  }
  SUBCASE("synthetic table on the formulas is clean") {
    CHECK(check_device_table(parse_device_table(synthetic_table().dump()), 4.335, 34.5).empty());
  }
}

#pragma once

#include "junction/model.hpp"

namespace fixtures {

inline constexpr double kJ_mhz = 11.5;

/// Formula-mode junction: 12 sites, Delta_0 = Delta_1 = 3J, omega/2pi = 19.67 MHz.
inline junction::ModelConfig paper_config(junction::ProfileKind kind = junction::ProfileKind::cosine,
                                          double w_in_j = 0.0, int sector = 1, int n_max = 2) {
  using namespace junction;
  const double j = mhz_to_angular(kJ_mhz);
  ModelConfig c;
  c.chain = ChainSpec::uniform(12, j, mhz_to_angular(-250), n_max);
  c.drive = make_drive(12, 3 * j, 3 * j, mhz_to_angular(19.67));
  c.background.kind = kind;
  c.frame_frequency = ghz_to_angular(4.335);
  c.disorder.strength = w_in_j * j;
  c.sector = sector;
  return c;
}

}  // namespace fixtures

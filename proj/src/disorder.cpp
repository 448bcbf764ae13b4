#include <cmath>
#include <stdexcept>

#include "junction/model.hpp"

namespace junction {

namespace {

// splitmix64 finalizer: a bijective avalanche mix of one 64-bit word.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

void DisorderSpec::validate(int n_sites) const {
  if (!(strength >= 0) || !std::isfinite(strength)) throw std::invalid_argument("disorder strength must be >= 0");
  if (realization_count < 1) throw std::invalid_argument("realization count must be >= 1");
  if (!disordered_sites.empty() && (disordered_sites.first < 1 || disordered_sites.last > n_sites)) {
    throw std::invalid_argument("disordered sites outside the chain");
  }
}

// Stream layout: seed_r = mix(mix(master) ^ r), value(r, l) = mix(seed_r + l).
// No sequential state, so any subset of (realization, site) pairs can be
// drawn in any order on any thread.
std::uint64_t realization_seed(std::uint64_t master_seed, int realization_index) {
  return mix64(mix64(master_seed) ^ static_cast<std::uint64_t>(realization_index));
}

std::vector<double> sample_disorder(const DisorderSpec& spec, int n_sites, int realization_index) {
  if (realization_index < 0) throw std::invalid_argument("negative realization index");
  std::vector<double> offsets(n_sites, 0.0);
  if (spec.strength == 0.0) return offsets;
  const std::uint64_t seed = realization_seed(spec.master_seed, realization_index);
  for (int l = 1; l <= n_sites; ++l) {
    if (!spec.disordered_sites.contains(l)) continue;
    const double u = unit_interval(mix64(seed + static_cast<std::uint64_t>(l)));
    offsets[l - 1] = spec.strength * (2.0 * u - 1.0);
  }
  return offsets;
}

}  // namespace junction

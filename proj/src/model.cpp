#include "junction/model.hpp"

#include <cmath>
#include <stdexcept>

namespace junction {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

}  // namespace

ChainSpec ChainSpec::uniform(int n_sites, double coupling, double nonlinearity, int boson_cutoff) {
  ChainSpec chain;
  chain.n_sites = n_sites;
  chain.bond_couplings.assign(n_sites > 1 ? n_sites - 1 : 0, coupling);
  chain.onsite_nonlinearity = nonlinearity;
  chain.boson_cutoff = boson_cutoff;
  return chain;
}

void ChainSpec::validate() const {
  require(n_sites >= 2, "chain needs at least two sites");
  require(static_cast<int>(bond_couplings.size()) == n_sites - 1,
          "chain needs exactly n_sites - 1 bond couplings");
  for (double j : bond_couplings) require(std::isfinite(j), "bond coupling is not finite");
  require(std::isfinite(onsite_nonlinearity), "onsite nonlinearity is not finite");
  require(boson_cutoff >= 1, "boson cutoff must be at least 1");
}

double DriveSpec::ac_factor(double t) const {
  return ac_amplitude * std::cos(angular_frequency * (t - time_origin) + phase);
}

void DriveSpec::validate(int n_sites) const {
  require(std::isfinite(angular_frequency) && angular_frequency > 0, "drive frequency must be positive");
  require(std::isfinite(dc_amplitude) && std::isfinite(ac_amplitude), "drive amplitudes must be finite");
  require(driven_sites.empty() || (driven_sites.first >= 1 && driven_sites.last <= n_sites),
          "driven sites outside the chain");
  require(static_cast<int>(spatial_profile.size()) == n_sites, "spatial profile needs one weight per site");
  for (double w : spatial_profile) require(std::isfinite(w), "spatial weight is not finite");
}

std::vector<double> cosine_profile(int n_sites, int index_origin) {
  std::vector<double> profile(n_sites);
  for (int l = 1; l <= n_sites; ++l) {
    profile[l - 1] = std::cos(2.0 * kTwoPi * (l - index_origin) / n_sites);
  }
  return profile;
}

DriveSpec make_drive(int n_sites, double dc_amplitude, double ac_amplitude, double angular_frequency,
                     SiteRange driven_sites, int index_origin) {
  DriveSpec drive;
  drive.dc_amplitude = dc_amplitude;
  drive.ac_amplitude = ac_amplitude;
  drive.angular_frequency = angular_frequency;
  drive.driven_sites = driven_sites;
  drive.spatial_profile = cosine_profile(n_sites, index_origin);
  for (int l = 1; l <= n_sites; ++l) {
    if (!driven_sites.contains(l)) drive.spatial_profile[l - 1] = 0.0;
  }
  return drive;
}

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "cosine") return ProfileKind::cosine;
  if (name == "flat") return ProfileKind::flat;
  if (name == "table") return ProfileKind::table;
  throw std::invalid_argument("unknown profile '" + name + "' (expected cosine|flat|table)");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::cosine: return "cosine";
    case ProfileKind::flat: return "flat";
    case ProfileKind::table: return "table";
  }
  return "?";
}

double frequency_at(int site, double t, const DriveSpec& drive, const PotentialSpec& potential) {
  const int n = static_cast<int>(potential.static_offsets.size());
  if (site < 1 || site > n) throw std::out_of_range("site index " + std::to_string(site) + " outside 1.." + std::to_string(n));
  double value = potential.static_offsets[site - 1];
  if (drive.driven_sites.contains(site)) value += drive.ac_factor(t) * drive.spatial_profile[site - 1];
  return value;
}

PotentialSpec build_potential(int n_sites, const BackgroundProfile& profile, double dc_amplitude,
                              double frame_frequency, std::span<const double> disorder) {
  require(n_sites >= 2, "potential needs at least two sites");
  require(disorder.empty() || static_cast<int>(disorder.size()) == n_sites,
          "disorder vector needs one value per site");

  PotentialSpec potential;
  potential.rotating_frame_frequency = frame_frequency;
  auto& offsets = potential.static_offsets;

  switch (profile.kind) {
    case ProfileKind::cosine:
    case ProfileKind::flat: {
      offsets = cosine_profile(n_sites, profile.index_origin);
      for (double& g : offsets) g *= dc_amplitude;
      if (profile.kind == ProfileKind::flat) {
        for (int l = 1; l <= n_sites; ++l) {
          if (profile.flat_sites.contains(l)) offsets[l - 1] = dc_amplitude;
        }
      }
      break;
    }
    case ProfileKind::table: {
      if (static_cast<int>(profile.table_values.size()) != n_sites) {
        throw std::invalid_argument("table profile needs " + std::to_string(n_sites) + " values, got " +
                                    std::to_string(profile.table_values.size()));
      }
      offsets.resize(n_sites);
      for (int i = 0; i < n_sites; ++i) offsets[i] = profile.table_values[i] - frame_frequency;
      break;
    }
  }

  for (std::size_t i = 0; i < disorder.size(); ++i) offsets[i] += disorder[i];
  return potential;
}

double resonance_drive_frequency(int n_sites, double dc_amplitude_mhz, double coupling_mhz, int m) {
  if (n_sites < 1 || m < 1) throw std::invalid_argument("resonance needs N >= 1 and m >= 1");
  if (!(dc_amplitude_mhz > 0 && coupling_mhz > 0)) {
    throw std::invalid_argument("resonance needs positive Delta_0 and J");
  }
  const double small_oscillation = 2.0 * kTwoPi / n_sites * std::sqrt(2.0 * dc_amplitude_mhz * coupling_mhz);
  return 2.0 / m * small_oscillation;
}

void ModelConfig::validate() const {
  chain.validate();
  drive.validate(chain.n_sites);
  disorder.validate(chain.n_sites);
  require(sector >= 0 && sector <= chain.n_sites * chain.boson_cutoff, "sector out of range");
  if (background.kind == ProfileKind::table) {
    require(static_cast<int>(background.table_values.size()) == chain.n_sites,
            "table profile needs one value per site");
  }
}

Model realize(const ModelConfig& config, int realization_index) {
  const auto disorder = sample_disorder(config.disorder, config.chain.n_sites, realization_index);
  return Model{config.chain, config.drive,
               build_potential(config.chain.n_sites, config.background, config.drive.dc_amplitude,
                               config.frame_frequency, disorder)};
}

Model realize_clean(const ModelConfig& config) {
  return Model{config.chain, config.drive,
               build_potential(config.chain.n_sites, config.background, config.drive.dc_amplitude,
                               config.frame_frequency)};
}

}  // namespace junction

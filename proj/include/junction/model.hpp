#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace junction {

// Configuration files speak ordinary frequencies (MHz, GHz) and ns; the
// simulation runs in angular units (rad/ns) with hbar = 1.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kMHzToAngular = kTwoPi * 1e-3;
inline constexpr double kGHzToAngular = kTwoPi;

inline constexpr double mhz_to_angular(double mhz) { return mhz * kMHzToAngular; }
inline constexpr double ghz_to_angular(double ghz) { return ghz * kGHzToAngular; }
inline constexpr double angular_to_mhz(double w) { return w / kMHzToAngular; }

/// Inclusive, 1-based range of chain sites.
struct SiteRange {
  int first = 1;
  int last = 0;

  bool contains(int site) const { return site >= first && site <= last; }
  bool empty() const { return last < first; }
  int size() const { return empty() ? 0 : last - first + 1; }
};

/// Static chain data: site count, per-bond hopping, onsite nonlinearity.
struct ChainSpec {
  int n_sites = 0;
  std::vector<double> bond_couplings;  // J_l for bond (l, l+1), rad/ns
  double onsite_nonlinearity = 0.0;    // U, rad/ns
  int boson_cutoff = 1;                // max occupation per site

  static ChainSpec uniform(int n_sites, double coupling, double nonlinearity, int boson_cutoff);

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Periodic modulation of the driven sites. The DC part of the modulation
/// lives in PotentialSpec::static_offsets; only the AC part is carried here.
struct DriveSpec {
  double dc_amplitude = 0.0;       // Delta_0, rad/ns
  double ac_amplitude = 0.0;       // Delta_1, rad/ns
  double angular_frequency = 1.0;  // omega, rad/ns
  double phase = 0.0;
  SiteRange driven_sites{1, 6};
  std::vector<double> spatial_profile;  // one weight per site, zero off the driven range
  double time_origin = 0.0;             // t_0, ns

  double period() const { return kTwoPi / angular_frequency; }

  /// AC factor Delta_1 cos(omega (t - t_0) + phi) shared by every driven site.
  double ac_factor(double t) const;

  void validate(int n_sites) const;
};

/// cos(4 pi (l - index_origin) / N) for l = 1..N. index_origin = 0 is the
/// textbook form; index_origin = 1 reproduces the device's tabulated profile.
std::vector<double> cosine_profile(int n_sites, int index_origin = 0);

/// Drive with the cosine spatial profile restricted to `driven_sites`.
DriveSpec make_drive(int n_sites, double dc_amplitude, double ac_amplitude, double angular_frequency,
                     SiteRange driven_sites = {1, 6}, int index_origin = 0);

enum class ProfileKind { cosine, flat, table };

ProfileKind parse_profile_kind(const std::string& name);
std::string to_string(ProfileKind kind);

/// Shape of the static background, before disorder.
struct BackgroundProfile {
  ProfileKind kind = ProfileKind::cosine;
  int index_origin = 0;
  SiteRange flat_sites{7, 12};        // sites pinned to Delta_0 when kind == flat
  std::vector<double> table_values;   // absolute angular frequencies when kind == table
};

/// Static onsite energies in the rotating frame.
struct PotentialSpec {
  std::vector<double> static_offsets;    // g_l - gbar, rad/ns
  double rotating_frame_frequency = 0.0; // gbar, rad/ns; reporting only
};

/// g_l(t) - gbar for a 1-based site index.
double frequency_at(int site, double t, const DriveSpec& drive, const PotentialSpec& potential);

/// Builds static offsets. `disorder` is either empty or one value per site.
PotentialSpec build_potential(int n_sites, const BackgroundProfile& profile, double dc_amplitude,
                              double frame_frequency, std::span<const double> disorder = {});

struct DisorderSpec {
  double strength = 0.0;  // W, rad/ns
  SiteRange disordered_sites{7, 12};
  std::uint64_t master_seed = 12345;
  int realization_count = 50;

  void validate(int n_sites) const;
};

/// Seed of one realization, derived from the master seed by a counter-based mix.
std::uint64_t realization_seed(std::uint64_t master_seed, int realization_index);

/// Per-site offsets G_l ~ U[-W, W] on the disordered sites, zero elsewhere.
/// Pure function of (master_seed, realization_index, site).
std::vector<double> sample_disorder(const DisorderSpec& spec, int n_sites, int realization_index);

/// Drive frequency omega = (2/m) Omega with Omega = (4 pi / N) sqrt(2 Delta_0 J).
/// All arguments and the result are ordinary frequencies (MHz).
double resonance_drive_frequency(int n_sites, double dc_amplitude_mhz, double coupling_mhz, int m);

/// Everything needed to realize a Model for any disorder realization.
struct ModelConfig {
  ChainSpec chain;
  DriveSpec drive;
  BackgroundProfile background;
  double frame_frequency = 0.0;  // gbar, rad/ns
  DisorderSpec disorder;
  int sector = 1;

  void validate() const;
};

/// One concrete Hamiltonian family H(t).
struct Model {
  ChainSpec chain;
  DriveSpec drive;
  PotentialSpec potential;
};

/// Model with the realization's disorder folded into the static offsets.
Model realize(const ModelConfig& config, int realization_index);

/// Model without disorder.
Model realize_clean(const ModelConfig& config);

}  // namespace junction

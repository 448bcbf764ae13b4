#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "junction/floquet.hpp"
#include "junction/model.hpp"
#include "junction/observables.hpp"
#include "junction/sector.hpp"

namespace junction {

struct DynamicsRequest {
  Occupation initial;                     // initial occupation vector
  std::vector<double> times;              // sample times, ns, ascending
  int steps_per_period = 256;
  std::vector<std::pair<int, int>> pairs;  // C_ZZ pairs to record
  bool keep_realizations = false;
};

/// Occupation with a single excitation on `site` (1-based).
Occupation single_excitation(int n_sites, int site);

/// Uniform samples 0, dt, 2 dt, ... up to and including `horizon` when it is a multiple of dt.
std::vector<double> uniform_times(double horizon, double dt);

struct EnsembleResult {
  int realization_count = 0;
  std::vector<std::uint64_t> seeds;               // per-realization seeds
  ObservableSeries mean;                          // averaged over realizations
  std::vector<ObservableSeries> per_realization;  // only when requested
  int steps_per_period = 0;
};

/// Single trajectory of one concrete model.
ObservableSeries run_dynamics(const Model& model, const SectorBasis& basis, const DynamicsRequest& request);

/// Runs config.disorder.realization_count realizations on `workers` threads and
/// averages populations and correlations in realization order. A failing
/// realization aborts the whole ensemble with a WorkItemError carrying its id.
EnsembleResult run_dynamics_ensemble(const ModelConfig& config, const DynamicsRequest& request, int workers = 1);

struct SpectrumEnsemble {
  int realization_count = 0;
  std::vector<std::uint64_t> seeds;
  RatioSample pooled;  // concatenated in realization order
  std::vector<QuasienergySpectrum> spectra;  // only when requested
  int steps_per_period = 0;
};

SpectrumEnsemble run_spectrum_ensemble(const ModelConfig& config, int steps_per_period, int workers = 1,
                                       bool keep_spectra = false);

}  // namespace junction

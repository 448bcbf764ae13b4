#include "junction/ensemble.hpp"

#include <cmath>
#include <stdexcept>

#include "junction/hamiltonian.hpp"
#include "junction/parallel.hpp"
#include "junction/propagator.hpp"

namespace junction {

namespace {

SectorBasis basis_for(const ModelConfig& config) {
  return SectorBasis(config.chain.n_sites, config.sector, config.chain.boson_cutoff);
}

std::vector<std::uint64_t> seeds_for(const DisorderSpec& disorder) {
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < disorder.realization_count; ++r) seeds.push_back(realization_seed(disorder.master_seed, r));
  return seeds;
}

}  // namespace

Occupation single_excitation(int n_sites, int site) {
  if (site < 1 || site > n_sites) throw std::out_of_range("initial site " + std::to_string(site) + " outside 1.." + std::to_string(n_sites));
  Occupation v(n_sites, 0);
  v[site - 1] = 1;
  return v;
}

std::vector<double> uniform_times(double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("sample spacing must be positive");
  if (horizon < 0.0) throw std::invalid_argument("horizon must be non-negative");
  const auto count = static_cast<long>(std::floor(horizon / dt + 1e-9));
  std::vector<double> times;
  for (long k = 0; k <= count; ++k) times.push_back(static_cast<double>(k) * dt);
  return times;
}

ObservableSeries run_dynamics(const Model& model, const SectorBasis& basis, const DynamicsRequest& request) {
  if (request.steps_per_period < 1) throw std::invalid_argument("steps_per_period must be >= 1");
  const Propagator propagator{SectorHamiltonian(model, basis)};
  const double max_step = model.drive.period() / request.steps_per_period;
  const QuantumState psi0 = occupation_state(basis, request.initial);
  const auto trajectory = propagator.evolve_state(psi0, request.times, max_step);

  for (const auto& psi : trajectory) {
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw NumericalError("norm drifted to " + std::to_string(psi.norm()));
  }
  return measure_series(trajectory, request.times, basis, request.pairs);
}

EnsembleResult run_dynamics_ensemble(const ModelConfig& config, const DynamicsRequest& request, int workers) {
  config.validate();
  const SectorBasis basis = basis_for(config);
  const int count = config.disorder.realization_count;

  std::vector<ObservableSeries> runs(count);
  parallel_for(count, workers, [&](int r) { runs[r] = run_dynamics(realize(config, r), basis, request); });

  EnsembleResult result;
  result.realization_count = count;
  result.seeds = seeds_for(config.disorder);
  result.steps_per_period = request.steps_per_period;

  ObservableSeries& mean = result.mean;
  mean.times = runs.front().times;
  mean.populations.assign(mean.times.size(), Eigen::VectorXd::Zero(config.chain.n_sites));
  for (const auto& [pair, values] : runs.front().correlations) mean.correlations[pair].assign(values.size(), 0.0);
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < mean.times.size(); ++k) mean.populations[k] += run.populations[k];
    for (const auto& [pair, values] : run.correlations) {
      auto& acc = mean.correlations[pair];
      for (std::size_t k = 0; k < values.size(); ++k) acc[k] += values[k];
    }
  }
  for (auto& p : mean.populations) p /= static_cast<double>(count);
  for (auto& [pair, values] : mean.correlations) {
    for (double& v : values) v /= static_cast<double>(count);
  }
  if (request.keep_realizations) result.per_realization = std::move(runs);
  return result;
}

SpectrumEnsemble run_spectrum_ensemble(const ModelConfig& config, int steps_per_period, int workers,
                                       bool keep_spectra) {
  config.validate();
  if (steps_per_period < 1) throw std::invalid_argument("steps_per_period must be >= 1");
  const SectorBasis basis = basis_for(config);
  const int count = config.disorder.realization_count;

  std::vector<QuasienergySpectrum> spectra(count);
  std::vector<RatioSample> samples(count);
  parallel_for(count, workers, [&](int r) {
    const SectorHamiltonian h(realize(config, r), basis);
    spectra[r] = quasienergies(floquet_operator(h, steps_per_period));
    samples[r] = gap_ratios(spectra[r], r);
  });

  SpectrumEnsemble result;
  result.realization_count = count;
  result.seeds = seeds_for(config.disorder);
  result.pooled = pool_ratios(samples);
  result.steps_per_period = steps_per_period;
  if (keep_spectra) result.spectra = std::move(spectra);
  return result;
}

}  // namespace junction

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "junction/propagator.hpp"

namespace junction {

/// Quasienergies folded into the zone (-omega/2, omega/2], ascending.
struct QuasienergySpectrum {
  std::vector<double> values;
  double drive_angular_frequency = 0.0;
};

struct RatioSample {
  std::vector<double> ratios;
  int discarded_degenerate = 0;
  std::vector<int> source_realizations;  // realization id of each ratio

  bool empty() const { return ratios.empty(); }
  std::size_t size() const { return ratios.size(); }
  double mean() const;
};

/// Eigenphases of F mapped to epsilon = -theta / T. Throws NumericalError if
/// any eigenvalue leaves the unit circle by more than 1e-9.
QuasienergySpectrum quasienergies(const FloquetOperator& floquet);

/// Folds an energy into (-omega/2, omega/2].
double fold_quasienergy(double energy, double omega);

/// Ratios min(d_a, d_a+1) / max(d_a, d_a+1) of consecutive gaps on the sorted
/// (non-circular) level sequence. Gaps below 1e-12 omega drop the ratios that
/// use them and are counted in discarded_degenerate.
RatioSample gap_ratios(const QuasienergySpectrum& spectrum, int realization_id = 0);

/// Concatenates per-realization samples in the given order.
RatioSample pool_ratios(std::span<const RatioSample> samples);

double poisson_density(double r);
double poisson_cdf(double r);
/// 2 ln 2 - 1
double poisson_mean();

/// Closed-form COE ratio density, kept verbatim. It diverges like
/// -1/(3 pi r^2) as r -> 0 and is not a probability density; see
/// check_printed_coe.
double coe_density(double r);

/// Integral of r P_COE(r) over [r_min, 1].
double coe_mean(double r_min = 1e-3);

struct CoeFormulaCheck {
  double r_min = 0;
  double normalization = 0;  // integral of P_COE over [r_min, 1]
  double min_density = 0;    // smallest value on [r_min, 1]
  bool valid = false;        // |normalization - 1| < tolerance and density >= 0
};

/// Decides whether the closed form is usable as a reference density.
/// When it is not, the empirical COE sampler is the reference.
CoeFormulaCheck check_printed_coe(double r_min = 1e-3, double tolerance = 1e-2);

/// Gap ratios of `count` COE matrices S = W^T W with W Haar-distributed on
/// U(dim). Matrix k draws from its own stream derived from (seed, k).
RatioSample sample_coe_reference(int dim, int count, std::uint64_t seed, int workers = 1);

/// Kolmogorov-Smirnov sup distance to an analytic CDF.
double ks_distance(const RatioSample& sample, const std::function<double(double)>& cdf);
/// Two-sample Kolmogorov-Smirnov sup distance.
double ks_distance(const RatioSample& sample, const RatioSample& reference);

struct HistogramRow {
  double lo = 0, hi = 0;
  double empirical = 0;
  double poisson = 0;
  double coe = 0;
};

/// Density histogram on [0, 1] with the bin-averaged Poisson density and the
/// COE reference sample binned the same way.
std::vector<HistogramRow> ratio_histogram(const RatioSample& sample, const RatioSample& coe_reference, int bins);

}  // namespace junction

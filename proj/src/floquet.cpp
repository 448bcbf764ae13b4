#include "junction/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "junction/model.hpp"
#include "junction/parallel.hpp"

namespace junction {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateGap = 1e-12;

double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
// R's diagonal moved into Q.
Eigen::MatrixXcd haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int k = 0; k < dim; ++k) {
    const double magnitude = std::abs(r(k, k));
    q.col(k) *= magnitude > 0 ? r(k, k) / magnitude : cplx(1.0);
  }
  return q;
}

}  // namespace

double RatioSample::mean() const {
  if (ratios.empty()) return 0.0;
  return std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
}

double fold_quasienergy(double energy, double omega) {
  return energy - omega * std::ceil((energy - 0.5 * omega) / omega);
}

QuasienergySpectrum quasienergies(const FloquetOperator& floquet) {
  const double defect = floquet.unitary.unitarity_defect();
  if (defect > 1e-9) throw NumericalError("Floquet operator is not unitary (defect " + std::to_string(defect) + ")");

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(floquet.unitary.matrix, false);
  if (solver.info() != Eigen::Success) throw NumericalError("Floquet eigendecomposition failed");

  const double omega = kTwoPi / floquet.period;
  QuasienergySpectrum spectrum;
  spectrum.drive_angular_frequency = omega;
  for (const cplx& lambda : solver.eigenvalues()) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-9) {
      throw NumericalError("Floquet eigenvalue off the unit circle: |lambda| = " + std::to_string(std::abs(lambda)));
    }
    spectrum.values.push_back(fold_quasienergy(-std::arg(lambda) / floquet.period, omega));
  }
  std::sort(spectrum.values.begin(), spectrum.values.end());
  return spectrum;
}

RatioSample gap_ratios(const QuasienergySpectrum& spectrum, int realization_id) {
  const auto& e = spectrum.values;
  if (e.size() < 3) throw std::invalid_argument("gap ratios need at least three levels");
  const double threshold = kDegenerateGap * spectrum.drive_angular_frequency;

  RatioSample sample;
  for (std::size_t a = 0; a + 2 < e.size(); ++a) {
    const double d0 = e[a + 1] - e[a];
    const double d1 = e[a + 2] - e[a + 1];
    if (d0 < threshold || d1 < threshold) {
      ++sample.discarded_degenerate;
      continue;
    }
    sample.ratios.push_back(std::min(d0, d1) / std::max(d0, d1));
    sample.source_realizations.push_back(realization_id);
  }
  return sample;
}

RatioSample pool_ratios(std::span<const RatioSample> samples) {
  RatioSample pooled;
  for (const auto& s : samples) {
    pooled.ratios.insert(pooled.ratios.end(), s.ratios.begin(), s.ratios.end());
    pooled.source_realizations.insert(pooled.source_realizations.end(), s.source_realizations.begin(),
                                      s.source_realizations.end());
    pooled.discarded_degenerate += s.discarded_degenerate;
  }
  return pooled;
}

double poisson_density(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("ratio outside [0, 1]");
  return 2.0 / ((1.0 + r) * (1.0 + r));
}

double poisson_cdf(double r) {
  r = std::clamp(r, 0.0, 1.0);
  return 2.0 * r / (1.0 + r);
}

double poisson_mean() { return 2.0 * std::numbers::ln2 - 1.0; }

double coe_density(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::domain_error("printed COE density needs r in (0, 1]");
  const double two_pi = 2.0 * kPi;
  const double rp1 = r + 1.0;
  const double first = std::sin(two_pi * r / rp1) / (two_pi * r * r) + 1.0 / (rp1 * rp1) + std::sin(two_pi / rp1) / two_pi;
  const double second = std::cos(two_pi / rp1) / (two_pi * r * r) + std::cos(two_pi * r / rp1) / (r * rp1);
  return 2.0 / 3.0 * first - 2.0 / 3.0 * second;
}

double coe_mean(double r_min) {
  return integrate([](double r) { return r * coe_density(r); }, r_min, 1.0);
}

CoeFormulaCheck check_printed_coe(double r_min, double tolerance) {
  CoeFormulaCheck check;
  check.r_min = r_min;
  check.normalization = integrate([](double r) { return coe_density(r); }, r_min, 1.0);
  check.min_density = coe_density(1.0);
  constexpr int kScan = 2000;
  for (int k = 0; k <= kScan; ++k) {
    const double r = r_min + (1.0 - r_min) * k / kScan;
    check.min_density = std::min(check.min_density, coe_density(r));
  }
  check.valid = std::abs(check.normalization - 1.0) < tolerance && check.min_density >= 0.0;
  return check;
}

RatioSample sample_coe_reference(int dim, int count, std::uint64_t seed, int workers) {
  if (dim < 4) throw std::invalid_argument("COE reference needs dim >= 4");
  if (count < 1) throw std::invalid_argument("COE reference needs at least one matrix");

  std::vector<RatioSample> per_matrix(count);
  parallel_for(count, workers, [&](int k) {
    std::mt19937_64 rng(realization_seed(seed, k));
    const Eigen::MatrixXcd w = haar_unitary(dim, rng);
    const Eigen::MatrixXcd s = w.transpose() * w;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(s, false);
    if (solver.info() != Eigen::Success) throw NumericalError("COE eigendecomposition failed");
    QuasienergySpectrum phases;
    phases.drive_angular_frequency = kTwoPi;
    for (const cplx& lambda : solver.eigenvalues()) phases.values.push_back(std::arg(lambda));
    std::sort(phases.values.begin(), phases.values.end());
    per_matrix[k] = gap_ratios(phases, k);
  });
  return pool_ratios(per_matrix);
}

double ks_distance(const RatioSample& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::vector<double> x = sample.ratios;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_distance(const RatioSample& sample, const RatioSample& reference) {
  if (sample.empty() || reference.empty()) throw std::invalid_argument("KS distance of an empty sample");
  std::vector<double> a = sample.ratios, b = reference.ratios;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

std::vector<HistogramRow> ratio_histogram(const RatioSample& sample, const RatioSample& coe_reference, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  auto density = [bins](const std::vector<double>& values) {
    std::vector<double> counts(bins, 0.0);
    for (double r : values) {
      const int b = std::min(bins - 1, static_cast<int>(r * bins));
      counts[std::max(b, 0)] += 1.0;
    }
    const double norm = values.empty() ? 0.0 : static_cast<double>(bins) / static_cast<double>(values.size());
    for (double& c : counts) c *= norm;
    return counts;
  };
  const auto empirical = density(sample.ratios);
  const auto coe = density(coe_reference.ratios);

  std::vector<HistogramRow> rows(bins);
  for (int b = 0; b < bins; ++b) {
    auto& row = rows[b];
    row.lo = static_cast<double>(b) / bins;
    row.hi = static_cast<double>(b + 1) / bins;
    row.empirical = empirical[b];
    row.poisson = (poisson_cdf(row.hi) - poisson_cdf(row.lo)) * bins;
    row.coe = coe[b];
  }
  return rows;
}

}  // namespace junction

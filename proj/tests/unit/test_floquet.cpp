#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "junction/floquet.hpp"

using namespace junction;
using cplx = std::complex<double>;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

// Printed closed form, re-typed independently of the library.
double printed_coe(double r) {
  const double pi = std::numbers::pi;
  const double a = 2 * pi * r / (r + 1), b = 2 * pi / (r + 1);
  return 2.0 / 3 * (std::sin(a) / (2 * pi * r * r) + 1 / std::pow(r + 1, 2) + std::sin(b) / (2 * pi) -
                    std::cos(b) / (2 * pi * r * r) - std::cos(a) / (r * (r + 1)));
}

RatioSample poisson_sample(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RatioSample s;
  for (int k = 0; k < count; ++k) {
    const double x = u(rng);
    s.ratios.push_back(x / (2 - x));
  }
  return s;
}

QuasienergySpectrum levels(std::vector<double> values, double omega = 100.0) {
  return QuasienergySpectrum{std::move(values), omega};
}

}  // namespace

TEST_CASE("quasienergies") {
  SUBCASE("identity") {
    FloquetOperator f{UnitaryMatrix{Eigen::MatrixXcd::Identity(5, 5)}, 50.0, 1};
    for (double e : quasienergies(f).values) CHECK(e == doctest::Approx(0.0));
  }
  SUBCASE("static limit folds the static spectrum") {
    auto config = fixtures::paper_config(ProfileKind::flat, 4.0, 2, 2);
    config.drive.ac_amplitude = 0.0;
    const SectorBasis b(12, 2, 2);
    const SectorHamiltonian h(realize(config, 1), b);
    const auto spectrum = quasienergies(floquet_operator(h, 4));
    const double omega = config.drive.angular_frequency;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.at(0.0));
    std::vector<double> folded;
    for (double e : es.eigenvalues()) {
      double x = std::fmod(e, omega);
      if (x > omega / 2) x -= omega;
      if (x <= -omega / 2) x += omega;
      folded.push_back(x);
    }
    std::sort(folded.begin(), folded.end());
    REQUIRE(folded.size() == spectrum.values.size());
    double worst = 0;
    for (std::size_t k = 0; k < folded.size(); ++k) worst = std::max(worst, std::abs(folded[k] - spectrum.values[k]));
    CHECK(worst < 1e-8);
  }
  SUBCASE("driven junction") {
    const auto config = fixtures::paper_config();
    const SectorHamiltonian h(realize_clean(config), SectorBasis(12, 1, 2));
    const auto s = quasienergies(floquet_operator(h, 256));
    CHECK(s.values.size() == 12);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    for (double e : s.values) {
      CHECK(e > -s.drive_angular_frequency / 2);
      CHECK(e <= s.drive_angular_frequency / 2);
    }
  }
  SUBCASE("non-unitary input") {
    FloquetOperator f{UnitaryMatrix{1.01 * Eigen::MatrixXcd::Identity(3, 3)}, 50.0, 1};
    CHECK_THROWS_AS(quasienergies(f), NumericalError);
  }
  SUBCASE("fold") {
    CHECK(fold_quasienergy(0.6, 1.0) == doctest::Approx(-0.4));
    CHECK(fold_quasienergy(0.5, 1.0) == doctest::Approx(0.5));
    CHECK(fold_quasienergy(-0.5, 1.0) == doctest::Approx(0.5));
    CHECK(fold_quasienergy(3.2, 1.0) == doctest::Approx(0.2));
  }
}

TEST_CASE("gap ratios") {
  CHECK(gap_ratios(levels({0, 1, 2, 3, 4})).ratios == std::vector<double>{1, 1, 1});
  CHECK(gap_ratios(levels({0, 1, 3})).ratios.front() == doctest::Approx(0.5));
  std::vector<double> twelve;
  for (int k = 0; k < 12; ++k) twelve.push_back(k * k * 0.1);
  CHECK(gap_ratios(levels(twelve)).size() == 10);
  CHECK_THROWS_AS(gap_ratios(levels({0, 1})), std::invalid_argument);

  SUBCASE("degenerate gaps are dropped and counted") {
    const auto s = gap_ratios(levels({0, 1, 1, 2.5, 3}));
    CHECK(s.discarded_degenerate == 2);
    CHECK(s.size() == 1);
    for (double r : s.ratios) CHECK(std::isfinite(r));
  }
  SUBCASE("shift invariance") {
    const auto a = gap_ratios(levels({-3, -1.2, 0.4, 0.9, 2.0}));
    const auto b = gap_ratios(levels({-2.5, -0.7, 0.9, 1.4, 2.5}));
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.ratios[k] == doctest::Approx(b.ratios[k]));
  }
  SUBCASE("pooling keeps order and provenance") {
    std::vector<RatioSample> parts{gap_ratios(levels({0, 1, 3}), 0), gap_ratios(levels({0, 1, 2, 4}), 1)};
    const auto pooled = pool_ratios(parts);
    CHECK(pooled.ratios == std::vector<double>{0.5, 1.0, 0.5});
    CHECK(pooled.source_realizations == std::vector<int>{0, 1, 1});
  }
}

TEST_CASE("Poisson reference") {
  CHECK(poisson_density(0.0) == 2.0);
  CHECK(poisson_density(1.0) == 0.5);
  CHECK_THROWS_AS(poisson_density(1.5), std::domain_error);
  CHECK(simpson(poisson_density, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(simpson([](double r) { return r * poisson_density(r); }, 0, 1) - poisson_mean()) < 1e-10);
  CHECK(poisson_mean() == doctest::Approx(0.3863).epsilon(1e-4));
  CHECK(poisson_cdf(1.0) == 1.0);
}

TEST_CASE("printed COE form") {
  for (double r : {0.05, 0.3, 0.77, 1.0}) CHECK(coe_density(r) == doctest::Approx(printed_coe(r)).epsilon(1e-13));
  CHECK(std::isfinite(coe_density(1.0)));
  CHECK_THROWS_AS(coe_density(0.0), std::domain_error);
  CHECK(coe_mean(1e-3) == doctest::Approx(simpson([](double r) { return r * printed_coe(r); }, 1e-3, 1.0, 200000)).epsilon(1e-8));

  // r^2 P(r) -> -1/(3 pi) near zero: not a density, so the sampler is the reference.
  CHECK(0.01 * 0.01 * coe_density(0.01) == doctest::Approx(-1 / (3 * std::numbers::pi)).epsilon(0.05));
  const CoeFormulaCheck check = check_printed_coe();
  CHECK_FALSE(check.valid);
  CHECK(check.min_density < 0);
}

TEST_CASE("empirical COE reference") {
  const RatioSample coe = sample_coe_reference(50, 500, 99);
  CHECK(coe.size() == 500 * 48);
  CHECK(coe.mean() >= 0.51);
  CHECK(coe.mean() <= 0.54);
  CHECK(coe.mean() - poisson_mean() > 0.1);
  const double decile = std::count_if(coe.ratios.begin(), coe.ratios.end(), [](double r) { return r < 0.1; }) /
                        static_cast<double>(coe.size());
  CHECK(decile < poisson_cdf(0.1));
  for (double r : coe.ratios) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }

  const RatioSample again = sample_coe_reference(50, 40, 99, 3);
  CHECK(again.ratios == RatioSample(sample_coe_reference(50, 40, 99, 1)).ratios);
  CHECK(std::equal(again.ratios.begin(), again.ratios.end(), coe.ratios.begin()));
  CHECK_THROWS_AS(sample_coe_reference(3, 10, 1), std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  const RatioSample p = poisson_sample(10000, 17);
  CHECK(ks_distance(p, p) == 0.0);
  CHECK(ks_distance(p, poisson_cdf) < 0.02);
  const RatioSample coe = sample_coe_reference(50, 100, 5);
  CHECK(ks_distance(p, coe) > 0.1);
  CHECK_THROWS_AS(ks_distance(RatioSample{}, poisson_cdf), std::invalid_argument);
  CHECK_THROWS_AS(ks_distance(RatioSample{}, p), std::invalid_argument);
}

TEST_CASE("histogram") {
  const RatioSample p = poisson_sample(5000, 1);
  const RatioSample coe = sample_coe_reference(20, 50, 2);
  const auto rows = ratio_histogram(p, coe, 20);
  REQUIRE(rows.size() == 20);
  double emp = 0, poi = 0, ref = 0;
  for (const auto& row : rows) {
    emp += row.empirical * (row.hi - row.lo);
    poi += row.poisson * (row.hi - row.lo);
    ref += row.coe * (row.hi - row.lo);
  }
  CHECK(emp == doctest::Approx(1.0));
  CHECK(poi == doctest::Approx(1.0));
  CHECK(ref == doctest::Approx(1.0));
  CHECK(rows.front().lo == 0.0);
  CHECK(rows.back().hi == 1.0);
  CHECK_THROWS(ratio_histogram(p, coe, 0));
}

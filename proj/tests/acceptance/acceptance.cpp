// Acceptance checks. Prints one PASS/FAIL line per criterion.
//   acceptance               run all
//   acceptance --criterion N run one

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "junction/config.hpp"
#include "junction/ensemble.hpp"
#include "junction/floquet.hpp"
#include "junction/observables.hpp"
#include "junction/parallel.hpp"
#include "junction/propagator.hpp"
#include "junction/runner.hpp"
#include "junction/semiclassical.hpp"

using namespace junction;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Settings device_settings(ProfileKind profile, double w, int initial_site) {
  Settings s;
  s.mode = ModelMode::device;
  s.potential.profile = profile;
  s.disorder.strength_j = w;
  s.dynamics.initial_site = initial_site;
  return s;
}

DynamicsRequest request_for(const Settings& s) {
  DynamicsRequest r;
  r.initial = single_excitation(s.n_sites, s.dynamics.initial_site);
  r.times = uniform_times(s.dynamics.horizon_ns, s.dynamics.sample_ns);
  r.steps_per_period = s.numerics.steps_per_period;
  return r;
}

// Time average of the summed population of sites first..last.
double window_average(const ObservableSeries& series, int first, int last) {
  double total = 0;
  for (const auto& n : series.populations) total += n.segment(first - 1, last - first + 1).sum();
  return total / static_cast<double>(series.populations.size());
}

double site_max(const ObservableSeries& series, int site) {
  double m = 0;
  for (const auto& n : series.populations) m = std::max(m, n(site - 1));
  return m;
}

ModelConfig formula_config(ProfileKind kind, double w, int sector) {
  Settings s;
  s.potential.profile = kind;
  s.disorder.strength_j = w;
  s.sector = sector;
  return resolve_model(s);
}

// C1: resonance condition and drive period.
Outcome criterion_1() {
  Outcome o;
  const double f = resonance_drive_frequency(12, 34.5, 11.5, 3);
  o.require(std::abs(f - 19.67) <= 0.01, "omega/2pi = " + fmt(f, 6) + " MHz");
  const double period = formula_config(ProfileKind::cosine, 0, 1).drive.period();
  o.require(std::abs(period - 50.84) <= 0.01, "T = " + fmt(period, 6) + " ns");
  return o;
}

// C2: unitarity, conservation, Hermiticity, convergence order, runtime.
Outcome criterion_2() {
  Outcome o;
  const ModelConfig config = formula_config(ProfileKind::cosine, 5.0, 2);
  const SectorBasis b(12, 2, 2);
  const SectorHamiltonian h(realize(config, 0), b);
  const double defect = floquet_operator(h, 256).unitary.unitarity_defect();
  o.require(defect < 1e-10, "unitarity " + fmt(defect, 2));

  Occupation v(12, 0);
  v[2] = v[8] = 1;
  const Propagator prop(h);
  const auto times = uniform_times(150, 1);
  const auto traj = prop.evolve_state(occupation_state(b, v), times, h.period() / 256);
  double norm_err = 0, n_err = 0;
  for (const auto& psi : traj) {
    norm_err = std::max(norm_err, std::abs(psi.norm() - 1));
    n_err = std::max(n_err, std::abs(populations(psi, b).sum() - 2));
  }
  o.require(norm_err < 1e-9 && n_err < 1e-9, "norm " + fmt(norm_err, 2) + ", excitations " + fmt(n_err, 2));

  double herm = 0;
  for (double t = 0; t < 2 * h.period(); t += 1.37) {
    const auto m = hamiltonian_at(t, realize(config, 0), b).matrix;
    herm = std::max(herm, (m - m.adjoint()).cwiseAbs().maxCoeff());
  }
  o.require(herm < 1e-12, "hermiticity " + fmt(herm, 2));

  const SectorHamiltonian h1(realize_clean(formula_config(ProfileKind::cosine, 0, 1)), SectorBasis(12, 1, 2));
  const auto reference = floquet_operator(h1, 8192).unitary.matrix;
  const double e64 = (floquet_operator(h1, 64).unitary.matrix - reference).cwiseAbs().maxCoeff();
  const double e128 = (floquet_operator(h1, 128).unitary.matrix - reference).cwiseAbs().maxCoeff();
  const double slope = std::log2(e64 / e128);
  o.require(slope >= 1.8 && slope <= 2.2, "order " + fmt(slope, 3));

  const auto start = std::chrono::steady_clock::now();
  Settings s;
  s.disorder.strength_j = 3.0;
  run_dynamics_ensemble(resolve_model(s), request_for(s), 1);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds < 60, "R=50 ensemble " + fmt(seconds, 3) + " s");
  return o;
}

// C3: two-site Rabi and three-site chain against closed forms.
Outcome criterion_3() {
  Outcome o;
  const double j = mhz_to_angular(11.5);
  Model m;
  m.chain = ChainSpec::uniform(2, j, 0.0, 1);
  m.drive = make_drive(2, 0.0, 0.0, mhz_to_angular(19.67), {1, 1});
  m.potential.static_offsets = {0.0, 0.0};
  const SectorBasis b2(2, 1, 1);
  const auto times = uniform_times(150, 0.5);
  const auto traj = Propagator(SectorHamiltonian(m, b2)).evolve_state(fock_state(b2, 1), times, m.drive.period() / 256);
  double rabi = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    rabi = std::max(rabi, std::abs(populations(traj[k], b2)(1) - std::pow(std::sin(j * times[k]), 2)));
  }
  o.require(rabi < 1e-8, "Rabi " + fmt(rabi, 2));

  m.chain = ChainSpec::uniform(3, j, 0.0, 1);
  m.drive = make_drive(3, 0.0, 0.0, mhz_to_angular(19.67), {1, 1});
  m.potential.static_offsets = {0.0, 0.0, 0.0};
  const SectorBasis b3(3, 1, 1);
  const auto traj3 = Propagator(SectorHamiltonian(m, b3)).evolve_state(fock_state(b3, 1), times, 1.0);
  double chain = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    // |c_3|^2 = sin^4(sqrt2 J t / 2) for the uniform three-site chain
    const double expected = std::pow(std::sin(std::numbers::sqrt2 * j * times[k] / 2), 4);
    chain = std::max(chain, std::abs(populations(traj3[k], b3)(2) - expected));
  }
  o.require(chain < 1e-8, "three-site " + fmt(chain, 2));
  return o;
}

// C4: static Floquet spectrum equals the folded static spectrum.
Outcome criterion_4() {
  Outcome o;
  ModelConfig config = formula_config(ProfileKind::flat, 3.0, 2);
  config.drive.ac_amplitude = 0.0;
  const SectorHamiltonian h(realize(config, 0), SectorBasis(12, 2, 2));
  const auto spectrum = quasienergies(floquet_operator(h, 4));
  const double omega = config.drive.angular_frequency;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.at(0.0));
  std::vector<double> folded;
  for (double e : es.eigenvalues()) {
    double x = e - omega * std::round(e / omega);
    if (x <= -omega / 2) x += omega;
    folded.push_back(x);
  }
  std::sort(folded.begin(), folded.end());
  double dist = 0;
  for (std::size_t k = 0; k < folded.size(); ++k) {
    // circular distance
    const double d = std::abs(folded[k] - spectrum.values[k]);
    dist = std::max(dist, std::min(d, omega - d));
  }
  o.require(folded.size() == spectrum.values.size() && dist < 1e-8, "set distance " + fmt(dist, 2));
  return o;
}

// C5: Poisson mean by quadrature, empirical COE reference, printed COE form.
Outcome criterion_5() {
  Outcome o;
  const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double r) { return r * 2.0 / std::pow(1 + r, 2); }, 0.0, 1.0, 10, 1e-14);
  const double exact = 2 * std::log(2.0) - 1;
  o.require(std::abs(quad - exact) < 1e-10 && std::abs(poisson_mean() - exact) < 1e-10,
            "Poisson <r> " + fmt(poisson_mean(), 10));

  const RatioSample coe = sample_coe_reference(50, 500, 20240601);
  const double mean = coe.mean();
  o.require(mean >= 0.51 && mean <= 0.54, "COE <r> " + fmt(mean, 4));
  const double decile =
      std::count_if(coe.ratios.begin(), coe.ratios.end(), [](double r) { return r < 0.1; }) / double(coe.size());
  o.require(decile < poisson_cdf(0.1), "P(r<0.1) COE " + fmt(decile, 3) + " vs Poisson " + fmt(poisson_cdf(0.1), 3));

  const CoeFormulaCheck check = check_printed_coe();
  o.detail << "; printed closed form: normalization " << fmt(check.normalization) << ", min " << fmt(check.min_density)
           << (check.valid ? " (valid)" : " (not a density; empirical reference used)");
  return o;
}

// C6: gap-ratio statistics across the ergodic/localized crossover (flat localized domain, n = 1).
Outcome criterion_6() {
  Outcome o;
  const RatioSample coe = sample_coe_reference(50, 500, 20240601, default_worker_count());
  std::map<int, RatioSample> pooled;
  for (int w : {3, 10}) {
    Settings s = device_settings(ProfileKind::flat, w, 3);
    s.disorder.realizations = 200;
    const ModelConfig config = resolve_model(s);
    pooled[w] = run_spectrum_ensemble(config, 256, default_worker_count()).pooled;
  }
  const double m3 = pooled[3].mean(), m10 = pooled[10].mean();
  const double p3 = ks_distance(pooled[3], poisson_cdf), c3 = ks_distance(pooled[3], coe);
  const double p10 = ks_distance(pooled[10], poisson_cdf), c10 = ks_distance(pooled[10], coe);
  o.require(m3 - m10 >= 0.06, "<r>(3J) - <r>(10J) = " + fmt(m3, 4) + " - " + fmt(m10, 4) + " = " + fmt(m3 - m10, 3));
  o.require(p10 < c10, "W=10J KS Poisson " + fmt(p10, 3) + " < COE " + fmt(c10, 3));
  o.require(c3 < p3, "W=3J KS COE " + fmt(c3, 3) + " < Poisson " + fmt(p3, 3));
  return o;
}

// C7: transport into the localized domain and its suppression by disorder.
Outcome criterion_7() {
  Outcome o;
  const int workers = default_worker_count();
  {
    const Settings s = device_settings(ProfileKind::cosine, 0, 3);
    const ObservableSeries series = run_dynamics(realize_clean(resolve_model(s)), SectorBasis(12, 1, 2), request_for(s));
    const double n8 = site_max(series, 8), n11 = site_max(series, 11);
    o.require(n8 >= 3 * n11, "cosine W=0 max n8 " + fmt(n8, 3) + " vs max n11 " + fmt(n11, 3));
  }
  {
    const Settings s = device_settings(ProfileKind::flat, 0, 3);
    const ObservableSeries series = run_dynamics(realize_clean(resolve_model(s)), SectorBasis(12, 1, 2), request_for(s));
    const double n12 = site_max(series, 12);
    o.require(n12 > 0.05, "flat W=0 max n12 " + fmt(n12, 3));
  }
  for (ProfileKind kind : {ProfileKind::cosine, ProfileKind::flat}) {
    const Settings clean = device_settings(kind, 0, 3), dirty = device_settings(kind, 5, 3);
    const double a = window_average(run_dynamics_ensemble(resolve_model(clean), request_for(clean), workers).mean, 9, 12);
    const double b = window_average(run_dynamics_ensemble(resolve_model(dirty), request_for(dirty), workers).mean, 9, 12);
    o.require(b < a, to_string(kind) + " sites 9-12 W=5J " + fmt(b, 3) + " < W=0 " + fmt(a, 3));
  }
  return o;
}

// C8: one-way transport across the junction.
Outcome criterion_8() {
  Outcome o;
  const int workers = default_worker_count();
  const Settings s3 = device_settings(ProfileKind::cosine, 3, 3), s10 = device_settings(ProfileKind::cosine, 10, 3);
  const double a = window_average(run_dynamics_ensemble(resolve_model(s3), request_for(s3), workers).mean, 7, 12);
  const double b = window_average(run_dynamics_ensemble(resolve_model(s10), request_for(s10), workers).mean, 7, 12);
  o.require(a > b, "init 3: sites 7-12 W=3J " + fmt(a, 3) + " > W=10J " + fmt(b, 3));
  const Settings s9 = device_settings(ProfileKind::cosine, 3, 9);
  const double c = window_average(run_dynamics_ensemble(resolve_model(s9), request_for(s9), workers).mean, 1, 6);
  o.require(c < 0.25, "init 9: sites 1-6 " + fmt(c, 3) + " < 0.25");
  return o;
}

// C9: semiclassical frequency, stability map and operating point.
Outcome criterion_9() {
  Outcome o;
  const Settings s;
  const SemiclassicalParams base = resolve_semiclassical(s);
  const double big = base.small_oscillation_frequency();

  SemiclassicalParams undriven = base;
  undriven.ac_amplitude = 0.0;
  const double measured = measured_oscillation_frequency(undriven);
  o.require(std::abs(measured / big - 1) < 1e-3, "Omega measured/predicted " + fmt(measured / big, 7));

  const int n = 200;
  const StabilityGrid grid = stability_grid(base, 3 * big, n, 2 * base.dc_amplitude, n, default_worker_count());
  const double cell = 3 * big / n;
  bool row0 = true;
  for (int j = 0; j < n; ++j) row0 = row0 && grid.stable(0, j);
  o.require(row0, "Delta_1 = 0 row stable");

  for (int m = 1; m <= 3; ++m) {
    const double target = 2 * big / m;
    double nearest = 1e300;
    for (int i = 1; i < n && grid.delta1[i] <= 0.5 * base.dc_amplitude; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!grid.stable(i, j)) nearest = std::min(nearest, std::abs(grid.omegas[j] - target));
      }
    }
    o.require(nearest <= cell, "m=" + std::to_string(m) + " tongue offset " + fmt(nearest / cell, 3) + " cells");
  }

  // every cell; the determinant of the computed entries carries ~eps |M|^2 roundoff
  Eigen::MatrixXd det_defect(n, n), scaled(n, n);
  parallel_for(n, default_worker_count(), [&](int i) {
    for (int j = 0; j < n; ++j) {
      SemiclassicalParams p = base;
      p.ac_amplitude = grid.delta1[i];
      p.angular_frequency = grid.omegas[j];
      const Eigen::Matrix2d m = monodromy_matrix(p);
      det_defect(i, j) = std::abs(m.determinant() - 1);
      scaled(i, j) = det_defect(i, j) / std::max(1.0, m.squaredNorm());
    }
  });
  const int bad = static_cast<int>((det_defect.array() >= 1e-8).count());
  o.require(bad == 0, "|det M - 1| < 1e-8 on " + std::to_string(n * n - bad) + "/" + std::to_string(n * n) +
                          " cells (max |det M - 1|/|M|^2 " + fmt(scaled.maxCoeff(), 2) + ")");

  // nearest unstable frequency around the operating point at Delta_1 = Delta_0
  const double w0 = base.angular_frequency;
  double inside = 0;
  for (int k = 1; k <= 400 && inside == 0; ++k) {
    for (double sign : {-1.0, 1.0}) {
      SemiclassicalParams p = base;
      p.angular_frequency = w0 + sign * k * cell / 100;
      if (!is_stable_trace(monodromy_trace(p))) {
        inside = p.angular_frequency;
        break;
      }
    }
  }
  const double tr = monodromy_trace(base);
  if (!is_stable_trace(tr)) {
    o.require(true, "operating point inside the m=3 tongue, |tr M| " + fmt(tr, 4));
  } else if (inside == 0) {
    o.require(false, "no unstable frequency within 4 cells of the operating point");
  } else {
    const double edge = stability_edge(base, std::min(w0, inside), std::max(w0, inside));
    const double d = std::abs(edge - w0);
    o.require(d <= cell, "operating point |tr M| " + fmt(std::abs(tr), 4) + ", " + fmt(d / cell, 3) +
                             " cells from the m=3 tongue edge");
  }
  return o;
}

// C10: outputs independent of the worker count.
Outcome criterion_10() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "junction_acceptance_c10";
  fs::remove_all(root);
  fs::create_directories(root);
  Settings s;
  s.disorder.strength_j = 3.0;
  s.disorder.realizations = 6;
  s.dynamics.keep_realizations = true;
  s.stability.n_omega = 40;
  s.stability.n_delta1 = 20;
  std::ofstream(root / "config.json") << settings_to_json(s).dump(2);

  for (const std::string command : {"dynamics", "ensemble", "spectrum", "stability", "contours", "device-check"}) {
    std::map<int, json> outputs;
    for (int workers : {1, 3}) {
      const fs::path out = root / (command + "_" + std::to_string(workers));
      const std::string cmd = "JUNCTION_WORKERS=" + std::to_string(workers) + " " + JUNCTION_CLI + " " + command +
                              " --config " + (root / "config.json").string() + " --out " + out.string() +
                              " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      std::ifstream in(out / "manifest.json");
      const json m = in ? json::parse(in) : json();
      if (status != 0 || m.is_null() || m["workers"] != workers) {
        outputs[workers] = nullptr;
      } else {
        outputs[workers] = m["outputs"];
      }
    }
    const bool same = !outputs[1].is_null() && !outputs[1].empty() && outputs[1] == outputs[3];
    o.require(same, command);
  }
  return o;
}

const std::map<int, std::function<Outcome()>> kCriteria{
    {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
    {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9}, {10, criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int k = 1; k < argc; ++k) {
    if (std::string(argv[k]) == "--criterion" && k + 1 < argc) which.push_back(std::atoi(argv[++k]));
  }
  if (which.empty()) {
    for (const auto& [id, fn] : kCriteria) which.push_back(id);
  }
  bool all = true;
  for (int id : which) {
    const auto it = kCriteria.find(id);
    if (it == kCriteria.end()) {
      std::cout << "criterion " << id << ": FAIL unknown criterion\n";
      all = false;
      continue;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail.str() << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}

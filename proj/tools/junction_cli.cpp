#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "junction/config.hpp"
#include "junction/parallel.hpp"
#include "junction/runner.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  std::optional<int> steps_per_period;
  std::optional<std::string> profile;
  std::optional<double> disorder_w;
  std::optional<int> init_site;
  std::optional<int> sector;
  std::string out = "out";
  bool keep_realizations = false;
  std::string table;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON settings file");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--realizations", o.realizations, "disorder realizations R");
  cmd->add_option("--steps-per-period", o.steps_per_period, "propagator steps per drive period");
  cmd->add_option("--profile", o.profile, "background profile")->check(CLI::IsMember({"cosine", "flat", "table"}));
  cmd->add_option("--disorder-w", o.disorder_w, "disorder strength in units of J");
  cmd->add_option("--init-site", o.init_site, "site of the initial excitation");
  cmd->add_option("--sector", o.sector, "total excitation number");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--keep-realizations", o.keep_realizations, "store per-realization series");
}

junction::Settings settings_for(const Overrides& o) {
  junction::Settings s = o.config.empty() ? junction::Settings{} : junction::load_settings(o.config);
  if (o.seed) s.disorder.seed = *o.seed;
  if (o.realizations) s.disorder.realizations = *o.realizations;
  if (o.steps_per_period) s.numerics.steps_per_period = *o.steps_per_period;
  if (o.profile) s.potential.profile = junction::parse_profile_kind(*o.profile);
  if (o.disorder_w) s.disorder.strength_j = *o.disorder_w;
  if (o.init_site) s.dynamics.initial_site = *o.init_site;
  if (o.sector) s.sector = *o.sector;
  if (o.keep_realizations) s.dynamics.keep_realizations = true;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven ergodic-localized junction simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", junction::kToolVersion);

  Overrides o;
  const std::pair<const char*, const char*> commands[] = {
      {"dynamics", "single-realization populations and C_ZZ"},
      {"ensemble", "disorder-averaged populations"},
      {"spectrum", "Floquet gap-ratio statistics"},
      {"stability", "semiclassical stability diagram"},
      {"contours", "semiclassical potential contours"},
      {"device-check", "parse and cross-check a device table"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, o);
    if (std::string(name) == "device-check") cmd->add_option("--table", o.table, "device table file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : junction::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return junction::run_command(command, [&] { return settings_for(o); }, o.out, junction::default_worker_count(),
                               std::cerr, o.table);
}

// corot2d: command-line front end (run, mms, galerkin, bglab, blowup-compare).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "corot2d/io.hpp"

namespace fs = std::filesystem;
using namespace corot2d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

struct Common {
  std::string config_path;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<double> dt, t_final, epsilon;
  std::optional<std::string> regime;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "key = value config file")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output directory");
  app->add_option("--seed", c.seed, "64-bit seed");
  app->add_option("--n", c.n, "grid points per direction");
  app->add_option("--dt", c.dt, "time step");
  app->add_option("--t-final", c.t_final, "final time");
  app->add_option("--epsilon", c.epsilon, "regularisation parameter");
  app->add_option("--regime", c.regime, "none, timederiv or diffusive")
      ->check(CLI::IsMember({"none", "timederiv", "diffusive"}));
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// shortest form that reads back to the same double, for directory names
std::string label(double x) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

ConfigFile load(const Common& c, const std::map<std::string, std::string>& defaults) {
  const std::string text = c.config_path.empty() ? std::string() : read_text_file(c.config_path);
  std::map<std::string, std::string> ov;
  if (c.seed) ov["seed"] = std::to_string(*c.seed);
  if (c.n) ov["n"] = std::to_string(*c.n);
  if (c.dt) ov["dt"] = num(*c.dt);
  if (c.t_final) ov["t_final"] = num(*c.t_final);
  if (c.epsilon) ov["epsilon"] = num(*c.epsilon);
  if (c.regime) {
    ov["regime"] = *c.regime;
    if (*c.regime == "none" && !c.epsilon) ov["epsilon"] = "0";
  }
  return parse_config_file(text, ov, defaults);
}

RunManifest start_manifest(const std::string& command) {
  RunManifest m;
  m.command = command;
  m.start_time = utc_timestamp();
  m.status = "error";
  return m;
}

void finish(RunManifest& m, const std::string& dir) {
  m.end_time = utc_timestamp();
  fs::create_directories(dir);
  write_manifest((fs::path(dir) / "manifest.json").string(), m);
}

std::unique_ptr<ManufacturedSolution> make_forcing(const ConfigFile& cfg) {
  if (!cfg.sim.forcing && cfg.sim.init.kind != InitKind::Manufactured) return nullptr;
  return std::make_unique<ManufacturedSolution>(cfg.sim.grid(), cfg.sim.reg, cfg.mms_family, cfg.mms);
}

// One simulation into `dir`; returns the exit status.
int run_into(const ConfigFile& cfg, const std::string& dir, const std::string& command) {
  RunManifest m = start_manifest(command);
  m.config = config_echo(cfg);
  m.seed = cfg.sim.seed;
  m.stepper = stepper_identity(cfg.sim);
  try {
    fs::create_directories(dir);
    const auto mms = make_forcing(cfg);
    const State init = cfg.sim.init.kind == InitKind::Manufactured
                           ? mms->initial()
                           : make_initial_state(cfg.sim.grid(), cfg.sim.init, cfg.sim.seed);
    RunHooks hooks;
    if (cfg.sim.snapshot_every > 0) {
      const fs::path snap = fs::path(dir) / "snapshots";
      fs::create_directories(snap);
      hooks.snapshot = [&, snap](const State& s, long step) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "step_%07ld_", step);
        const std::pair<const char*, const ScalarField*> comps[] = {
            {"v1", &s.v.v1}, {"v2", &s.v.v2}, {"s11", &s.s.s11}, {"s12", &s.s.s12}, {"s22", &s.s.s22}};
        for (const auto& [name, f] : comps) {
          const fs::path p = snap / (std::string(stem) + name + ".res2d");
          write_snapshot(p.string(), *f, s.t, name);
          m.outputs.push_back(fs::relative(p, dir).string());
        }
      };
    }
    const Trajectory tr = run(cfg.sim, init, cfg.sim.forcing ? mms.get() : nullptr, hooks);
    write_diag_csv(tr, (fs::path(dir) / "diagnostics.csv").string());
    m.outputs.insert(m.outputs.begin(), "diagnostics.csv");
    m.status = to_string(tr.status);
    m.blowup_time = tr.blowup_time;
    m.message = tr.message;
    finish(m, dir);
    if (tr.status == RunStatus::BlowUp) {
      std::cerr << "blow-up: " << tr.message << "\n";
      return kExitBlowUp;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    m.message = e.what();
    finish(m, dir);
    throw;
  }
}

int cmd_run(const Common& c) { return run_into(load(c, {}), c.out, "run"); }

int cmd_mms(const Common& c) {
  ConfigFile cfg = load(c, {{"n", "32"}, {"regime", "none"}, {"forcing", "true"}, {"init", "manufactured"}});
  cfg.sim.forcing = true;
  RunManifest m = start_manifest("mms");
  m.config = config_echo(cfg);
  m.seed = cfg.sim.seed;
  m.stepper = stepper_identity(cfg.sim);
  MmsLadder ladder = default_ladder(cfg.sim);
  ladder.profile = cfg.mms;
  const auto rows = manufactured_run(cfg.sim, ladder);
  fs::create_directories(c.out);
  write_text_file((fs::path(c.out) / "mms.csv").string(), mms_csv(rows));
  std::cout << mms_csv(rows);
  m.outputs = {"mms.csv"};
  m.status = "completed";
  finish(m, c.out);
  return kExitOk;
}

int cmd_galerkin(const Common& c, int levels) {
  ConfigFile cfg = load(c, {{"n", "16"}, {"regime", "diffusive"}, {"epsilon", "0.1"}, {"diag_every", "10"}});
  if (levels < 2) throw ConfigError("--levels must be >= 2");
  RunManifest m = start_manifest("galerkin");
  m.config = config_echo(cfg);
  m.seed = cfg.sim.seed;
  m.stepper = stepper_identity(cfg.sim);
  std::vector<int> ns{cfg.sim.n1};
  for (int i = 1; i < levels; ++i) ns.push_back(2 * ns.back());
  const auto rows = galerkin_ladder(cfg.sim, ns);
  fs::create_directories(c.out);
  write_text_file((fs::path(c.out) / "galerkin.csv").string(), galerkin_csv(rows));
  std::cout << galerkin_csv(rows);
  m.outputs = {"galerkin.csv"};
  m.status = "completed";
  for (const auto& r : rows)
    if (r.status != "completed") {
      m.status = "blow-up";
      m.message = "rung " + std::to_string(r.n_coarse) + " aborted";
    }
  finish(m, c.out);
  return kExitOk;
}

struct LabArgs {
  int n = 64;
  int count = 100;
  double decay = 3.0;
  double amp_min = 1.0, amp_max = 1.0;
};

int cmd_bglab(const Common& c, const LabArgs& a) {
  RunManifest m = start_manifest("bglab");
  const std::uint64_t seed = c.seed.value_or(1);
  m.seed = seed;
  m.config = {{"n", std::to_string(a.n)},       {"count", std::to_string(a.count)}, {"decay", num(a.decay)},
              {"amp_min", num(a.amp_min)},      {"amp_max", num(a.amp_max)},        {"seed", std::to_string(seed)}};
  const GridPtr g = make_grid(kTwoPi, kTwoPi, a.n, a.n);
  std::string csv = "inequality,fitted_constant,heldout_max,heldout_over_fit,split_violations\n";
  std::string rows = "inequality,set,index,ratio\n";
  const std::pair<const char*, LabInequality> labs[] = {{"brezis_gallouet", LabInequality::BrezisGallouet},
                                                        {"ladyzhenskaya", LabInequality::Ladyzhenskaya},
                                                        {"agmon", LabInequality::Agmon}};
  for (const auto& [name, which] : labs) {
    const InequalityLab lab = inequality_lab(which, g, seed, a.count, a.decay, a.amp_min, a.amp_max);
    csv += std::string(name) + "," + num(lab.fitted_constant) + "," + num(lab.heldout_max) + "," +
           num(lab.heldout_over_fit) + "," + std::to_string(lab.split_violations) + "\n";
    for (std::size_t i = 0; i < lab.fit_ratios.size(); ++i)
      rows += std::string(name) + ",fit," + std::to_string(i) + "," + num(lab.fit_ratios[i]) + "\n";
    for (std::size_t i = 0; i < lab.heldout_ratios.size(); ++i)
      rows += std::string(name) + ",heldout," + std::to_string(i) + "," + num(lab.heldout_ratios[i]) + "\n";
  }
  fs::create_directories(c.out);
  write_text_file((fs::path(c.out) / "bglab.csv").string(), csv);
  write_text_file((fs::path(c.out) / "bglab_ratios.csv").string(), rows);
  std::cout << csv;
  m.outputs = {"bglab.csv", "bglab_ratios.csv"};
  m.status = "completed";
  finish(m, c.out);
  return kExitOk;
}

int cmd_blowup_compare(const Common& c) {
  Common base = c;
  base.regime.reset();
  base.epsilon.reset();
  const double eps = c.epsilon.value_or(0.1);
  const std::map<std::string, std::string> defaults = {
      {"n", "64"}, {"regime", "none"}, {"init_v_l2", "4"}, {"init_s_l2", "4"}, {"diag_every", "10"}};
  ConfigFile elastic = load(base, defaults);
  elastic.sim.reg = RegularizationKind::none();
  ConfigFile diffusive = elastic;
  diffusive.sim.reg = RegularizationKind::diffusive(eps);

  const fs::path d0 = fs::path(c.out) / "eps0";
  const fs::path d1 = fs::path(c.out) / ("eps" + label(eps));
  const int s0 = run_into(elastic, d0.string(), "blowup-compare");
  const int s1 = run_into(diffusive, d1.string(), "blowup-compare");
  std::cout << "eps0: " << (s0 == kExitBlowUp ? "blow-up" : "completed") << " (" << d0.string() << ")\n";
  std::cout << "eps" << label(eps) << ": " << (s1 == kExitBlowUp ? "blow-up" : "completed") << " (" << d1.string()
            << ")\n";
  // Blow-up is data here, not a failure.
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver for the 2D corotational elastic system and its regularisations"};
  app.require_subcommand(1);
  Common common;
  LabArgs lab;
  int levels = 3;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  add_common(run, common);
  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence ladders");
  add_common(mms, common);
  auto* gal = app.add_subcommand("galerkin", "truncation refinement ladder");
  add_common(gal, common);
  gal->add_option("--levels", levels, "number of resolutions (n, 2n, ...)");
  auto* bg = app.add_subcommand("bglab", "inequality lab (Brezis-Gallouet, Ladyzhenskaya, Agmon)");
  add_common(bg, common);
  bg->add_option("--count", lab.count, "fields per ensemble");
  bg->add_option("--decay", lab.decay, "spectral decay exponent");
  bg->add_option("--amp-min", lab.amp_min, "smallest L2 amplitude");
  bg->add_option("--amp-max", lab.amp_max, "largest L2 amplitude");
  auto* bc = app.add_subcommand("blowup-compare", "paired eps = 0 and diffusive runs from identical data");
  add_common(bc, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(common);
    if (*mms) return cmd_mms(common);
    if (*gal) return cmd_galerkin(common, levels);
    if (*bg) {
      if (common.n) lab.n = *common.n;
      return cmd_bglab(common, lab);
    }
    if (*bc) return cmd_blowup_compare(common);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

// meridian: build meridian surfaces, check their invariants, export samples.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "meridian/cli/commands.hpp"

namespace mc = meridian::cli;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<double> tol;
  std::string format;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--tol", f.tol, "tolerance override");
  sub->add_option("--format", f.format, "export format")->check(CLI::IsMember({"csv", "json", "obj"}));
}

mc::RunConfig resolve(const Flags& f, bool need_file) {
  mc::RunConfig c;
  if (!f.config.empty()) c = mc::load_config(f.config);
  else if (need_file) throw meridian::Error(meridian::Errc::ConfigError, "--config is required");
  if (!f.out.empty()) c.out = f.out;
  if (f.tol) {
    if (!(*f.tol > 0.0)) throw meridian::Error(meridian::Errc::ConfigError, "--tol must be positive");
    c.tol = f.tol;
  }
  if (!f.format.empty()) c.format = f.format;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meridian: timelike meridian surfaces in Minkowski 4-space"};
  app.require_subcommand(1);
  Flags flags;
  std::string system = "", solution = "", kappa = "";
  std::optional<int> epsilon;

  auto* gen = app.add_subcommand("generate", "sample a surface and write CSV, OBJ and a JSON summary");
  auto* ver = app.add_subcommand("verify", "check the family's defining property on a grid");
  auto* geo = app.add_subcommand("geomfuncs", "geometric functions in the isotropic frame");
  auto* pde = app.add_subcommand("pde", "residuals of a natural PDE system");
  auto* exp = app.add_subcommand("export", "write one export (csv, json or obj)");
  auto* chk = app.add_subcommand("selfcheck", "run the acceptance criteria");
  for (auto* s : {gen, ver, geo, pde, exp}) add_common(s, flags);
  pde->add_option("system", system, "syst1 | fund | degenerate");
  pde->add_option("solution", solution, "example1 | example2 | family(a,b) | separable");
  pde->add_option("--kappa", kappa, "kappa selector: const:k | sin-offset:c | poly:c0,c1,...");
  pde->add_option("--epsilon", epsilon, "epsilon for the fund system (+1 or -1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mc::kConfigError;
  }

  if (chk->parsed()) return mc::cmd_selfcheck(std::cout, std::cerr);

  mc::RunConfig cfg;
  const int rc = mc::guarded(std::cerr, [&] {
    cfg = resolve(flags, !pde->parsed());
    if (pde->parsed()) {
      mc::PdeSelection sel = cfg.pde.value_or(mc::PdeSelection{});
      if (!system.empty()) sel.system = system;
      if (!solution.empty()) sel.solution = solution;
      if (!kappa.empty()) sel.kappa = kappa;
      if (epsilon) {
        if (*epsilon != 1 && *epsilon != -1) throw meridian::Error(meridian::Errc::ConfigError, "--epsilon must be +1 or -1");
        sel.epsilon = *epsilon;
      }
      cfg.pde = sel;
    }
    return 0;
  });
  if (rc != 0) return rc;

  if (gen->parsed()) return mc::cmd_generate(cfg, std::cout, std::cerr);
  if (ver->parsed()) return mc::cmd_verify(cfg, std::cout, std::cerr);
  if (geo->parsed()) return mc::cmd_geomfuncs(cfg, std::cout, std::cerr);
  if (pde->parsed()) return mc::cmd_pde(cfg, std::cout, std::cerr);
  return mc::cmd_export(cfg, std::cout, std::cerr);
}

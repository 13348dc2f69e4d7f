#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qmemory/cli/app.hpp"
#include "qmemory/cli/commands.hpp"
#include "qmemory/cli/validation.hpp"
#include "qmemory/error.hpp"

namespace qmemory::cli {

namespace {

struct CommonFlags {
  double gamma = 0.0, m = 0.0, omega = 0.0, t_max = 0.0, eps = 0.0;
  int steps = 0;
  std::string variant, out, config;
  CLI::Option *o_gamma{}, *o_m{}, *o_omega{}, *o_t_max{}, *o_steps{}, *o_eps{}, *o_variant{}, *o_out{}, *o_config{};

  void attach(CLI::App& sub) {
    o_gamma = sub.add_option("--gamma", gamma, "relaxation rate (> 0)");
    o_m = sub.add_option("--m", m, "mean reservoir occupation (>= 0)");
    o_omega = sub.add_option("--omega", omega, "atom-atom coupling (>= 0)");
    o_t_max = sub.add_option("--t-max", t_max, "end of the time grid");
    o_steps = sub.add_option("--steps", steps, "number of time samples (>= 2)");
    o_eps = sub.add_option("--eps", eps, "classification threshold on N");
    o_variant = sub.add_option("--variant", variant, "entanglement variant: eq13|entropy");
    o_out = sub.add_option("--out", out, "output file (default: standard output)");
    o_config = sub.add_option("--config", config, "key = value config file");
  }

  // Config file first, then explicit flags on top.
  RunConfig resolve() const {
    RunConfig c;
    if (o_config->count()) apply_config_file(c, config);
    if (o_gamma->count()) c.gamma = gamma;
    if (o_m->count()) c.m = m;
    if (o_omega->count()) c.omega = omega;
    if (o_t_max->count()) c.t_max = t_max;
    if (o_steps->count()) c.steps = steps;
    if (o_eps->count()) c.eps = eps;
    if (o_variant->count()) c.variant = entangle::parse_variant(variant);
    if (o_out->count()) c.out = out;
    return c;
  }
};

struct SweepFlags {
  std::string param;
  double from = 0.0, to = 1.0;
  int points = 11;
  CLI::Option* o_param{};

  void attach(CLI::App& sub, bool required) {
    o_param = sub.add_option("--param", param, "swept parameter: gamma|m|omega");
    if (required) o_param->required();
    sub.add_option("--from", from, "first sweep value");
    sub.add_option("--to", to, "last sweep value");
    sub.add_option("--points", points, "number of sweep values (>= 1)");
  }

  std::optional<SweepSpec> resolve() const {
    if (!o_param->count()) return std::nullopt;
    return SweepSpec{parse_sweep_param(param), from, to, points};
  }
};

// Renders into memory first so that a failing command leaves no partial file.
int emit(const RunConfig& config, const std::string& text, std::ostream& out, std::ostream& err) {
  if (config.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << config.out << "' for writing\n";
    return kExitIoError;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing '" << config.out << "'\n";
    return kExitIoError;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two coupled atoms in thermal reservoirs: trace-distance backflow and entanglement"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  CommonFlags td_flags, sw_flags, blp_flags, ent_flags;
  SweepFlags sw_sweep, ent_family;
  std::optional<double> rk4_step;

  auto* td = app.add_subcommand("trace-distance", "CSV of t,D,sigma for the |10>/|00> pair");
  td_flags.attach(*td);
  auto* sw = app.add_subcommand("sweep", "long-format CSV of D(t) over a parameter sweep");
  sw_flags.attach(*sw);
  sw_sweep.attach(*sw, true);
  auto* blp = app.add_subcommand("blp", "non-Markovianity measure N and classification");
  blp_flags.attach(*blp);
  auto* ent = app.add_subcommand("entanglement", "CSV of entanglement with the structured bath");
  ent_flags.attach(*ent);
  ent_family.attach(*ent, false);
  auto* val = app.add_subcommand("validate", "cross-check closed forms against the numeric oracle");
  val->add_option("--rk4-step", rk4_step, "force the oracle RK4 step (negative control)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; everything else is a usage error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalidArguments;
  }

  try {
    std::ostringstream buffer;
    if (td->parsed()) {
      const RunConfig c = td_flags.resolve();
      cmd_trace_distance(c, buffer);
      return emit(c, buffer.str(), out, err);
    }
    if (sw->parsed()) {
      const RunConfig c = sw_flags.resolve();
      cmd_sweep(c, *sw_sweep.resolve(), buffer);
      return emit(c, buffer.str(), out, err);
    }
    if (blp->parsed()) {
      const RunConfig c = blp_flags.resolve();
      std::ostringstream intervals;
      out << cmd_blp(c, c.out.empty() ? nullptr : &intervals) << '\n';
      return c.out.empty() ? kExitOk : emit(c, intervals.str(), out, err);
    }
    if (ent->parsed()) {
      const RunConfig c = ent_flags.resolve();
      cmd_entanglement(c, ent_family.resolve(), buffer);
      return emit(c, buffer.str(), out, err);
    }
    if (val->parsed()) {
      const auto report = run_validation({rk4_step});
      print_report(report, out);
      return report.all_passed() ? kExitOk : kExitValidationFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kExitIoError : kExitInvalidArguments;
  }
  return kExitInvalidArguments;
}

}  // namespace qmemory::cli

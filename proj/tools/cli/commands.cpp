#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "dsavoid/corpus.hpp"
#include "dsavoid/error.hpp"
#include "dsavoid/verify.hpp"

namespace dsavoid::cli {

namespace fs = std::filesystem;

namespace {

// Invariant tolerances used when the demo checks its own runs.
constexpr double kDemoContainmentTol = 1e-6;

// Minimal document that verify falls back to when no scenario is given, so
// --set overrides still have something to apply to.
constexpr std::string_view kVerifyDefaults = "[workspace]\naxes = (1, 1, 1)\n[ds]\ntype = radial\ntarget = (0, 0, 0)\n[starts]\n(0, 0, 0)\n";

class InputFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Scenario load_scenario(const Invocation& inv, const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_scenario(text, inv.overrides);
  } catch (const ParseError& e) {
    throw InputFailure(path.string() + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const ValidationError& e) {
    throw InputFailure(path.string() + ": " + e.what());
  }
}

void prepare_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "'");
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string("-");
}

void print_summary(std::ostream& out, const std::string& label, const Trajectory& traj) {
  out << label << ": " << to_token(traj.outcome) << " steps=" << traj.stats.steps
      << " min_gamma_o=" << optional_real(traj.stats.min_gamma_o)
      << " max_gamma_w=" << format_real(traj.stats.max_gamma_w);
  if (traj.error) out << " error=" << to_string(*traj.error) << " (" << traj.error_message << ")";
  out << '\n';
}

void warn(std::ostream& err, const Scenario& sc) {
  for (const auto& w : scenario_warnings(sc)) err << "warning: " << w << '\n';
}

// Maps exceptions escaping a command to the exit-code contract.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputFailure& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

const fs::path& require_scenario(const Invocation& inv) {
  if (!inv.scenario) throw InputFailure(inv.command + " requires --scenario <path>");
  return *inv.scenario;
}

}  // namespace

std::string trajectory_filename(const std::string& stem, std::size_t index, SignPref sign) {
  return stem + "_" + std::to_string(index) + "_" + std::string(to_token(sign)) + ".csv";
}

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path& path = require_scenario(inv);
    const Scenario sc = load_scenario(inv, path);
    warn(err, sc);
    prepare_out_dir(inv.out);

    const std::string stem = path.stem().string();
    bool all_reached = true;
    bool any_error = false;
    for (std::size_t i = 0; i < sc.starts.size(); ++i) {
      const Trajectory traj = simulate(sc, sc.starts[i]);
      const fs::path file = inv.out / trajectory_filename(stem, i, sc.flow.sign_pref);
      auto sink = open_output(file);
      write_trajectory(traj, sink);
      print_summary(out, "start " + std::to_string(i), traj);
      all_reached = all_reached && traj.outcome == Outcome::ReachedTarget;
      any_error = any_error || traj.outcome == Outcome::Error;
    }
    if (any_error) return static_cast<int>(kRuntimeError);
    return static_cast<int>(all_reached ? kSuccess : kVerificationFailed);
  });
}

int cmd_sweep(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path& path = require_scenario(inv);
    const Scenario sc = load_scenario(inv, path);
    warn(err, sc);
    prepare_out_dir(inv.out);

    const GridSpec grid = sc.grid.value_or(GridSpec{});
    const auto samples = sweep_field(sc, grid);
    const fs::path file =
        inv.out / (path.stem().string() + "_field_" + std::string(to_token(sc.flow.sign_pref)) + ".csv");
    auto sink = open_output(file);
    write_field(samples, sink);

    std::size_t invalid = 0;
    for (const auto& s : samples) invalid += s.mode ? 0 : 1;
    out << "field: " << samples.size() << " points (" << invalid << " invalid) -> "
        << file.string() << '\n';
    return static_cast<int>(kSuccess);
  });
}

int cmd_verify(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = inv.scenario ? load_scenario(inv, *inv.scenario)
                                     : parse_scenario(kVerifyDefaults, inv.overrides);
    VerifyOptions options;
    options.seed = inv.seed;
    options.modulation = sc.modulation;
    options.flow = sc.flow;

    bool all_passed = true;
    for (const CheckResult& c : run_invariant_suite(options)) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << " worst=" << format_real(c.worst)
          << " tol=" << format_real(c.tolerance) << " n=" << c.samples << '\n';
      all_passed = all_passed && c.passed;
    }
    out << (all_passed ? "all checks passed" : "some checks failed") << " (seed " << inv.seed
        << ")\n";
    return static_cast<int>(all_passed ? kSuccess : kVerificationFailed);
  });
}

int cmd_demo(const Invocation& inv, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    prepare_out_dir(inv.out);

    struct Run {
      Scenario scenario;
      Trajectory traj;
    };
    std::map<std::string, Run, std::less<>> runs;
    for (const DemoCase& c : demo_corpus()) {
      const std::string name(c.name);
      Scenario sc = parse_scenario(c.text, inv.overrides);
      Trajectory traj = simulate(sc, sc.starts.front());
      auto sink = open_output(inv.out / (name + ".csv"));
      write_trajectory(traj, sink);
      print_summary(out, name, traj);
      runs.emplace(name, Run{std::move(sc), std::move(traj)});
    }

    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
      out << (cond ? "PASS " : "FAIL ") << what << '\n';
      ok = ok && cond;
    };
    auto contained = [](const Trajectory& t) {
      return t.stats.max_gamma_w <= 1.0 + kDemoContainmentTol &&
             t.stats.min_gamma_o.value_or(1.0) >= 1.0 - kDemoContainmentTol;
    };

    const Trajectory& baseline = runs.at("wall_obstacle_only").traj;
    const Trajectory& full = runs.at("wall_full").traj;
    expect(baseline.stats.max_gamma_w > 1.0, "obstacle-only baseline leaves the workspace");
    expect(full.outcome == Outcome::ReachedTarget && contained(full),
           "full method stays contained and reaches the target");

    const Run& along = runs.at("corner_along");
    const Run& opposite = runs.at("corner_opposite");
    const Superquadric& ob = *along.scenario.obstacle;
    const Vec3 axis = ob.center - along.scenario.workspace.center;
    const double wa = winding_angle(along.traj.samples, ob.center, axis);
    const double wo = winding_angle(opposite.traj.samples, ob.center, axis);
    out << "winding: along=" << format_real(wa) << " opposite=" << format_real(wo) << '\n';
    expect(along.traj.outcome == Outcome::ReachedTarget &&
               opposite.traj.outcome == Outcome::ReachedTarget,
           "both direction preferences reach the target");
    expect(wa * wo < 0.0, "direction preferences go around the obstacle in opposite senses");
    return static_cast<int>(ok ? kSuccess : kVerificationFailed);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workspace-constrained obstacle avoidance with modulated dynamical systems",
               "dsavoid"};
  Invocation inv;
  std::vector<std::string> sets;
  std::string guard;
  std::string scenario;

  app.add_option("command", inv.command, "simulate | sweep | verify | demo")
      ->required()
      ->check(CLI::IsMember({"simulate", "sweep", "verify", "demo"}));
  app.add_option("--scenario", scenario, "Scenario file");
  app.add_option("--out", inv.out, "Output directory")->capture_default_str();
  app.add_option("--set", sets, "Override a scenario key, section.key=value (repeatable)");
  app.add_option("--seed", inv.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--guard", guard, "Containment guard")->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (!scenario.empty()) inv.scenario = scenario;
  try {
    for (const auto& s : sets) inv.overrides.push_back(parse_override(s));
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (!guard.empty()) inv.overrides.push_back({"integrator.guard", guard});

  if (inv.command == "simulate") return cmd_simulate(inv, out, err);
  if (inv.command == "sweep") return cmd_sweep(inv, out, err);
  if (inv.command == "verify") return cmd_verify(inv, out, err);
  return cmd_demo(inv, out, err);
}

}  // namespace dsavoid::cli

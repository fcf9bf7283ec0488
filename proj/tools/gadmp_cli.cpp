// gadmp: dataset generation, training, rollout, evaluation and simulations
// for geometry-aware movement primitives.
//
// Exit status: 0 success, 2 usage, 3 I/O, 4 math domain. Failures print one
// line `error: <status>: <message>` on stderr.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gadmp/datasets.hpp"
#include "gadmp/dmp.hpp"
#include "gadmp/errors.hpp"
#include "gadmp/experiments.hpp"
#include "gadmp/format.hpp"
#include "gadmp/serialization.hpp"
#include "gadmp/sim.hpp"
#include "gadmp/svg_plot.hpp"
#include "gadmp/trajectory_io.hpp"

#ifndef GADMP_FIXTURE_DIR
#define GADMP_FIXTURE_DIR "data/fixtures"
#endif

namespace fs = std::filesystem;
using namespace gadmp;
using manifolds::Descriptor;
using manifolds::Point;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitMath = 4;

int exit_code(ErrorCode code) {
  switch (category(code)) {
    case ErrorCategory::Usage: return kExitUsage;
    case ErrorCategory::Io: return kExitIo;
    case ErrorCategory::Math: return kExitMath;
  }
  return kExitMath;
}

void print_value(const std::string& key, double v) {
  std::cout << key << '=' << format_number(v) << '\n';
}

/// "<seconds>" or "<factor>tau".
double parse_time(const std::string& text, double tau) {
  std::string s = text;
  double factor = 1.0;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "tau") == 0) {
    s.resize(s.size() - 3);
    factor = tau;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) {
    fail(ErrorCode::Parse, "bad time value '" + text + "' (expected seconds or <x>tau)");
  }
  return v * factor;
}

// Gain flags shared by train and rollout. Unset values fall back to the defaults
// derived from alpha_z.
struct GainFlags {
  std::optional<double> alpha_z, beta_z, alpha_x, alpha_g, tau;

  void add(CLI::App* app) {
    app->add_option("--alpha-z", alpha_z, "Transformation gain alpha_z (default 60)");
    app->add_option("--beta-z", beta_z, "Transformation gain beta_z (default alpha_z/4)");
    app->add_option("--alpha-x", alpha_x, "Phase decay alpha_x (default 4.6052)");
    app->add_option("--alpha-g", alpha_g, "Goal-switch rate alpha_g (default alpha_z/2)");
    app->add_option("--tau", tau, "Duration tau in seconds (default: demonstration duration)");
  }

  dmp::DmpGains resolve() const {
    dmp::DmpGains g = dmp::DmpGains::from_alpha(alpha_z.value_or(dmp::kDefaultAlphaZ), tau.value_or(0.0));
    if (beta_z) g.beta_z = *beta_z;
    if (alpha_x) g.alpha_x = *alpha_x;
    if (alpha_g) g.alpha_g = *alpha_g;
    return g;
  }
};

std::optional<Descriptor> parse_manifold(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  return Descriptor::parse(spec);
}

fs::path sibling(const fs::path& out, const std::string& extension) {
  fs::path p = out;
  p.replace_extension(extension);
  return p;
}

// ---------------------------------------------------------------------------

struct GenDatasetArgs {
  std::string fixture;
  std::string manifold;
  std::optional<double> scale;
  std::string out;
  bool plot = false;
};

int cmd_gen_dataset(const GenDatasetArgs& a) {
  const Descriptor target = Descriptor::parse(a.manifold);
  const PlanarTrajectory planar = datasets::read_planar(a.fixture);
  const datasets::Benchmark bench = datasets::benchmark(planar, target, a.scale);
  const ManifoldTrajectory& traj = bench.trajectory;
  if (target.kind() != manifolds::Kind::Euclidean && target.kind() != manifolds::Kind::Spd) {
    print_value("scale", bench.scale);
  }
  io::write_trajectory(a.out, traj);
  if (a.plot) {
    serialization::write_text(sibling(a.out, ".svg"),
                              plot::trajectory_chart(traj, fs::path(a.fixture).stem().string() +
                                                               " on " + target.to_string()));
  }
  std::cout << "samples=" << traj.size() << '\n';
  print_value("geodesic_length", geodesic_length(traj));
  return 0;
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string demo;
  std::string manifold;
  std::string goal;
  GainFlags gains;
  int n_basis = dmp::kDefaultBasisCount;
  std::string solver = "ridge";
  std::string out;
};

int cmd_train(const TrainArgs& a) {
  const ManifoldTrajectory demo = io::read_trajectory(a.demo, parse_manifold(a.manifold));
  dmp::FitOptions opts;
  opts.solver = a.solver == "lwr" ? dmp::Solver::Lwr : dmp::Solver::Ridge;
  if (!a.goal.empty()) {
    const ManifoldTrajectory g = io::read_trajectory(a.goal, demo.descriptor);
    opts.goal = g.point(g.size() - 1);
  }
  const dmp::Model model = dmp::fit(demo, a.gains.resolve(), a.n_basis, opts);
  serialization::save_model(a.out, model);
  const ManifoldTrajectory rep = dmp::reproduce(model, demo);
  print_value("fit_rms", dmp::rms_distance(demo, rep));
  print_value("path_length", geodesic_length(demo));
  print_value("weights_norm", model.weights.norm());
  print_value("tau", model.gains.tau);
  return 0;
}

// ---------------------------------------------------------------------------

struct RolloutArgs {
  std::string model;
  std::string start;
  std::optional<double> tau;
  std::optional<double> alpha_g;
  std::string dt = "0.001";
  std::string duration;
  std::vector<std::string> goal_switch;
  bool plot = false;
  std::string out;
};

dmp::GoalSwitch parse_goal_switch(const std::string& spec, const dmp::Model& model) {
  const auto sep = spec.find(":goal=");
  if (spec.rfind("t=", 0) != 0 || sep == std::string::npos) {
    fail(ErrorCode::Parse, "goal switch '" + spec + "' must look like t=<s|Xtau>:goal=<path>");
  }
  const double t = parse_time(spec.substr(2, sep - 2), model.gains.tau);
  const ManifoldTrajectory g = io::read_trajectory(spec.substr(sep + 6), model.descriptor);
  return {t, g.point(g.size() - 1)};
}

int cmd_rollout(const RolloutArgs& a) {
  dmp::Model model = serialization::load_model(a.model);
  if (a.tau) model.gains.tau = *a.tau;
  if (a.alpha_g) model.gains.alpha_g = *a.alpha_g;
  model.gains.check();

  dmp::RolloutOptions opts;
  opts.dt = parse_time(a.dt, model.gains.tau);
  opts.duration = a.duration.empty() ? model.gains.tau : parse_time(a.duration, model.gains.tau);
  if (!(opts.dt > 0.0) || !(opts.duration > 0.0)) {
    fail(ErrorCode::InvalidArgument, "--dt and --duration must be positive");
  }
  for (const auto& s : a.goal_switch) opts.schedule.push_back(parse_goal_switch(s, model));
  std::sort(opts.schedule.begin(), opts.schedule.end(),
            [](const auto& x, const auto& y) { return x.t < y.t; });

  Point start = model.start;
  if (!a.start.empty()) start = io::read_trajectory(a.start, model.descriptor).point(0);

  const dmp::RolloutResult res = dmp::rollout(model, start, opts);
  io::write_trajectory(a.out, res.trajectory);
  if (a.plot) {
    serialization::write_text(sibling(a.out, ".svg"),
                              plot::trajectory_chart(res.trajectory, "rollout on " +
                                                                         model.descriptor.to_string()));
  }
  const Point target = opts.schedule.empty() ? model.goal : opts.schedule.back().goal;
  const Point last = res.trajectory.point(res.trajectory.size() - 1);
  std::cout << "samples=" << res.trajectory.size() << '\n';
  print_value("final_dist", manifolds::distance(last, target));
  return 0;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string reference;
  std::string candidate;
  std::string manifold;
  std::string out;
};

int cmd_eval(const EvalArgs& a) {
  const auto d = parse_manifold(a.manifold);
  const ManifoldTrajectory ref = io::read_trajectory(a.reference, d);
  const ManifoldTrajectory cand = io::read_trajectory(a.candidate, d ? d : ref.descriptor);
  if (!(ref.descriptor == cand.descriptor)) {
    fail(ErrorCode::DescriptorMismatch, ref.descriptor.to_string() + " vs " + cand.descriptor.to_string());
  }
  if (ref.size() != cand.size()) {
    fail(ErrorCode::InvalidArgument, "trajectories have " + std::to_string(ref.size()) + " and " +
                                         std::to_string(cand.size()) + " samples");
  }
  const bool quat = ref.descriptor.kind() == manifolds::Kind::UnitQuaternion;
  io::CsvTable table;
  table.header = {"t", "dist"};
  if (quat) table.header.insert(table.header.end(), {"eq_x", "eq_y", "eq_z"});
  double sum2 = 0.0, largest = 0.0, last = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const manifolds::TangentVector v = manifolds::log_map(cand.point(i), ref.point(i));
    last = v.norm();
    sum2 += last * last;
    largest = std::max(largest, last);
    std::vector<double> row{ref.times[i], last};
    if (quat) {
      for (int k = 0; k < 3; ++k) row.push_back(2.0 * v.coords(k));
    }
    table.rows.push_back(std::move(row));
  }
  if (!a.out.empty()) io::write_csv(a.out, table);
  const double rms = std::sqrt(sum2 / static_cast<double>(ref.size()));
  print_value("rms", rms);
  print_value("max", largest);
  print_value("final", last);
  if (quat) {
    // Quaternion error e_Q = 2 Log: twice the half-angle distance.
    print_value("eq_rms", 2.0 * rms);
    print_value("eq_max", 2.0 * largest);
    print_value("eq_final", 2.0 * last);
  }
  print_value("path_length", geodesic_length(ref));
  return 0;
}

// ---------------------------------------------------------------------------

struct SimArgs {
  std::string mode;
  double alpha = 5.0;
  std::string fixture = std::string(GADMP_FIXTURE_DIR) + "/S.csv";
  std::optional<std::string> switch_time;
  std::vector<double> switch_stiffness{200.0, 0.0, 0.0, 200.0};
  std::optional<double> alpha_z;
  int n_basis = dmp::kDefaultBasisCount;
  std::string out = ".";
};

void write_summary(const fs::path& path, double final_error, std::optional<double> mean_cost,
                   std::size_t steps, double dt) {
  // Written by hand so every number keeps 17 significant digits.
  std::string s = "{\n  \"final_error\": " + format_number(final_error) + ",\n  \"mean_cost\": " +
                  (mean_cost ? format_number(*mean_cost) : std::string("null")) +
                  ",\n  \"steps\": " + std::to_string(steps) + ",\n  \"dt\": " + format_number(dt) +
                  "\n}\n";
  serialization::write_text(path, s);
}

int cmd_sim(const SimArgs& a) {
  const fs::path dir = a.out;
  if (!fs::is_directory(dir)) fail(ErrorCode::Io, dir.string() + " is not a directory");
  if (a.mode == "msd") {
    experiments::MsdConfig cfg;
    if (a.alpha_z) cfg.alpha_z = *a.alpha_z;
    cfg.n_basis = a.n_basis;
    if (a.switch_time) {
      if (a.switch_stiffness.size() != 4) fail(ErrorCode::InvalidArgument, "--switch-stiffness needs 4 values");
      Eigen::Matrix2d k;
      k << a.switch_stiffness[0], a.switch_stiffness[1], a.switch_stiffness[2], a.switch_stiffness[3];
      cfg.stiffness_switch = std::make_pair(parse_time(*a.switch_time, cfg.tau), k);
    }
    const experiments::MsdRun run = experiments::run_msd(cfg);
    io::write_trajectory(dir / "msd_rollout.csv", run.rollout.trajectory);
    io::CsvTable trace;
    trace.header = {"t", "px", "py", "fx", "fy"};
    for (std::size_t l = 0; l < run.positions.size(); ++l) {
      trace.rows.push_back({run.rollout.trajectory.times[l], run.positions[l].x(),
                            run.positions[l].y(), run.forces[l].x(), run.forces[l].y()});
    }
    io::write_csv(dir / "msd_trace.csv", trace);
    write_summary(dir / "msd_summary.json", run.final_error, std::nullopt, run.positions.size() - 1,
                  run.dt);
    print_value("final_error", run.final_error);
    print_value("final_stiffness_dist", run.final_stiffness_distance);
    return 0;
  }
  experiments::ManipulabilityConfig cfg;
  if (a.alpha_z) cfg.alpha_z = *a.alpha_z;
  cfg.n_basis = a.n_basis;
  const PlanarTrajectory path = datasets::read_planar(a.fixture);
  const experiments::ManipulabilityRun run = experiments::run_manipulability(cfg, path, a.alpha);
  io::CsvTable joints;
  joints.header = {"t"};
  for (int i = 0; i < cfg.arm.dof(); ++i) joints.header.push_back("q" + std::to_string(i));
  joints.header.insert(joints.header.end(), {"cost", "position_error"});
  for (std::size_t l = 0; l < run.tracking.joints.size(); ++l) {
    std::vector<double> row{run.p_des.times[l]};
    for (int i = 0; i < cfg.arm.dof(); ++i) row.push_back(run.tracking.joints[l](i));
    row.push_back(run.tracking.cost[l]);
    row.push_back(run.tracking.position_error[l]);
    joints.rows.push_back(std::move(row));
  }
  io::write_csv(dir / "manipulability_trace.csv", joints);
  io::write_trajectory(dir / "manipulability_achieved.csv", run.tracking.manipulability);
  io::write_trajectory(dir / "manipulability_desired.csv", run.ups_des);
  write_summary(dir / "manipulability_summary.json", run.tracking.final_error, run.tracking.mean_cost,
                run.tracking.joints.size() - 1, run.p_des.times[1] - run.p_des.times[0]);
  print_value("mean_cost", run.tracking.mean_cost);
  print_value("final_error", run.tracking.final_error);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry-aware dynamic movement primitives"};
  app.require_subcommand(1);

  GenDatasetArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-dataset", "Lift a planar fixture onto a manifold");
  gen_cmd->add_option("--fixture", gen.fixture, "Planar CSV (t,x,y)")->required();
  gen_cmd->add_option("--manifold", gen.manifold,
                      "Target: quat, so:3, sphere:3, euclidean:2, euclidean:3 or spd:2")
      ->required();
  gen_cmd->add_option("--scale", gen.scale, "Tangent scaling (default 0.9 of the injectivity radius)");
  gen_cmd->add_option("--out", gen.out, "Output trajectory CSV")->required();
  gen_cmd->add_flag("--plot", gen.plot, "Also write an SVG next to the output");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit a primitive to a demonstration");
  train_cmd->add_option("--demo", train.demo, "Demonstration trajectory CSV")->required();
  train_cmd->add_option("--manifold", train.manifold, "Descriptor (default: from the sidecar)");
  train_cmd->add_option("--goal", train.goal, "Trajectory CSV whose last row is the goal");
  train.gains.add(train_cmd);
  train_cmd->add_option("--n-basis", train.n_basis, "Number of basis functions")->check(CLI::Range(2, 100000));
  train_cmd->add_option("--solver", train.solver, "Weight solver")->check(CLI::IsMember({"ridge", "lwr"}));
  train_cmd->add_option("--out", train.out, "Output model JSON")->required();

  RolloutArgs roll;
  auto* roll_cmd = app.add_subcommand("rollout", "Integrate a trained primitive");
  roll_cmd->add_option("--model", roll.model, "Model JSON")->required();
  roll_cmd->add_option("--start", roll.start, "Trajectory CSV whose first row is the start");
  roll_cmd->add_option("--tau", roll.tau, "Override tau");
  roll_cmd->add_option("--alpha-g", roll.alpha_g, "Override alpha_g");
  roll_cmd->add_option("--dt", roll.dt, "Step in seconds or <x>tau");
  roll_cmd->add_option("--duration", roll.duration, "Length in seconds or <x>tau (default tau)");
  roll_cmd->add_option("--goal-switch", roll.goal_switch, "t=<s|Xtau>:goal=<path>, repeatable");
  roll_cmd->add_flag("--plot", roll.plot, "Also write an SVG next to the output");
  roll_cmd->add_option("--out", roll.out, "Output trajectory CSV")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compare two trajectories sample by sample");
  eval_cmd->add_option("--reference", eval.reference, "Reference trajectory CSV")->required();
  eval_cmd->add_option("--candidate", eval.candidate, "Candidate trajectory CSV")->required();
  eval_cmd->add_option("--manifold", eval.manifold, "Descriptor (default: from the sidecar)");
  eval_cmd->add_option("--out", eval.out, "Per-sample error CSV");

  SimArgs simargs;
  auto* sim_cmd = app.add_subcommand("sim", "Run a simulation driven by a composite primitive");
  sim_cmd->add_option("mode", simargs.mode, "manipulability or msd")
      ->required()
      ->check(CLI::IsMember({"manipulability", "msd"}));
  sim_cmd->add_option("--alpha", simargs.alpha, "Null-space manipulability gain");
  sim_cmd->add_option("--fixture", simargs.fixture, "Planar path for the manipulability mode");
  sim_cmd->add_option("--switch-time", simargs.switch_time, "Stiffness goal switch time (s or <x>tau)");
  sim_cmd->add_option("--switch-stiffness", simargs.switch_stiffness, "New stiffness, row-major 2x2")
      ->expected(4);
  sim_cmd->add_option("--alpha-z", simargs.alpha_z, "Transformation gain alpha_z");
  sim_cmd->add_option("--n-basis", simargs.n_basis, "Number of basis functions")->check(CLI::Range(2, 100000));
  sim_cmd->add_option("--out", simargs.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << kExitUsage << ": " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen_dataset(gen);
    if (*train_cmd) return cmd_train(train);
    if (*roll_cmd) return cmd_rollout(roll);
    if (*eval_cmd) return cmd_eval(eval);
    if (*sim_cmd) return cmd_sim(simargs);
  } catch (const Error& e) {
    const int code = exit_code(e.code());
    std::cerr << "error: " << code << ": " << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << kExitMath << ": " << e.what() << '\n';
    return kExitMath;
  }
  return kExitUsage;
}

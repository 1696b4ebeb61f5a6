// bindcap: capacities, policy sweeps, and Monte Carlo checks for the
// n-receptor binding channel. See README.md for the spec-file schema and
// output conventions.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bindcap/capacity.hpp"
#include "bindcap/channel.hpp"
#include "bindcap/discrete.hpp"
#include "bindcap/entropy.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/mi_rate.hpp"
#include "bindcap/policy.hpp"
#include "bindcap/simulate.hpp"
#include "bindcap/spec_io.hpp"
#include "bindcap/stationary.hpp"
#include "bindcap/version.hpp"

namespace {

using namespace bindcap;
using ordered_json = nlohmann::ordered_json;

constexpr double kLn2 = 0.693147180559945309;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join_fmt(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << fmt12(v[i]);
  }
  return os.str();
}

// ---------------------------------------------------------------- reporting

using Manifest = std::vector<std::pair<std::string, std::string>>;

struct OutputOptions {
  std::string path;           // empty: stdout
  std::string format = "text";  // text | csv | json
  bool bits = false;
};

const char* unit_name(const OutputOptions& out) {
  return out.bits ? "bits" : "nats";
}

// Display-time conversion only; everything internal stays in nats.
double display(double nats, const OutputOptions& out) {
  return out.bits ? nats / kLn2 : nats;
}

void emit_report(const OutputOptions& out, const Manifest& manifest,
                 const std::string& csv_body, const std::string& text_body,
                 const ordered_json& results, double duration_s) {
  std::ostringstream os;
  if (out.format == "json") {
    ordered_json doc;
    ordered_json m = ordered_json::object();
    for (const auto& [k, v] : manifest) m[k] = v;
    m["duration_s"] = fmt12(duration_s);
    doc["manifest"] = m;
    doc["results"] = results;
    os << doc.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : manifest) os << "# " << k << '=' << v << '\n';
    os << "# duration_s=" << fmt12(duration_s) << '\n';
    os << (out.format == "csv" ? csv_body : text_body);
  }

  if (out.path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + out.path);
    f << os.str();
  }
}

// ------------------------------------------------------------- channel flags

struct ChannelFlags {
  std::string spec_path;
  std::optional<std::string> kind;
  std::optional<int> n;
  std::optional<double> alpha_l, alpha_h, beta;
};

void add_channel_flags(CLI::App* cmd, ChannelFlags& f) {
  cmd->add_option("--spec", f.spec_path,
                  "Channel spec file (JSON); explicit flags override its fields");
  cmd->add_option("--kind", f.kind, "Channel kind")
      ->check(CLI::IsMember({"independent", "cooperative", "custom"}));
  cmd->add_option("--n", f.n, "Receptor count");
  cmd->add_option("--alpha-l", f.alpha_l, "Binding rate at low input (Hz)");
  cmd->add_option("--alpha-h", f.alpha_h, "Binding rate at high input (Hz)");
  cmd->add_option("--beta", f.beta, "Unbinding rate (Hz)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--output", o.path, "Write the report to this file");
  cmd->add_option("--format", o.format, "Report format (default text)")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_flag("--bits", o.bits,
                "Display information in bits instead of nats (print-time only)");
}

struct Resolved {
  ChannelParams params;
  CapacityOptions options;
};

// File fields first, then flags on top; the optimizer block only ever comes
// from the file.
Resolved resolve_params(const ChannelFlags& f) {
  Resolved r;
  if (!f.spec_path.empty()) {
    std::ifstream in(f.spec_path);
    if (!in) throw ValidationError("cannot open channel spec file: " + f.spec_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError("malformed channel spec " + f.spec_path + ": " +
                            e.what());
    }
    r.params = params_from_json(doc);
    r.options = optimizer_options_from_json(doc, CapacityOptions{});
  }
  if (f.kind) r.params.kind = *f.kind;
  if (f.n) r.params.n = *f.n;
  if (f.alpha_l) r.params.alpha_l = *f.alpha_l;
  if (f.alpha_h) r.params.alpha_h = *f.alpha_h;
  if (f.beta) r.params.beta = *f.beta;
  return r;
}

void add_channel_manifest(Manifest& m, const BirthDeathChannel& ch) {
  m.emplace_back("kind", to_string(ch.kind()));
  m.emplace_back("n", std::to_string(ch.n()));
  if (ch.kinetics()) {
    m.emplace_back("alpha_l", fmt12(ch.kinetics()->alpha_l));
    m.emplace_back("alpha_h", fmt12(ch.kinetics()->alpha_h));
    m.emplace_back("beta", fmt12(ch.kinetics()->beta));
  } else {
    m.emplace_back("up_h", join_fmt(ch.up_h()));
    m.emplace_back("up_l", join_fmt(ch.up_l()));
    m.emplace_back("down", join_fmt(ch.down()));
  }
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// -------------------------------------------------------------- subcommands

struct CapacityArgs {
  ChannelFlags channel;
  OutputOptions out;
  std::string mode = "iid";
  int grid = 0;  // 0: keep the spec-file / built-in coarse grid
};

int run_capacity(const CapacityArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  Resolved r = resolve_params(args.channel);
  if (args.grid > 0) r.options.grid_points = args.grid;
  const BirthDeathChannel ch = build_channel(r.params);

  const CapacityResult res = (args.mode == "feedback")
                                 ? capacity_feedback(ch, r.options)
                                 : capacity_iid(ch, r.options);

  Manifest m;
  m.emplace_back("command", "capacity");
  m.emplace_back("version", kVersion);
  add_channel_manifest(m, ch);
  m.emplace_back("mode", args.mode);
  m.emplace_back("grid_points", std::to_string(r.options.grid_points));
  m.emplace_back("lhs_samples", std::to_string(r.options.lhs_samples));
  m.emplace_back("lhs_seed", std::to_string(r.options.lhs_seed));
  m.emplace_back("p_tol", fmt12(r.options.p_tol));
  m.emplace_back("units", unit_name(args.out));

  const double cap = display(res.capacity, args.out);

  std::ostringstream csv;
  csv << "quantity,value\n";
  csv << "capacity," << fmt12(cap) << '\n';
  if (res.p_star) csv << "p_star," << fmt12(*res.p_star) << '\n';
  for (size_t k = 0; k < res.argmax.p.size(); ++k) {
    csv << "p_" << k << ',' << fmt12(res.argmax.p[k]) << '\n';
  }
  csv << "iterations," << res.iterations << '\n';
  csv << "converged," << (res.converged ? 1 : 0) << '\n';
  csv << "final_step," << fmt12(res.final_step) << '\n';

  std::ostringstream text;
  text << "capacity    " << fmt12(cap) << ' ' << unit_name(args.out) << "/s\n";
  if (res.p_star) text << "p_star      " << fmt12(*res.p_star) << '\n';
  text << "argmax      " << join_fmt(res.argmax.p) << '\n';
  text << "iterations  " << res.iterations << '\n';
  text << "converged   " << (res.converged ? "yes" : "no") << '\n';
  text << "final_step  " << fmt12(res.final_step) << '\n';

  ordered_json results;
  results["capacity"] = cap;
  results["units"] = std::string(unit_name(args.out)) + "_per_second";
  if (res.p_star) results["p_star"] = *res.p_star;
  results["argmax"] = res.argmax.p;
  results["iterations"] = res.iterations;
  results["converged"] = res.converged;
  results["final_step"] = res.final_step;

  const double dur =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_report(args.out, m, csv.str(), text.str(), results, dur);

  if (!res.converged) {
    std::cerr << "warning: optimizer did not converge within the sweep limit; "
                 "the report holds the best point found\n";
    return 2;
  }
  return 0;
}

struct SweepArgs {
  ChannelFlags channel;
  OutputOptions out;
  std::string mode = "iid";
  int grid = 201;
  std::optional<double> tau;  // set: sweep the finite-step rate at this tau
  int jobs = 1;               // 0: all hardware threads
};

int run_sweep(const SweepArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  Resolved r = resolve_params(args.channel);
  const BirthDeathChannel ch = build_channel(r.params);
  const int n = ch.n();
  const int g = args.grid;
  if (g < 1) throw ValidationError("sweep needs a grid of at least 1 point");
  if (args.mode == "feedback" && n != 2) {
    throw ValidationError(
        "2-D policy sweeps are only drawable for n = 2; for other n run "
        "--mode iid (1-D sweep over the shared input probability)");
  }
  if (args.tau) check_time_step(ch, *args.tau);

  // Grid coordinates: i/(g-1), and a single-point grid sits at 0.
  auto coord = [g](int i) {
    return g == 1 ? 0.0 : static_cast<double>(i) / (g - 1);
  };

  std::vector<FeedbackPolicy> policies;
  if (args.mode == "feedback") {
    policies.reserve(static_cast<size_t>(g) * g);
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        policies.push_back(FeedbackPolicy{{coord(i), coord(j)}});
      }
    }
  } else {
    policies.reserve(static_cast<size_t>(g));
    for (int i = 0; i < g; ++i) {
      policies.push_back(FeedbackPolicy::uniform(n, coord(i)));
    }
  }

  // Pure per-point objective; points evaluate in parallel and the output
  // order never depends on the thread count. Disconnected policies (possible
  // when a low-input up-rate is zero) print as nan.
  auto eval = [&](const FeedbackPolicy& pol) -> double {
    try {
      if (args.tau) {
        return mi_rate_discrete(ch, pol, *args.tau).value / *args.tau;
      }
      return mi_rate_continuous(ch, pol).value;
    } catch (const IrreducibilityError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  std::vector<double> values(policies.size());
  const int jobs = resolve_jobs(args.jobs);
  if (jobs <= 1 || policies.size() < 2) {
    for (size_t i = 0; i < policies.size(); ++i) values[i] = eval(policies[i]);
  } else {
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t i; (i = next.fetch_add(1)) < policies.size();) {
        values[i] = eval(policies[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }

  Manifest m;
  m.emplace_back("command", "sweep");
  m.emplace_back("version", kVersion);
  add_channel_manifest(m, ch);
  m.emplace_back("mode", args.mode);
  m.emplace_back("grid", std::to_string(g));
  m.emplace_back("tau", args.tau ? fmt12(*args.tau) : "none");
  m.emplace_back("jobs", std::to_string(args.jobs));
  m.emplace_back("units", unit_name(args.out));

  const std::string value_col =
      std::string("mi_") + unit_name(args.out) + "_per_sec";
  std::ostringstream csv;
  if (args.mode == "feedback") {
    csv << "p_0,p_1," << value_col << '\n';
    for (size_t i = 0; i < policies.size(); ++i) {
      csv << fmt12(policies[i].p[0]) << ',' << fmt12(policies[i].p[1]) << ','
          << fmt12(display(values[i], args.out)) << '\n';
    }
  } else {
    csv << "p," << value_col << '\n';
    for (size_t i = 0; i < policies.size(); ++i) {
      csv << fmt12(policies[i].p[0]) << ','
          << fmt12(display(values[i], args.out)) << '\n';
    }
  }

  ordered_json results;
  results["columns"] = args.mode == "feedback"
                           ? ordered_json::array({"p_0", "p_1", value_col})
                           : ordered_json::array({"p", value_col});
  ordered_json rows = ordered_json::array();
  for (size_t i = 0; i < policies.size(); ++i) {
    ordered_json row = ordered_json::array();
    if (args.mode == "feedback") {
      row.push_back(policies[i].p[0]);
      row.push_back(policies[i].p[1]);
    } else {
      row.push_back(policies[i].p[0]);
    }
    row.push_back(display(values[i], args.out));
    rows.push_back(row);
  }
  results["rows"] = rows;

  const double dur =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // The grid is a table either way; text format prints the same rows.
  emit_report(args.out, m, csv.str(), csv.str(), results, dur);
  return 0;
}

struct SimulateArgs {
  ChannelFlags channel;
  OutputOptions out;
  std::string policy = "0.5";
  double tau = 0.0;
  std::int64_t steps = 1000000;
  std::uint64_t seed = 1;
  std::int64_t burn_in = 10000;
  std::string traj_out;
  std::string traj_format = "csv";
};

std::vector<double> parse_policy(const std::string& s, int n) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("policy entries must be numbers, got \"" + item +
                            "\"");
    }
  }
  if (vals.size() == 1) return std::vector<double>(static_cast<size_t>(n), vals[0]);
  if (static_cast<int>(vals.size()) != n) {
    std::ostringstream msg;
    msg << "policy needs 1 or " << n << " comma-separated entries, got "
        << vals.size();
    throw ValidationError(msg.str());
  }
  return vals;
}

int run_simulate(const SimulateArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  Resolved r = resolve_params(args.channel);
  const BirthDeathChannel ch = build_channel(r.params);
  const FeedbackPolicy pol{parse_policy(args.policy, ch.n())};

  SimulationConfig cfg;
  cfg.steps = args.steps;
  cfg.tau = args.tau;
  cfg.seed = args.seed;
  cfg.burn_in = args.burn_in;

  const Trajectory traj = simulate_trajectory(ch, pol, cfg);
  const EmpiricalEstimate est = estimate_mi(traj, traj.tau);
  const OccupancyTest occ = occupancy_chi_squared(traj);
  const double analytic = mi_rate_discrete(ch, pol, traj.tau).value / traj.tau;
  const double z = est.stderr_per_second > 0.0
                       ? (est.mi_per_second - analytic) / est.stderr_per_second
                       : 0.0;

  if (!args.traj_out.empty()) {
    std::ofstream f(args.traj_out, std::ios::binary);
    if (!f) throw ValidationError("cannot open trajectory file: " + args.traj_out);
    if (args.traj_format == "binary") {
      write_trajectory_binary(traj, f);
    } else {
      write_trajectory_csv(traj, f);
    }
  }

  Manifest m;
  m.emplace_back("command", "simulate");
  m.emplace_back("version", kVersion);
  add_channel_manifest(m, ch);
  m.emplace_back("policy", join_fmt(pol.p));
  m.emplace_back("tau", fmt12(args.tau));
  m.emplace_back("steps", std::to_string(args.steps));
  m.emplace_back("seed", std::to_string(args.seed));
  m.emplace_back("burn_in", std::to_string(args.burn_in));
  m.emplace_back("trajectory_out",
                 args.traj_out.empty() ? "none" : args.traj_out);
  m.emplace_back("trajectory_format", args.traj_format);
  m.emplace_back("units", unit_name(args.out));

  const double est_v = display(est.mi_per_second, args.out);
  const double err_v = display(est.stderr_per_second, args.out);
  const double ana_v = display(analytic, args.out);

  std::ostringstream csv;
  csv << "quantity,value\n";
  csv << "mi_estimate," << fmt12(est_v) << '\n';
  csv << "mi_stderr," << fmt12(err_v) << '\n';
  csv << "mi_analytic," << fmt12(ana_v) << '\n';
  csv << "z_score," << fmt12(z) << '\n';
  csv << "initial_state," << traj.initial_state << '\n';
  csv << "chi2_statistic," << fmt12(occ.statistic) << '\n';
  csv << "chi2_dof," << occ.dof << '\n';
  csv << "chi2_p_value," << fmt12(occ.p_value) << '\n';
  csv << "thin_stride," << occ.stride << '\n';
  csv << "occupancy_samples," << occ.samples << '\n';
  csv << "flagged_rows," << est.flagged_rows.size() << '\n';

  std::ostringstream text;
  text << "estimated rate   " << fmt12(est_v) << " +/- " << fmt12(err_v) << ' '
       << unit_name(args.out) << "/s\n";
  text << "analytic rate    " << fmt12(ana_v) << ' ' << unit_name(args.out)
       << "/s (finite-step rate at the same tau)\n";
  text << "z-score          " << fmt12(z) << '\n';
  text << "occupancy test   chi2 = " << fmt12(occ.statistic) << " (dof "
       << occ.dof << "), p = " << fmt12(occ.p_value) << ", stride "
       << occ.stride << ", samples " << occ.samples << '\n';
  if (!est.flagged_rows.empty()) {
    text << "warning: unvisited (state, input) rows with stationary mass > 1e-6:";
    for (const auto& [state, input] : est.flagged_rows) {
      text << " (" << state << ',' << input << ')';
    }
    text << '\n';
  }

  ordered_json results;
  results["mi_estimate"] = est_v;
  results["mi_stderr"] = err_v;
  results["mi_analytic"] = ana_v;
  results["z_score"] = z;
  results["initial_state"] = traj.initial_state;
  results["chi2"] = {{"statistic", occ.statistic},
                     {"dof", occ.dof},
                     {"p_value", occ.p_value},
                     {"stride", occ.stride},
                     {"samples", occ.samples}};
  ordered_json flagged = ordered_json::array();
  for (const auto& [state, input] : est.flagged_rows) {
    flagged.push_back(ordered_json::array({state, input}));
  }
  results["flagged_rows"] = flagged;

  const double dur =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_report(args.out, m, csv.str(), text.str(), results, dur);
  return 0;
}

struct ScalingArgs {
  ChannelFlags channel;
  OutputOptions out;
  int n_max = 10;
};

int run_scaling(const ScalingArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  Resolved r = resolve_params(args.channel);
  if (r.params.kind && *r.params.kind != "independent") {
    throw ValidationError(
        "the linear-scaling law applies to independent receptors only");
  }
  if (!r.params.alpha_l || !r.params.alpha_h || !r.params.beta) {
    throw ValidationError(
        "scaling needs kinetics: alpha_l, alpha_h and beta are all required");
  }
  // --n doubles as the top of the range here.
  const int n_max = r.params.n.value_or(args.n_max);
  const ReceptorKinetics kin{*r.params.alpha_l, *r.params.alpha_h,
                             *r.params.beta};
  validate(kin);

  const ScalingReport rep = verify_linear_scaling(kin, n_max, r.options);

  Manifest m;
  m.emplace_back("command", "scaling");
  m.emplace_back("version", kVersion);
  m.emplace_back("kind", "independent");
  m.emplace_back("n_max", std::to_string(n_max));
  m.emplace_back("alpha_l", fmt12(kin.alpha_l));
  m.emplace_back("alpha_h", fmt12(kin.alpha_h));
  m.emplace_back("beta", fmt12(kin.beta));
  m.emplace_back("units", unit_name(args.out));

  std::ostringstream csv;
  csv << "n,capacity,ratio_to_n_times_c1\n";
  for (const ScalingRow& row : rep.rows) {
    csv << row.n << ',' << fmt12(display(row.capacity, args.out)) << ','
        << fmt12(row.ratio) << '\n';
  }

  std::ostringstream text;
  text << csv.str();
  text << "max |ratio - 1|  " << fmt12(rep.max_ratio_error) << '\n';
  text << "argmax spread    " << fmt12(rep.max_p_star_spread) << '\n';
  text << "p_star           " << fmt12(rep.rows.front().p_star) << '\n';

  ordered_json results;
  results["columns"] =
      ordered_json::array({"n", "capacity", "ratio_to_n_times_c1"});
  ordered_json rows = ordered_json::array();
  for (const ScalingRow& row : rep.rows) {
    rows.push_back(ordered_json::array(
        {row.n, display(row.capacity, args.out), row.ratio}));
  }
  results["rows"] = rows;
  results["max_ratio_error"] = rep.max_ratio_error;
  results["max_p_star_spread"] = rep.max_p_star_spread;
  results["p_star"] = rep.rows.front().p_star;

  const double dur =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_report(args.out, m, csv.str(), text.str(), results, dur);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bindcap: information rates and capacities of the n-receptor "
      "binding channel (plain output; NO_COLOR is always honored)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("bindcap ") + kVersion);

  CapacityArgs cap_args;
  auto* cap = app.add_subcommand(
      "capacity", "Maximum information rate over input policies");
  add_channel_flags(cap, cap_args.channel);
  add_output_flags(cap, cap_args.out);
  cap->add_option("--mode", cap_args.mode,
                  "iid: state-independent input; feedback: per-state input")
      ->check(CLI::IsMember({"iid", "feedback"}));
  cap->add_option("--grid", cap_args.grid,
                  "Coarse-stage grid points per axis for feedback mode");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "Information rate over a grid of input policies (CSV grid)");
  add_channel_flags(sweep, sweep_args.channel);
  add_output_flags(sweep, sweep_args.out);
  sweep->add_option("--mode", sweep_args.mode,
                    "iid: 1-D sweep over p; feedback: 2-D over (p_0, p_1), "
                    "n = 2 only")
      ->check(CLI::IsMember({"iid", "feedback"}));
  sweep->add_option("--grid", sweep_args.grid, "Grid points per axis");
  sweep->add_option("--tau", sweep_args.tau,
                    "Sweep the finite-step rate at this step instead of the "
                    "small-step limit");
  sweep->add_option("--jobs", sweep_args.jobs,
                    "Worker threads (0: all hardware threads)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "Monte Carlo run with plug-in rate estimate and checks");
  add_channel_flags(sim, sim_args.channel);
  add_output_flags(sim, sim_args.out);
  sim->add_option("--policy", sim_args.policy,
                  "Input policy: one probability (shared) or n "
                  "comma-separated entries");
  sim->add_option("--tau", sim_args.tau, "Time step (s)")->required();
  sim->add_option("--steps", sim_args.steps, "Number of steps");
  sim->add_option("--seed", sim_args.seed, "Master seed");
  sim->add_option("--burn-in", sim_args.burn_in, "Discarded prefix (steps)");
  sim->add_option("--trajectory-out", sim_args.traj_out,
                  "Also write the raw trajectory to this file");
  sim->add_option("--trajectory-format", sim_args.traj_format,
                  "Trajectory file format")
      ->check(CLI::IsMember({"csv", "binary"}));

  ScalingArgs scale_args;
  auto* scale = app.add_subcommand(
      "scaling", "Capacity versus receptor count for independent binding");
  add_channel_flags(scale, scale_args.channel);
  add_output_flags(scale, scale_args.out);

  int rc = 0;
  cap->callback([&] { rc = run_capacity(cap_args); });
  sweep->callback([&] { rc = run_sweep(sweep_args); });
  sim->callback([&] { rc = run_simulate(sim_args); });
  scale->callback([&] { rc = run_scaling(scale_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}

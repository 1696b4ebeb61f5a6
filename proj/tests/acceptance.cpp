// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line (with its runtime); the process exits with the number of
// failed criteria. The CLI binary path is argv[1]; everything else runs
// against the library directly.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bindcap/capacity.hpp"
#include "bindcap/channel.hpp"
#include "bindcap/discrete.hpp"
#include "bindcap/entropy.hpp"
#include "bindcap/errors.hpp"
#include "bindcap/mi_rate.hpp"
#include "bindcap/rng.hpp"
#include "bindcap/stationary.hpp"
#include "oracles.hpp"

using namespace bindcap;
using nlohmann::json;

namespace {

std::string g_cli;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  CliResult res;
  const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

struct Criterion {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, double budget_s,
                   const std::function<void(Criterion&)>& body) {
  Criterion crit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(crit);
  } catch (const std::exception& e) {
    crit.expect(false, std::string("unexpected exception: ") + e.what());
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0.0 && dt > budget_s) {
    std::ostringstream msg;
    msg << "runtime " << dt << " s exceeded the " << budget_s << " s budget";
    crit.expect(false, msg.str());
  }
  char line[256];
  std::snprintf(line, sizeof line, "%s criterion %d: %s (%.2f s)",
                crit.ok ? "PASS" : "FAIL", number, title.c_str(), dt);
  std::cout << line << '\n';
  for (const std::string& note : crit.notes) std::cout << "    - " << note << '\n';
  if (!crit.ok) ++g_failures;
}

json parse_json_or_die(Criterion& crit, const std::string& text,
                       const std::string& what) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    crit.expect(false, what + ": output is not JSON (" + e.what() + ")");
    return json::object();
  }
}

std::map<std::string, std::string> parse_manifest(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    m[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  return m;
}

std::string strip_duration(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# duration_s=", 0) == 0) continue;
    out << line << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Shared random-instance source for the property criteria.
struct Instance {
  BirthDeathChannel ch;
  FeedbackPolicy pol;
};

Instance random_instance(SplitMix64& rng, int max_n, bool allow_custom) {
  const int n = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_n));
  const int kind = static_cast<int>(rng.next() % (allow_custom ? 3 : 2));
  auto rate = [&rng](double lo, double hi) {
    return lo + (hi - lo) * rng.next_double();
  };
  FeedbackPolicy pol{std::vector<double>(static_cast<size_t>(n))};
  for (double& p : pol.p) p = 0.1 + 0.8 * rng.next_double();
  if (kind == 2) {
    std::vector<double> up_h(static_cast<size_t>(n)), up_l(static_cast<size_t>(n)),
        down(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
      up_l[static_cast<size_t>(k)] = rate(0.1, 8.0);
      up_h[static_cast<size_t>(k)] = up_l[static_cast<size_t>(k)] + rate(0.1, 15.0);
      down[static_cast<size_t>(k)] = rate(0.5, 25.0);
    }
    return Instance{build_custom_channel(up_h, up_l, down), pol};
  }
  const double a_l = rate(0.1, 4.0);
  const ReceptorKinetics kin{a_l, a_l + rate(0.2, 15.0), rate(0.5, 25.0)};
  return Instance{kind == 0 ? build_independent_channel(n, kin)
                            : build_cooperative_channel(n, kin),
                  pol};
}

std::string ref_flags() {
  return "--n 2 --alpha-l 1 --alpha-h 10 --beta 20";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " <path-to-cli-binary>\n";
    return 1;
  }
  g_cli = argv[1];

  // 1. Two-receptor independent capacity, both optimizer modes, through the
  //    CLI, against the pinned reference value.
  run_criterion(1, "two-receptor capacity in both modes", 1.0, [](Criterion& c) {
    const CliResult iid =
        run_cli("capacity " + ref_flags() + " --mode iid --format json");
    c.expect(iid.exit_code == 0, "iid run exited nonzero");
    const json ji = parse_json_or_die(c, iid.out, "iid run");
    if (!c.ok) return;
    const double cap_iid = ji["results"]["capacity"].get<double>();
    const double p_star = ji["results"]["p_star"].get<double>();
    c.expect(std::abs(cap_iid - 3.57367) <= 1e-3,
             "iid capacity " + std::to_string(cap_iid) + " off 3.57367 by > 1e-3");
    c.expect(std::abs(p_star - 0.371696) <= 1e-3,
             "argmax " + std::to_string(p_star) + " off 0.371696 by > 1e-3");

    const CliResult fb =
        run_cli("capacity " + ref_flags() + " --mode feedback --format json");
    c.expect(fb.exit_code == 0, "feedback run exited nonzero");
    const json jf = parse_json_or_die(c, fb.out, "feedback run");
    if (!c.ok) return;
    const double cap_fb = jf["results"]["capacity"].get<double>();
    const auto argmax = jf["results"]["argmax"].get<std::vector<double>>();
    c.expect(std::abs(cap_fb - 3.57367) <= 1e-3,
             "feedback capacity " + std::to_string(cap_fb) + " off by > 1e-3");
    c.expect(argmax.size() == 2 && std::abs(argmax[0] - argmax[1]) <= 1e-4,
             "feedback argmax is off the diagonal");
    c.expect(std::abs(argmax[0] - 0.371696) <= 1e-3,
             "feedback argmax not at the shared optimum");
  });

  // 2. Cooperative two-receptor channel: feedback optimum value and argmax,
  //    strictly above the best state-independent policy.
  run_criterion(2, "cooperative feedback beats the diagonal", 5.0,
                [](Criterion& c) {
    const std::string flags = "--kind cooperative " + ref_flags();
    const CliResult fb =
        run_cli("capacity " + flags + " --mode feedback --format json");
    c.expect(fb.exit_code == 0, "feedback run exited nonzero");
    const json jf = parse_json_or_die(c, fb.out, "feedback run");
    if (!c.ok) return;
    const double cap_fb = jf["results"]["capacity"].get<double>();
    const auto argmax = jf["results"]["argmax"].get<std::vector<double>>();
    c.expect(std::abs(cap_fb - 2.1026) <= 1e-3,
             "feedback capacity " + std::to_string(cap_fb) + " off 2.1026");
    c.expect(argmax.size() == 2 && std::abs(argmax[0] - 0.407) <= 5e-3 &&
                 std::abs(argmax[1] - 0.364) <= 5e-3,
             "argmax not at (0.407, 0.364) within 5e-3");

    const CliResult id = run_cli("capacity " + flags + " --mode iid --format json");
    c.expect(id.exit_code == 0, "iid run exited nonzero");
    const json ji = parse_json_or_die(c, id.out, "iid run");
    if (!c.ok) return;
    const double cap_iid = ji["results"]["capacity"].get<double>();
    c.expect(cap_fb > cap_iid + 1e-4,
             "feedback does not strictly beat the best diagonal policy");
  });

  // 3. Linear scaling of the state-independent capacity, fixed kinetics and
  //    one hundred random draws, with a shared argmax.
  run_criterion(3, "capacity scales linearly in receptor count", 10.0,
                [](Criterion& c) {
    const ScalingReport fig = verify_linear_scaling(ReceptorKinetics{1, 10, 20}, 10);
    c.expect(fig.max_ratio_error <= 1e-10, "fixed kinetics: ratio error too big");
    c.expect(fig.max_p_star_spread <= 1e-9, "fixed kinetics: argmax drifted");
    c.expect(std::abs(fig.rows[1].capacity - 3.57367) <= 1e-3,
             "two-receptor row disagrees with the pinned value");

    SplitMix64 rng(0x300);
    for (int draw = 0; draw < 100; ++draw) {
      const double a_l = 0.05 + 5.0 * rng.next_double();
      const ReceptorKinetics kin{a_l, a_l + 0.1 + 20.0 * rng.next_double(),
                                 0.2 + 30.0 * rng.next_double()};
      try {
        const ScalingReport rep = verify_linear_scaling(kin, 10);
        if (rep.max_ratio_error > 1e-10 || rep.max_p_star_spread > 1e-9) {
          c.expect(false, "draw " + std::to_string(draw) + " violated scaling");
          return;
        }
      } catch (const std::exception& e) {
        c.expect(false, "draw " + std::to_string(draw) + ": " + e.what());
        return;
      }
    }

    const CliResult cli =
        run_cli("scaling --alpha-l 1 --alpha-h 10 --beta 20 --n 10 --format json");
    c.expect(cli.exit_code == 0, "scaling command exited nonzero");
    const json j = parse_json_or_die(c, cli.out, "scaling command");
    if (!c.ok) return;
    for (const auto& row : j["results"]["rows"]) {
      c.expect(std::abs(row[2].get<double>() - 1.0) <= 1e-10,
               "CLI ratio column deviates from 1");
    }
  });

  // 4. The finite-step rate converges to the small-step limit at first order:
  //    halving the step shrinks the error by at least 1.8x, five times.
  run_criterion(4, "first-order convergence to the small-step limit", 10.0,
                [](Criterion& c) {
    SplitMix64 rng(0x400);
    for (int trial = 0; trial < 10; ++trial) {
      const Instance inst = random_instance(rng, 4, true);
      const double limit = mi_rate_continuous(inst.ch, inst.pol).value;
      const double tau0 = 1e-2 * max_time_step(inst.ch);
      double prev = -1.0;
      for (int h = 0; h <= 5; ++h) {
        const double tau = tau0 / std::pow(2.0, h);
        const double err =
            std::abs(mi_rate_discrete(inst.ch, inst.pol, tau).value / tau - limit);
        if (prev >= 0.0 && !(prev / err >= 1.8)) {
          std::ostringstream msg;
          msg << "trial " << trial << " halving " << h << ": error ratio "
              << prev / err << " < 1.8";
          c.expect(false, msg.str());
          return;
        }
        prev = err;
      }
    }
  });

  // 5. Stationary-law battery on random instances plus the log-space path.
  run_criterion(5, "stationary distribution suite", 30.0, [](Criterion& c) {
    SplitMix64 rng(0x500);
    for (int trial = 0; trial < 200; ++trial) {
      const Instance inst = random_instance(rng, 8, true);
      const int n = inst.ch.n();
      const StationaryDistribution st = stationary(inst.ch, inst.pol);
      const std::vector<double> abar = averaged_up_rates(inst.ch, inst.pol);

      double mass = 0.0;
      for (double x : st.pi) mass += x;
      if (std::abs(mass - 1.0) > 1e-12) {
        c.expect(false, "trial " + std::to_string(trial) + ": mass " +
                            std::to_string(mass));
        return;
      }
      for (int k = 0; k < n; ++k) {
        const double lhs = st.pi[k] * abar[k];
        const double rhs = st.pi[k + 1] * inst.ch.down()[k];
        if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs)) {
          c.expect(false, "trial " + std::to_string(trial) + ": detailed balance");
          return;
        }
      }
      const double tau = 0.4 * max_time_step(inst.ch);
      const Matrix p = output_chain(inst.ch, inst.pol, tau);
      for (int j = 0; j <= n; ++j) {
        double next = 0.0;
        for (int i = 0; i <= n; ++i) next += st.pi[i] * p(i, j);
        if (std::abs(next - st.pi[j]) > 1e-12) {
          c.expect(false, "trial " + std::to_string(trial) + ": fixed point");
          return;
        }
      }
      if (trial % 10 == 0) {  // the slow, fully independent cross-check
        const std::vector<double> brute =
            oracles::power_iteration_pi(inst.ch, inst.pol, 0.5 * max_time_step(inst.ch));
        for (int k = 0; k <= n; ++k) {
          if (std::abs(st.pi[k] - brute[k]) > 1e-10) {
            c.expect(false, "trial " + std::to_string(trial) + ": power iteration");
            return;
          }
        }
      }
      if (inst.ch.kind() == ChannelKind::independent) {
        bool uniform = true;
        for (double pk : inst.pol.p) uniform &= (pk == inst.pol.p[0]);
        if (uniform) {
          const double mix = inst.pol.p[0] * inst.ch.kinetics()->alpha_h +
                             (1 - inst.pol.p[0]) * inst.ch.kinetics()->alpha_l;
          const double q = mix / (mix + inst.ch.kinetics()->beta);
          for (int k = 0; k <= n; ++k) {
            const double expect = std::exp(oracles::log_binomial_pmf(n, k, q));
            if (std::abs(st.pi[k] - expect) > 1e-12) {
              c.expect(false, "binomial law violated");
              return;
            }
          }
        }
      }
    }

    // Log-space accumulation at ten thousand receptors.
    const int n = 10000;
    const double p = 0.371696;
    const BirthDeathChannel big =
        build_independent_channel(n, ReceptorKinetics{1, 10, 20});
    const StationaryDistribution st = stationary(big, FeedbackPolicy::uniform(n, p));
    const double abar = p * 10.0 + (1.0 - p) * 1.0;
    c.expect(std::isinf(st.z), "normalizer should overflow at n = 10^4");
    c.expect(std::abs(st.log_z - n * std::log(abar + 20.0)) <=
                 1e-10 * std::abs(st.log_z),
             "log normalizer disagrees with the closed form");
    double mass = 0.0;
    for (double x : st.pi) mass += x;
    c.expect(std::abs(mass - 1.0) <= 1e-10, "log-space mass not normalized");
    const double q = abar / (abar + 20.0);
    for (int k : {1500, 1785, 2100}) {
      const double expect = std::exp(oracles::log_binomial_pmf(n, k, q));
      c.expect(std::abs(st.pi[k] - expect) <= 1e-8 * expect,
               "log-space bulk probabilities off at k = " + std::to_string(k));
    }
  });

  // 6. Monte Carlo oracle: long seeded runs sit within three standard errors
  //    of the exact finite-step rate and pass the occupancy test.
  run_criterion(6, "simulation agrees with the exact rates", 300.0,
                [](Criterion& c) {
    const std::string common =
        " --tau 1e-4 --steps 10000000 --burn-in 50000 --format json";
    const CliResult a = run_cli("simulate " + ref_flags() +
                                " --policy 0.371696 --seed 90210" + common);
    c.expect(a.exit_code == 0, "independent run exited nonzero");
    const json ja = parse_json_or_die(c, a.out, "independent run");
    if (!c.ok) return;
    c.expect(std::abs(ja["results"]["z_score"].get<double>()) <= 3.0,
             "independent run: estimate more than 3 stderr from exact");
    c.expect(ja["results"]["chi2"]["p_value"].get<double>() >= 0.001,
             "independent run: occupancy test rejected at 0.1%");
    c.expect(ja["results"]["flagged_rows"].empty(),
             "independent run: plausible rows went unvisited");

    const CliResult b =
        run_cli("simulate --kind cooperative " + ref_flags() +
                " --policy 0.407,0.364 --seed 1905" + common);
    c.expect(b.exit_code == 0, "cooperative run exited nonzero");
    const json jb = parse_json_or_die(c, b.out, "cooperative run");
    if (!c.ok) return;
    c.expect(std::abs(jb["results"]["z_score"].get<double>()) <= 3.0,
             "cooperative run: estimate more than 3 stderr from exact");
    c.expect(jb["results"]["chi2"]["p_value"].get<double>() >= 0.001,
             "cooperative run: occupancy test rejected at 0.1%");
  });

  // 7. Entropy primitive identities at full floating-point strength.
  run_criterion(7, "entropy identities", 1.0, [](Criterion& c) {
    SplitMix64 rng(0x700);
    for (int i = 0; i < 10000; ++i) {
      const double k = 1e-3 + 100.0 * rng.next_double();
      const double p = 1e-6 + (1.0 - 1e-6) * rng.next_double();
      const double lhs = partial_entropy(k * p);
      const double rhs = k * partial_entropy(p) + p * partial_entropy(k);
      const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
      if (std::abs(lhs - rhs) / scale > 1e-12) {
        c.expect(false, "product rule violated at k=" + std::to_string(k) +
                            ", p=" + std::to_string(p));
        return;
      }
      const double h3 = triple_entropy(p, 0.0);
      const double h2 = -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
      if (std::abs(h3 - h2) / std::max(h2, 1e-30) > 1e-12) {
        c.expect(false, "binary-entropy reduction violated at p=" + std::to_string(p));
        return;
      }
    }
  });

  // 8. Byte-identical reruns, including a rerun reconstructed from the
  //    manifest comments alone.
  run_criterion(8, "manifest reruns are byte-identical", 0.0, [](Criterion& c) {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"capacity", "capacity " + ref_flags() + " --mode feedback --format csv"},
        {"sweep", "sweep " + ref_flags() +
                      " --mode feedback --grid 21 --jobs 2 --format csv"},
        {"simulate", "simulate " + ref_flags() +
                         " --policy 0.371696 --tau 1e-4 --steps 200000 "
                         "--seed 7 --burn-in 1000 --format csv"},
        {"scaling", "scaling --alpha-l 1 --alpha-h 10 --beta 20 --n 6 --format csv"},
    };
    for (const auto& [name, args] : cases) {
      const std::string f1 = "/tmp/bindcap_accept_" + name + "_1.csv";
      const std::string f2 = "/tmp/bindcap_accept_" + name + "_2.csv";
      const CliResult r1 = run_cli(args + " --output " + f1);
      const CliResult r2 = run_cli(args + " --output " + f2);
      c.expect(r1.exit_code == 0 && r2.exit_code == 0, name + ": nonzero exit");
      const std::string a = strip_duration(read_file(f1));
      const std::string b = strip_duration(read_file(f2));
      c.expect(!a.empty() && a == b, name + ": reruns differ byte-for-byte");
      std::remove(f1.c_str());
      std::remove(f2.c_str());
    }

    // Reconstruct the sweep invocation from its own manifest block.
    const std::string base = "sweep " + ref_flags() +
                             " --mode feedback --grid 11 --jobs 1 --format csv";
    const CliResult orig = run_cli(base);
    c.expect(orig.exit_code == 0, "manifest source run exited nonzero");
    const auto m = parse_manifest(orig.out);
    std::ostringstream rebuilt;
    rebuilt << m.at("command") << " --kind " << m.at("kind") << " --n "
            << m.at("n") << " --alpha-l " << m.at("alpha_l") << " --alpha-h "
            << m.at("alpha_h") << " --beta " << m.at("beta") << " --mode "
            << m.at("mode") << " --grid " << m.at("grid") << " --jobs "
            << m.at("jobs") << " --format csv";
    const CliResult again = run_cli(rebuilt.str());
    c.expect(again.exit_code == 0, "manifest-reconstructed run exited nonzero");
    c.expect(strip_duration(orig.out) == strip_duration(again.out),
             "manifest-reconstructed rerun differs from the original");
  });

  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed\n";
  } else {
    std::cout << g_failures << " acceptance criteria FAILED\n";
  }
  return g_failures;
}

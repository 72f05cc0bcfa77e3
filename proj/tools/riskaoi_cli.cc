// Copyright 2026 The riskaoi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver. It talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riskaoi/riskaoi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

// Carries a library status out of nested helpers.
struct StatusError {
  rsk_status status;
  std::string message;
};

void Check(rsk_status s) {
  if (s != RSK_OK) throw StatusError{s, rsk_last_error()};
}

int ExitCodeFor(rsk_status s) {
  switch (s) {
    case RSK_OK: return kExitOk;
    case RSK_ERR_INFEASIBLE: return kExitInfeasible;
    case RSK_ERR_IO: return kExitIo;
    default: return kExitUsage;
  }
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Config = std::unique_ptr<rsk_config, Deleter<rsk_config, rsk_config_destroy>>;
using PolicyH = std::unique_ptr<rsk_policy, Deleter<rsk_policy, rsk_policy_destroy>>;
using QTableH = std::unique_ptr<rsk_qtable, Deleter<rsk_qtable, rsk_qtable_destroy>>;
using ResultsH =
    std::unique_ptr<rsk_results, Deleter<rsk_results, rsk_results_destroy>>;

template <typename Fn>
std::string ReadText(Fn&& fn) {
  size_t needed = 0;
  fn(nullptr, 0, &needed);
  std::string out(needed, '\0');
  Check(fn(out.data(), out.size(), &needed));
  out.resize(needed - 1);
  return out;
}

std::string Get(const rsk_config* c, const char* key) {
  return ReadText([&](char* b, size_t n, size_t* need) {
    return rsk_config_get(c, key, b, n, need);
  });
}

// Config-key flags shared by every subcommand; values are applied after the
// optional --config file so flags win.
struct KeyFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void Attach(CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "plain-text 'key = value' configuration file");
    for (size_t i = 0; i < rsk_config_key_count(); ++i) {
      const std::string key = rsk_config_key_name(i);
      options[key] = sub->add_option("--" + key, values[key],
                                     rsk_config_key_help(i))
                         ->group("Config keys");
    }
  }

  Config Build() {
    rsk_config* raw = nullptr;
    Check(rsk_config_create(&raw));
    Config c(raw);
    if (!config_path.empty()) Check(rsk_config_load_file(c.get(), config_path.c_str()));
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) {
        Check(rsk_config_set(c.get(), key.c_str(), values[key].c_str()));
      }
    }
    Check(rsk_config_validate(c.get()));
    return c;
  }
};

void Set(rsk_config* c, const char* key, const std::string& value) {
  Check(rsk_config_set(c, key, value.c_str()));
}

void WriteResults(const rsk_results* r, const std::string& path) {
  Check(rsk_results_write(r, path.c_str()));
  std::fputs(ReadText([&](char* b, size_t n, size_t* need) {
               return rsk_results_summary(r, b, n, need);
             }).c_str(),
             stdout);
  std::printf("wrote %s and %s.summary.txt\n", path.c_str(), path.c_str());
}

int CmdAnalytic(KeyFlags& flags, std::optional<long long> n, long long k_max) {
  Config c = flags.Build();
  if (n) Set(c.get(), "threshold", std::to_string(*n));
  const std::string th = Get(c.get(), "threshold");
  if (th.empty()) throw StatusError{RSK_ERR_INVALID_ARGUMENT, "--n is required"};
  const long long threshold = std::stoll(th);
  if (threshold < 1) {
    throw StatusError{RSK_ERR_INVALID_ARGUMENT, "threshold n must be >= 1"};
  }
  rsk_analytic_report rep{};
  Check(rsk_analytic_evaluate(c.get(), threshold, &rep));
  std::printf("metric          %s\n", Get(c.get(), "metric").c_str());
  std::printf("threshold n     %lld\n", threshold);
  std::printf("average cost    %.10g\n", rep.cost);
  std::printf("period length l %.10g\n", rep.period_length);
  std::printf("attempts m      %.10g\n", rep.attempts_per_period);
  std::printf("f_k (long-run frequency of receiver age k):\n");
  for (long long k = threshold + 1; k <= k_max; ++k) {
    double f = 0.0;
    Check(rsk_analytic_freq_k(c.get(), threshold, k, &f));
    std::printf("  k=%-3lld %.10g\n", k, f);
  }
  const std::string zeta = Get(c.get(), "zeta");
  if (rep.has_risky_frequency) {
    std::printf("risky frequency (zeta=%s) %.10g\n", zeta.c_str(),
                rep.risky_frequency);
  } else {
    std::printf(
        "risky frequency (zeta=%s): not covered by the closed form when "
        "zeta <= n; estimate it with `simulate`\n",
        zeta.c_str());
  }
  return kExitOk;
}

int CmdOptimize(KeyFlags& flags, std::optional<double> budget,
                long long n_max) {
  Config c = flags.Build();
  if (Get(c.get(), "metric") == "aoii") {
    throw StatusError{RSK_ERR_INAPPLICABLE,
                      "optimize covers aoi and qaoi; sweep theta with "
                      "`reproduce fig3d` for aoii"};
  }
  int64_t n = 0;
  double min_risk = 0.0;
  const rsk_status s =
      rsk_optimize(c.get(), n_max, budget.value_or(-1.0), &n, &min_risk);
  if (s == RSK_ERR_INFEASIBLE) {
    std::printf("infeasible: no threshold meets risk budget %g; minimal "
                "achievable risky frequency %.10g\n",
                *budget, min_risk);
    return kExitInfeasible;
  }
  Check(s);
  rsk_analytic_report rep{};
  Check(rsk_analytic_evaluate(c.get(), n, &rep));
  std::printf("optimal threshold n = %lld\n", static_cast<long long>(n));
  std::printf("average cost        = %.10g\n", rep.cost);
  if (rep.has_risky_frequency) {
    std::printf("risky frequency     = %.10g (zeta=%s)\n", rep.risky_frequency,
                Get(c.get(), "zeta").c_str());
  }
  return kExitOk;
}

int CmdSimulate(KeyFlags& flags, const std::string& policy_name,
                std::optional<long long> n, std::optional<long long> theta,
                std::optional<double> send_prob, const std::string& qtable,
                std::optional<unsigned long long> steps,
                const std::string& out) {
  Config c = flags.Build();
  if (steps) Set(c.get(), "test_steps", std::to_string(*steps));
  if (n) Set(c.get(), "threshold", std::to_string(*n));
  if (theta) Set(c.get(), "threshold", std::to_string(*theta));
  const std::string metric = Get(c.get(), "metric");

  rsk_policy* raw = nullptr;
  std::string param;
  if (policy_name == "tb") {
    std::string th = Get(c.get(), "threshold");
    if (th.empty()) {
      if (metric == "aoii") {
        throw StatusError{RSK_ERR_INVALID_ARGUMENT,
                          "--theta is required for an aoii threshold policy"};
      }
      int64_t best = 0;
      Check(rsk_optimize(c.get(), 64, -1.0, &best, nullptr));
      th = std::to_string(best);
    }
    param = th;
    Check(rsk_policy_threshold(c.get(), std::stoll(th), &raw));
  } else if (policy_name == "random") {
    const double prob = send_prob ? *send_prob : std::stod(Get(c.get(), "lambda"));
    param = CLI::detail::to_string(prob);
    Check(rsk_policy_random(prob, &raw));
  } else {
    if (qtable.empty()) {
      throw StatusError{RSK_ERR_INVALID_ARGUMENT,
                        "--qtable is required for the greedy policy"};
    }
    rsk_qtable* t = nullptr;
    Check(rsk_qtable_load(qtable.c_str(), &t));
    QTableH table(t);
    Check(rsk_policy_greedy(table.get(), &raw));
    param = qtable;
  }
  PolicyH policy(raw);

  rsk_results* r = nullptr;
  Check(rsk_results_create(&r));
  ResultsH results(r);
  Check(rsk_results_add_evaluation(results.get(), c.get(), policy.get(),
                                   "simulate", policy_name.c_str(),
                                   param.c_str(), 0, nullptr));
  WriteResults(results.get(), out);
  return kExitOk;
}

int CmdTrain(KeyFlags& flags, std::optional<unsigned long long> steps,
             const std::string& qtable_path, const std::string& out,
             bool evaluate) {
  Config c = flags.Build();
  if (steps) Set(c.get(), "learn_steps", std::to_string(*steps));
  rsk_qtable* t = nullptr;
  rsk_train_info info{};
  Check(rsk_train(c.get(), &t, &info));
  QTableH table(t);
  Check(rsk_qtable_save(table.get(), qtable_path.c_str()));
  std::printf("trained %llu steps (rho=%s, seed=%s): final epsilon %.6g, "
              "%llu exploratory actions, %llu risky transitions\n",
              static_cast<unsigned long long>(info.steps),
              Get(c.get(), "rho").c_str(), Get(c.get(), "seed").c_str(),
              info.final_epsilon,
              static_cast<unsigned long long>(info.exploratory_actions),
              static_cast<unsigned long long>(info.risky_transitions));
  std::printf("wrote %s\n", qtable_path.c_str());
  if (!evaluate) return kExitOk;

  rsk_policy* p = nullptr;
  Check(rsk_policy_greedy(table.get(), &p));
  PolicyH policy(p);
  rsk_results* r = nullptr;
  Check(rsk_results_create(&r));
  ResultsH results(r);
  const std::string rho = Get(c.get(), "rho");
  const char* name = rho == "1" ? "TQL" : "Q+RS";
  Check(rsk_results_add_evaluation(results.get(), c.get(), policy.get(),
                                   "train", name, rho.c_str(), info.steps,
                                   nullptr));
  WriteResults(results.get(), out);
  return kExitOk;
}

int CmdReproduce(KeyFlags& flags, const std::string& figure, std::string out,
                 std::string plot_prefix) {
  Config c = flags.Build();
  rsk_results* r = nullptr;
  Check(rsk_reproduce(c.get(), figure.c_str(), &r));
  ResultsH results(r);
  if (out.empty()) out = figure + ".csv";
  if (plot_prefix.empty()) plot_prefix = figure;
  WriteResults(results.get(), out);
  Check(rsk_results_write_plot_data(results.get(), plot_prefix.c_str()));
  return kExitOk;
}

std::string KeyListing() {
  std::string s = "Config keys (usable as --<key> flags or in --config files):\n";
  for (size_t i = 0; i < rsk_config_key_count(); ++i) {
    s += "  " + std::string(rsk_config_key_name(i)) + "\n";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Risk-aware status-update scheduling: closed forms, "
               "simulation, learning and the reproduction suite."};
  app.footer(KeyListing());
  app.require_subcommand(1);

  // analytic
  KeyFlags analytic_flags;
  std::optional<long long> analytic_n;
  long long k_max = 12;
  auto* analytic = app.add_subcommand(
      "analytic", "closed-form cost, period length and f_k of TB(n)");
  analytic->add_option("--n", analytic_n, "threshold n >= 1");
  analytic->add_option("--k-max", k_max, "largest k in the f_k table");
  analytic_flags.Attach(analytic);

  // optimize
  KeyFlags optimize_flags;
  std::optional<double> budget;
  long long n_max = 64;
  auto* optimize =
      app.add_subcommand("optimize", "cost-optimal (or risk-constrained) n");
  optimize->add_option("--risk-budget", budget,
                       "largest admissible risky frequency");
  optimize->add_option("--n-max", n_max, "largest candidate threshold");
  optimize_flags.Attach(optimize);

  // simulate
  KeyFlags simulate_flags;
  std::string policy_name = "tb";
  std::optional<long long> sim_n, sim_theta;
  std::optional<double> send_prob;
  std::optional<unsigned long long> sim_steps;
  std::string sim_qtable, sim_out = "simulate.csv";
  auto* simulate =
      app.add_subcommand("simulate", "evaluate one policy over `runs` runs");
  simulate->add_option("--policy", policy_name, "tb | random | greedy")
      ->check(CLI::IsMember({"tb", "random", "greedy"}));
  simulate->add_option("--n", sim_n, "threshold for aoi/qaoi");
  simulate->add_option("--theta", sim_theta, "threshold for aoii");
  simulate->add_option("--send-prob", send_prob,
                       "send probability of the random policy (default lambda)");
  simulate->add_option("--qtable", sim_qtable, "Q-table dump for --policy greedy");
  simulate->add_option("--steps", sim_steps, "alias for --test_steps");
  simulate->add_option("--out", sim_out, "results CSV path");
  simulate_flags.Attach(simulate);

  // train
  KeyFlags train_flags;
  std::optional<unsigned long long> train_steps;
  std::string qtable_out = "qtable.csv", train_out = "train.csv";
  bool train_eval = false;
  auto* train = app.add_subcommand("train", "train one Q+RS learner (rho = 1 is TQL)");
  train->add_option("--steps", train_steps, "alias for --learn_steps");
  train->add_option("--qtable", qtable_out, "where to write the Q-table dump");
  train->add_flag("--evaluate", train_eval,
                  "also evaluate the greedy policy and write results CSV");
  train->add_option("--out", train_out, "results CSV path for --evaluate");
  train_flags.Attach(train);

  // reproduce
  KeyFlags reproduce_flags;
  std::string figure, repro_out, plot_prefix;
  std::vector<std::string> ids;
  for (size_t i = 0; i < rsk_figure_count(); ++i) ids.push_back(rsk_figure_id(i));
  auto* reproduce =
      app.add_subcommand("reproduce", "run one reproduction target");
  reproduce->add_option("figure", figure, "figure id")
      ->required()
      ->check(CLI::IsMember(ids));
  reproduce->add_option("--out", repro_out, "results CSV path (default <figure>.csv)");
  reproduce->add_option("--plot-prefix", plot_prefix,
                        "prefix of plot-data files (default <figure>)");
  reproduce_flags.Attach(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analytic) return CmdAnalytic(analytic_flags, analytic_n, k_max);
    if (*optimize) return CmdOptimize(optimize_flags, budget, n_max);
    if (*simulate) {
      return CmdSimulate(simulate_flags, policy_name, sim_n, sim_theta,
                         send_prob, sim_qtable, sim_steps, sim_out);
    }
    if (*train) return CmdTrain(train_flags, train_steps, qtable_out, train_out, train_eval);
    if (*reproduce) {
      return CmdReproduce(reproduce_flags, figure, repro_out, plot_prefix);
    }
  } catch (const StatusError& e) {
    std::fprintf(stderr, "error (%s): %s\n", rsk_status_name(e.status),
                 e.message.c_str());
    return ExitCodeFor(e.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

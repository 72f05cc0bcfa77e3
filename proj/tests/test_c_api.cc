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

// Exercises the shared library through its C header only.
#include <cstdio>
#include <cstring>
#include <string>

#include "doctest.h"
#include "riskaoi/riskaoi.h"

namespace {

std::string Text(rsk_status (*fn)(const rsk_config*, char*, size_t, size_t*),
                 const rsk_config* c) {
  size_t need = 0;
  CHECK(fn(c, nullptr, 0, &need) == RSK_ERR_BUFFER_TOO_SMALL);
  std::string s(need, '\0');
  REQUIRE(fn(c, s.data(), s.size(), &need) == RSK_OK);
  s.resize(need - 1);
  return s;
}

std::string Csv(const rsk_results* r) {
  size_t need = 0;
  rsk_results_csv(r, nullptr, 0, &need);
  std::string s(need, '\0');
  REQUIRE(rsk_results_csv(r, s.data(), s.size(), &need) == RSK_OK);
  s.resize(need - 1);
  return s;
}

}  // namespace

TEST_CASE("config handles") {
  rsk_config* c = nullptr;
  REQUIRE(rsk_config_create(&c) == RSK_OK);
  CHECK(rsk_config_set(c, "p", "0.8") == RSK_OK);
  char buf[32];
  size_t need = 0;
  CHECK(rsk_config_get(c, "p", buf, sizeof buf, &need) == RSK_OK);
  CHECK(std::string(buf) == "0.8");
  CHECK(need == 4);
  CHECK(rsk_config_set(c, "bogus", "1") == RSK_ERR_INVALID_ARGUMENT);
  CHECK(std::string(rsk_last_error()).find("bogus") != std::string::npos);
  CHECK(rsk_config_set(c, nullptr, "1") == RSK_ERR_INVALID_ARGUMENT);
  CHECK(rsk_config_load_file(c, "/nonexistent/x.cfg") == RSK_ERR_IO);

  const std::string dump = Text(rsk_config_dump, c);
  rsk_config* d = nullptr;
  REQUIRE(rsk_config_create(&d) == RSK_OK);
  CHECK(rsk_config_parse(d, dump.c_str()) == RSK_OK);
  CHECK(Text(rsk_config_dump, d) == dump);
  rsk_config* e = nullptr;
  REQUIRE(rsk_config_clone(d, &e) == RSK_OK);
  CHECK(Text(rsk_config_dump, e) == dump);

  CHECK(rsk_config_key_count() > 20);
  CHECK(std::string(rsk_config_key_name(0)) == "metric");
  CHECK(rsk_config_key_name(rsk_config_key_count()) == nullptr);
  CHECK(rsk_config_set(e, "runs", "0") == RSK_OK);
  CHECK(rsk_config_validate(e) == RSK_ERR_INVALID_ARGUMENT);
  rsk_config_destroy(c);
  rsk_config_destroy(d);
  rsk_config_destroy(e);
  rsk_config_destroy(nullptr);
}

TEST_CASE("closed forms and optimization") {
  rsk_config* c = nullptr;
  REQUIRE(rsk_config_create(&c) == RSK_OK);
  rsk_analytic_report rep{};
  REQUIRE(rsk_analytic_evaluate(c, 2, &rep) == RSK_OK);
  CHECK(rep.has_risky_frequency == 1);
  CHECK(std::abs(rep.risky_frequency - 0.092) <= 0.02);
  CHECK(rsk_analytic_evaluate(c, 0, &rep) == RSK_ERR_INVALID_ARGUMENT);
  double f = 0;
  CHECK(rsk_analytic_freq_k(c, 2, 2, &f) == RSK_ERR_INAPPLICABLE);

  int64_t n = 0;
  CHECK(rsk_optimize(c, 64, -1.0, &n, nullptr) == RSK_OK);
  CHECK(n == 2);
  double min_risk = -1;
  CHECK(rsk_optimize(c, 64, 0.0, &n, &min_risk) == RSK_ERR_INFEASIBLE);
  CHECK(min_risk > 0.06);
  rsk_config_set(c, "metric", "qaoi");
  CHECK(rsk_optimize(c, 64, -1.0, &n, nullptr) == RSK_OK);
  CHECK(n == 5);
  rsk_config_set(c, "metric", "aoii");
  CHECK(rsk_analytic_evaluate(c, 2, &rep) == RSK_ERR_INAPPLICABLE);
  rsk_config_destroy(c);
}

TEST_CASE("policies, evaluation, training and results") {
  rsk_config* c = nullptr;
  REQUIRE(rsk_config_create(&c) == RSK_OK);
  rsk_config_set(c, "runs", "5");
  rsk_config_set(c, "learn_steps", "20000");
  rsk_config_set(c, "seed", "7");

  rsk_policy* tb = nullptr;
  REQUIRE(rsk_policy_threshold(c, 2, &tb) == RSK_OK);
  rsk_run_stats st{};
  REQUIRE(rsk_evaluate(c, tb, &st) == RSK_OK);
  CHECK(st.runs == 5);
  CHECK(st.mean_cost > 3.0);
  CHECK(rsk_policy_threshold(c, 0, &tb) == RSK_ERR_INVALID_ARGUMENT);

  rsk_qtable* q1 = nullptr;
  rsk_qtable* q2 = nullptr;
  rsk_train_info info{};
  REQUIRE(rsk_train(c, &q1, &info) == RSK_OK);
  REQUIRE(rsk_train(c, &q2, nullptr) == RSK_OK);
  CHECK(info.steps == 20000);
  size_t n1 = 0, n2 = 0;
  rsk_qtable_dump(q1, nullptr, 0, &n1);
  rsk_qtable_dump(q2, nullptr, 0, &n2);
  std::string d1(n1, '\0'), d2(n2, '\0');
  REQUIRE(rsk_qtable_dump(q1, d1.data(), n1, &n1) == RSK_OK);
  REQUIRE(rsk_qtable_dump(q2, d2.data(), n2, &n2) == RSK_OK);
  CHECK(d1 == d2);
  CHECK(rsk_qtable_save(q1, "riskaoi_capi_q.csv") == RSK_OK);
  rsk_qtable* q3 = nullptr;
  REQUIRE(rsk_qtable_load("riskaoi_capi_q.csv", &q3) == RSK_OK);
  std::remove("riskaoi_capi_q.csv");
  CHECK(rsk_qtable_load("/nonexistent/q.csv", &q3) == RSK_ERR_IO);

  rsk_policy* greedy = nullptr;
  REQUIRE(rsk_policy_greedy(q3, &greedy) == RSK_OK);
  rsk_results* res = nullptr;
  REQUIRE(rsk_results_create(&res) == RSK_OK);
  CHECK(Csv(res).find('\n') == Csv(res).size() - 1);  // header only
  REQUIRE(rsk_results_add_evaluation(res, c, greedy, "t", "Q+RS", "2", 20000,
                                     &st) == RSK_OK);
  CHECK(rsk_results_row_count(res) == 1);
  rsk_result_row row{};
  REQUIRE(rsk_results_row(res, 0, &row) == RSK_OK);
  CHECK(std::string(row.strategy) == "Q+RS");
  CHECK(std::string(row.metric) == "aoi");
  CHECK(row.stats.mean_cost == st.mean_cost);
  CHECK(rsk_results_row(res, 1, &row) == RSK_ERR_INVALID_ARGUMENT);
  CHECK(rsk_results_write(res, "/nonexistent/dir/r.csv") == RSK_ERR_IO);

  rsk_policy* coin = nullptr;
  CHECK(rsk_policy_random(2.0, &coin) == RSK_ERR_INVALID_ARGUMENT);
  REQUIRE(rsk_policy_random(0.5, &coin) == RSK_OK);

  rsk_policy_destroy(tb);
  rsk_policy_destroy(greedy);
  rsk_policy_destroy(coin);
  rsk_qtable_destroy(q1);
  rsk_qtable_destroy(q2);
  rsk_qtable_destroy(q3);
  rsk_results_destroy(res);
  rsk_config_destroy(c);
}

TEST_CASE("reproduce through the C interface") {
  rsk_config* c = nullptr;
  REQUIRE(rsk_config_create(&c) == RSK_OK);
  rsk_config_set(c, "runs", "3");
  CHECK(rsk_figure_count() == 9);
  CHECK(std::string(rsk_figure_id(0)) == "fig3a");
  rsk_results* r = nullptr;
  CHECK(rsk_reproduce(c, "fig99", &r) == RSK_ERR_INVALID_ARGUMENT);
  REQUIRE(rsk_reproduce(c, "fig3d", &r) == RSK_OK);
  CHECK(rsk_results_row_count(r) == 7);
  CHECK(rsk_results_write_plot_data(r, "riskaoi_capi_plot") == RSK_OK);
  std::remove("riskaoi_capi_plot.cost.dat");
  std::remove("riskaoi_capi_plot.risky.dat");
  rsk_results_destroy(r);
  rsk_config_destroy(c);
  CHECK(std::string(rsk_status_name(RSK_ERR_IO)) == "i/o error");
}

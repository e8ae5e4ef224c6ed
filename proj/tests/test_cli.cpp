// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"

using namespace crnlab;
using namespace crnlab::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("crnlab_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_chain() {
  return json{{"model", "chain"}, {"m", 3}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0},
              {"init", {{"counts", {2, 3, 1}}}}, {"outputs", {"trajectory"}}};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + CRNLAB_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// Random small valid experiment config; covers every model.
json random_config(std::mt19937_64& g) {
  std::uniform_real_distribution<double> U(0.1, 2.0);
  std::uniform_int_distribution<int> small(0, 6);
  auto coin = [&] { return (g() & 1u) == 1u; };
  json j;
  j["seed"] = static_cast<std::uint64_t>(g() >> 1);
  j["t_end"] = 0.2 + U(g);
  if (coin()) j["replicas"] = 1 + static_cast<int>(g() % 3);
  json outputs = json::array();
  if (coin()) outputs.push_back("trajectory");
  switch (g() % 10) {
    case 0: {
      const int m = 2 + static_cast<int>(g() % 5);
      json k = json::array(), c = json::array();
      for (int i = 0; i < m + 2; ++i) k.push_back(U(g));
      for (int i = 0; i < m; ++i) c.push_back(small(g));
      j.update({{"model", "chain"}, {"m", m}, {"kappa", k}, {"init", {{"counts", c}}}});
      if (coin()) {
        outputs.push_back("occupation");
        j["occupation"] = {{"coord", 1 + static_cast<int>(g() % m)}, {"bins", 8}, {"value_scale", "one"}};
      }
      break;
    }
    case 1:
      j.update({{"model", "mminf"}, {"kappa", {U(g), U(g)}}});
      if (coin()) {
        outputs.push_back("gof");
        j["replicas"] = 30;
      }
      break;
    case 2: {
      json k{U(g)};
      for (int i = 0, p = 1 + static_cast<int>(g() % 3); i < p; ++i) k.push_back(U(g));
      j.update({{"model", "tandem"}, {"kappa", k}});
      break;
    }
    case 3:
    case 4:
    case 5: {
      const char* names[] = {"x4", "u4", "z4"};
      const char* model = names[g() % 3];
      json k = json::array();
      for (int i = 0; i < 6; ++i) k.push_back(U(g));
      const double N = std::pow(10.0, 1.0 + static_cast<double>(g() % 3));
      json scaled{{"y", U(g) / 2.0}, {"v", U(g) / 4.0}, {"x1", 0}, {"x3", std::string(model) == "z4" ? 1 : 0}};
      j.update({{"model", model}, {"kappa", k}, {"N", N}, {"init", {{"scaled", scaled}}}});
      if (std::string(model) != "z4" && coin()) {
        j["timescale"] = "sqrtN";
        j["t_end"] = 0.5;
        if (coin()) outputs.push_back("fit");
      }
      if (std::string(model) == "x4" && coin()) outputs.push_back("cycles");
      break;
    }
    case 6:
      j.update({{"model", "r0"}, {"kappa", {U(g), U(g), U(g)}}, {"init", {{"values", {U(g)}}}}});
      break;
    case 7:
      j.update({{"model", "r1"}, {"kappa", {U(g), U(g)}}});
      if (coin()) {
        outputs.push_back("gof");
        j["replicas"] = 30;
      }
      break;
    case 8:
      j.update({{"model", "vy"}, {"kappa", {U(g), U(g), U(g), U(g)}}, {"init", {{"scaled", {{"y", U(g)}, {"v", U(g)}}}}}});
      break;
    default: {
      const int l = 2 + static_cast<int>(g() % 2);
      json k = json::array(), x = json::array();
      for (int i = 0; i < 2 * l + 1; ++i) k.push_back(U(g));
      for (int i = 0; i < l; ++i) x.push_back(U(g));
      j.update({{"model", "ode"}, {"kappa", k}, {"init", {{"values", x}}}, {"ode", {{"kind", "odd_averaged"}, {"h", 0.01}}}});
      j.erase("replicas");
      break;
    }
  }
  j["outputs"] = outputs;
  return j;
}

}  // namespace

TEST(Config, ParsesMinimalChain) {
  const auto c = parse_experiment(base_chain());
  EXPECT_EQ(c.model, Model::chain);
  EXPECT_EQ(c.m, 3);
  EXPECT_EQ(c.initial_state(), (std::vector<std::int64_t>{2, 3, 1}));
  EXPECT_EQ(c.N, 1e4);
  EXPECT_EQ(c.replicas, 1u);
  EXPECT_DOUBLE_EQ(c.horizon(), 1.0);
}

TEST(Config, Timescales) {
  json j = base_chain();
  j["N"] = 100.0;
  j["timescale"] = "sqrtN";
  EXPECT_DOUBLE_EQ(parse_experiment(j).horizon(), 10.0);
  j["timescale"] = "overN";
  EXPECT_DOUBLE_EQ(parse_experiment(j).horizon(), 0.01);
  j["N"] = 1000.0;
  j["timescale"] = "N_2_3";
  EXPECT_NEAR(parse_experiment(j).horizon(), 0.01, 1e-15);
}

TEST(Config, ScaledInit) {
  json j{{"model", "x4"}, {"kappa", {1, 1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"N", 100.0},
         {"init", {{"scaled", {{"y", 0.5}, {"v", 0.25}, {"x1", 2}, {"x3", 1}}}}}};
  EXPECT_EQ(parse_experiment(j).initial_state(), (std::vector<std::int64_t>{2, 50, 1, 2}));
}

TEST(Config, RejectsUnknownKeysAtEveryLevel) {
  const auto bad = [](json j) { EXPECT_THROW(parse_experiment(j), ConfigError) << j.dump(); };
  json j = base_chain();
  j["colour"] = 1;
  bad(j);
  j = base_chain();
  j["init"]["weights"] = {1};
  bad(j);
  j = {{"model", "x4"}, {"kappa", {1, 1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"init", {{"scaled", {{"y", 1.0}, {"w", 1}}}}}};
  bad(j);
  j = base_chain();
  j["outputs"] = {"occupation"};
  j["occupation"] = {{"coord", 1}, {"width", 3}};
  bad(j);
  j = {{"model", "ode"}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"init", {{"values", {1, 1}}}},
       {"ode", {{"kind", "odd_averaged"}, {"tol", 1e-3}}}};
  bad(j);
}

TEST(Config, RejectsMissingFields) {
  for (const char* key : {"model", "kappa", "t_end"}) {
    json j = base_chain();
    j.erase(key);
    EXPECT_THROW(parse_experiment(j), ConfigError) << key;
  }
  EXPECT_THROW(parse_experiment(json{{"model", "ode"}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0}}), ConfigError);
  EXPECT_THROW(parse_experiment(json::array()), ConfigError);
}

TEST(Config, RejectsBadValues) {
  const auto bad = [](const std::function<void(json&)>& edit) {
    json j = base_chain();
    edit(j);
    EXPECT_THROW(parse_experiment(j), ConfigError) << j.dump();
  };
  bad([](json& j) { j["model"] = "chain2"; });
  bad([](json& j) { j["model"] = 3; });
  bad([](json& j) { j["m"] = 1; });
  bad([](json& j) { j["m"] = -3; });
  bad([](json& j) { j["kappa"] = {1, 1, 1, 1}; });
  bad([](json& j) { j["kappa"] = {1, 1, -1, 1, 1}; });
  bad([](json& j) { j["kappa"] = "fast"; });
  bad([](json& j) { j["t_end"] = 0.0; });
  bad([](json& j) { j["t_end"] = "long"; });
  bad([](json& j) { j["N"] = 0.5; });
  bad([](json& j) { j["replicas"] = 0; });
  bad([](json& j) { j["replicas"] = 1.5; });
  bad([](json& j) { j["seed"] = -1; });
  bad([](json& j) { j["timescale"] = "slow"; });
  bad([](json& j) { j["outputs"] = {"movie"}; });
  bad([](json& j) { j["outputs"] = "trajectory"; });
  bad([](json& j) { j["init"] = {{"counts", {1, 2}}}; });
  bad([](json& j) { j["init"] = {{"counts", {1, -2, 0}}}; });
  bad([](json& j) { j["init"] = {{"counts", {1, 2, 0}}, {"values", {1.0}}}; });
  bad([](json& j) { j["init"] = {{"values", {1.0, 2.0, 3.0}}}; });
  bad([](json& j) { j["outputs"] = {"cycles"}; });
  bad([](json& j) { j["outputs"] = {"gof"}; });
  bad([](json& j) { j["outputs"] = {"fit"}; });
  bad([](json& j) { j["occupation"] = {{"coord", 1}}; });
  bad([](json& j) {
    j["outputs"] = {"occupation"};
    j["occupation"] = {{"coord", 4}};
  });
  bad([](json& j) {
    j["outputs"] = {"occupation"};
    j["occupation"] = {{"value_scale", "log"}};
  });
  bad([](json& j) {
    j["outputs"] = {"occupation"};
    j["occupation"] = {{"t0", 2.0}};
  });
}

TEST(Config, ModelSpecificRules) {
  const auto bad = [](const json& j) { EXPECT_THROW(parse_experiment(j), ConfigError) << j.dump(); };
  const json k6{1, 1, 1, 1, 1, 1};
  bad({{"model", "u4"}, {"kappa", k6}, {"t_end", 1.0}, {"init", {{"scaled", {{"y", 1.0}, {"x1", 1}}}}}});
  bad({{"model", "z4"}, {"kappa", k6}, {"t_end", 1.0}, {"init", {{"scaled", {{"y", 1.0}}}}}});
  bad({{"model", "vy"}, {"kappa", {1, 1, 1, 1}}, {"t_end", 1.0}});
  bad({{"model", "vy"}, {"kappa", {1, 1, 1, 1}}, {"t_end", 1.0}, {"init", {{"scaled", {{"y", 0.0}}}}}});
  bad({{"model", "r1"}, {"kappa", {1, 1}}, {"t_end", 1.0}, {"timescale", "sqrtN"}});
  bad({{"model", "r1"}, {"kappa", {1, 1, 1}}, {"t_end", 1.0}});
  bad({{"model", "r0"}, {"kappa", {1, 1, 1}}, {"t_end", 1.0}, {"init", {{"counts", {1}}}}});
  bad({{"model", "mminf"}, {"kappa", {1, 1}}, {"m", 3}, {"t_end", 1.0}});
  bad({{"model", "tandem"}, {"kappa", {1}}, {"t_end", 1.0}});
  bad({{"model", "chain"}, {"m", 3}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"ode", {{"kind", "fluid_chain"}}}});
  bad({{"model", "ode"}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"init", {{"values", {1, 1}}}},
       {"ode", {{"kind", "odd_averaged"}}}, {"replicas", 2}});
  bad({{"model", "ode"}, {"kappa", {1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"init", {{"values", {1, 1}}}},
       {"ode", {{"kind", "stiff"}}}});
}

TEST(Config, LimitsParsing) {
  EXPECT_EQ(parse_limits({{"limit", "t_infinity"}, {"kappa", {1, 1, 1, 1}}}).kind, LimitsConfig::Kind::t_infinity);
  EXPECT_EQ(parse_limits({{"limit", "gamma0"}}).points, 101u);
  const auto bad = [](const json& j) { EXPECT_THROW(parse_limits(j), ConfigError) << j.dump(); };
  bad({{"kappa", {1, 1, 1, 1}}});
  bad({{"limit", "t_zero"}});
  bad({{"limit", "t_infinity"}});
  bad({{"limit", "t_infinity"}, {"kappa", {1, 1, 1}}});
  bad({{"limit", "t_infinity"}, {"kappa", {1, 0, 1, 1}}});
  bad({{"limit", "t_infinity"}, {"kappa", {1, 1, 1, 1}}, {"step", 0.1}});
  bad({{"limit", "quadratic_decay"}, {"kappa", {1, 1, 1, 1}}, {"t_max_fraction", 1.0}});
  bad({{"limit", "quadratic_decay"}, {"kappa", {1, 1, 1, 1}}, {"step", 1e-9}});
  bad({{"limit", "gamma0"}, {"a", 0.0}});
  bad({{"limit", "gamma0"}, {"points", 1}});
  bad({{"limit", "gamma0"}, {"kappa", {1, 1}}});
  bad({{"limit", "ode"}, {"kappa", {1, 1, 1, 1, 1}}, {"init", {1, 1}}, {"t_end", 1.0}});
  bad({{"limit", "ode"}, {"ode", {{"kind", "fluid_chain"}}}, {"kappa", {1, 1, 1, 1}}, {"init", {1, 1, 1}}, {"t_end", 1.0}});
  bad({{"limit", "ode"}, {"ode", {{"kind", "fluid_chain"}}}, {"kappa", {1, 1, 1, 1, 1}}, {"init", {1, 1, 1}}});
}

TEST(Config, SchemaFilesListTheAcceptedKeys) {
  const auto keys_of = [](const char* name) {
    const json s = load_json(fs::path(CRNLAB_SOURCE_DIR) / "docs" / name);
    std::set<std::string> k;
    for (const auto& [key, v] : s.at("properties").items()) k.insert(key);
    return k;
  };
  EXPECT_EQ(keys_of("experiment.schema.json"), experiment_keys());
  EXPECT_EQ(keys_of("limits.schema.json"), limits_keys());
}

TEST(Config, LoadJsonErrors) {
  const auto dir = scratch("load");
  EXPECT_THROW(load_json(dir / "missing.json"), ConfigError);
  std::ofstream(dir / "broken.json") << "{\"model\": ";
  EXPECT_THROW(load_json(dir / "broken.json"), ConfigError);
}

TEST(Simulate, FuzzedConfigsAllRun) {
  std::mt19937_64 g(20240917);
  const auto dir = scratch("fuzz");
  int with_files = 0;
  for (int i = 0; i < 1000; ++i) {
    const json j = random_config(g);
    ExperimentConfig c;
    ASSERT_NO_THROW(c = parse_experiment(j)) << j.dump();
    SimulateSummary s;
    ASSERT_NO_THROW(s = cmd_simulate(c, dir / std::to_string(i))) << j.dump();
    for (const auto& f : s.files) ASSERT_TRUE(fs::exists(f)) << f;
    with_files += s.files.empty() ? 0 : 1;
  }
  EXPECT_GT(with_files, 300);
  fs::remove_all(dir);
}

TEST(Simulate, OutputsAreDeterministic) {
  const json configs[] = {
      base_chain(),
      {{"model", "z4"}, {"kappa", {1, 1, 1, 1, 1, 1}}, {"t_end", 2.0}, {"N", 100.0}, {"replicas", 3},
       {"init", {{"scaled", {{"y", 1.0}, {"x3", 1}}}}}, {"outputs", {"trajectory"}}},
      {{"model", "r1"}, {"kappa", {1, 1}}, {"t_end", 5.0}, {"replicas", 40}, {"outputs", {"trajectory", "gof"}}},
      {{"model", "x4"}, {"kappa", {1, 1, 1, 1, 1, 1}}, {"t_end", 1.0}, {"N", 400.0}, {"replicas", 2},
       {"timescale", "sqrtN"}, {"init", {{"scaled", {{"y", 1.0}}}}},
       {"outputs", {"occupation", "cycles", "fit"}}, {"occupation", {{"coord", 2}, {"bins", 10}}}},
  };
  for (const auto& j : configs) {
    const auto c = parse_experiment(j);
    const auto a = cmd_simulate(c, scratch("det_a"));
    const auto b = cmd_simulate(c, scratch("det_b"));
    ASSERT_EQ(a.files.size(), b.files.size());
    ASSERT_FALSE(a.files.empty());
    EXPECT_EQ(a.events, b.events);
    for (std::size_t i = 0; i < a.files.size(); ++i) {
      EXPECT_EQ(a.files[i].filename(), b.files[i].filename());
      EXPECT_EQ(slurp(a.files[i]), slurp(b.files[i])) << a.files[i];
    }
  }
}

TEST(Simulate, SeedChangesOutput) {
  auto c = parse_experiment(base_chain());
  const auto a = cmd_simulate(c, scratch("seed_a"));
  c.seed = 2;
  const auto b = cmd_simulate(c, scratch("seed_b"));
  EXPECT_NE(slurp(a.files[0]), slurp(b.files[0]));
}

TEST(Simulate, MMInfWithoutArrivalsWritesNoEvents) {
  const auto c = parse_experiment({{"model", "mminf"}, {"kappa", {0.0, 1.0}}, {"t_end", 10.0}, {"outputs", {"trajectory"}}});
  const auto s = cmd_simulate(c, scratch("mminf0"));
  EXPECT_EQ(s.events, 0u);
  ASSERT_EQ(s.files.size(), 1u);
  // Only the header and the initial row, no transitions.
  std::string header;
  const auto rows = read_csv(s.files[0], &header);
  EXPECT_FALSE(header.empty());
  EXPECT_LE(rows.size(), 2u);
  for (const auto& r : rows) EXPECT_EQ(r.back(), 0.0);
}

TEST(Simulate, GofReportShape) {
  const auto c = parse_experiment(
      {{"model", "r1"}, {"kappa", {1, 1}}, {"t_end", 10.0}, {"replicas", 200}, {"outputs", {"gof"}}, {"seed", 5u}});
  const auto s = cmd_simulate(c, scratch("gof"));
  ASSERT_EQ(s.files.size(), 1u);
  const json j = load_json(s.files[0]);
  EXPECT_EQ(j["law"]["family"], "gamma0");
  EXPECT_DOUBLE_EQ(j["law"]["a"].get<double>(), 1.0);
  EXPECT_EQ(j["report"]["test"], "ks_one_sample");
  EXPECT_EQ(j["report"]["n"], 200);
}

TEST(Limits, TInfinityLogged) {
  std::ostringstream log;
  const auto files = cmd_limits(parse_limits({{"limit", "t_infinity"}, {"kappa", {1, 1, 1, 1}}}), scratch("tinf"), log);
  EXPECT_NE(log.str().find("2.5066283"), std::string::npos) << log.str();
  ASSERT_EQ(files.size(), 1u);
  EXPECT_NEAR(load_json(files[0])["t_infinity"].get<double>(), 2.506628274631, 1e-11);
}

TEST(Limits, QuadraticDecayMonotone) {
  std::ostringstream log;
  const auto files = cmd_limits(
      parse_limits({{"limit", "quadratic_decay"}, {"kappa", {1, 1, 1, 1}}, {"step", 0.01}}), scratch("qd"), log);
  std::string header;
  const auto rows = read_csv(files.at(0), &header);
  EXPECT_EQ(header, "t,u2");
  ASSERT_GT(rows.size(), 200u);
  EXPECT_DOUBLE_EQ(rows.front()[1], 1.0);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i][1], rows[i - 1][1]);
  EXPECT_GT(rows.back()[1], 0.0);
  EXPECT_LT(rows.back()[0], 2.506628274631);
}

TEST(Limits, OddAveragedOdeStaysPositive) {
  std::ostringstream log;
  const json j{{"limit", "ode"}, {"ode", {{"kind", "odd_averaged"}, {"h", 1e-3}, {"record_stride", 10}}},
               {"kappa", {1, 1, 1, 1, 1, 1, 1}}, {"init", {1, 1, 1}}, {"t_end", 10.0}};
  const auto files = cmd_limits(parse_limits(j), scratch("ode"), log);
  const auto rows = read_csv(files.at(0));
  ASSERT_GT(rows.size(), 100u);
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 4u);
    for (std::size_t k = 1; k < r.size(); ++k) EXPECT_GT(r[k], 0.0);
  }
}

TEST(Limits, Gamma0Table) {
  std::ostringstream log;
  const auto files = cmd_limits(parse_limits({{"limit", "gamma0"}, {"a", 2.0}, {"b", 3.0}, {"points", 51}}), scratch("g0"), log);
  std::string header;
  const auto rows = read_csv(files.at(0), &header);
  EXPECT_EQ(header, "x,density,cdf");
  ASSERT_EQ(rows.size(), 51u);
  EXPECT_EQ(rows.front()[2], 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i][2], rows[i - 1][2]);
  EXPECT_NEAR(rows.back()[2], 1.0, 1e-9);
}

TEST(Json, GofReportKeys) {
  GofReport r;
  r.test = GofTest::ks_one_sample;
  r.statistic = 0.01;
  r.n = 10;
  r.threshold = 0.4;
  r.pass = true;
  const json j = to_json(r);
  for (const char* k : {"test", "statistic", "n", "threshold", "pass"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_FALSE(j.contains("dof"));
}

TEST(Binary, ExitCodes) {
  const auto dir = scratch("exit");
  const auto write = [&](const std::string& name, const json& j) {
    std::ofstream(dir / name) << j.dump();
    return (dir / name).string();
  };
  const std::string good = write("good.json", base_chain());
  json bad = base_chain();
  bad["kappa"] = {1, 1};
  const std::string bad_cfg = write("bad.json", bad);
  const std::string lim = write("lim.json", {{"limit", "t_infinity"}, {"kappa", {1, 1, 1, 1}}});
  std::ofstream(dir / "blocker") << "x";

  EXPECT_EQ(run_cli("simulate --config " + good + " --out " + (dir / "o").string()), kExitOk);
  EXPECT_TRUE(fs::exists(dir / "o" / "trajectory_r0000.csv"));
  EXPECT_EQ(run_cli("limits --config " + lim + " --out " + (dir / "l").string()), kExitOk);
  EXPECT_EQ(run_cli("simulate --config " + bad_cfg), kExitUsage);
  EXPECT_EQ(run_cli("simulate --config " + (dir / "nope.json").string()), kExitUsage);
  EXPECT_EQ(run_cli("simulate"), kExitUsage);
  EXPECT_EQ(run_cli("frobnicate"), kExitUsage);
  EXPECT_EQ(run_cli("verify --suite nonsense"), kExitUsage);
  EXPECT_EQ(run_cli("simulate --config " + good + " --N 0.5"), kExitUsage);
  EXPECT_EQ(run_cli("reproduce fig9"), kExitUsage);
  // Output directory path blocked by a regular file: a runtime failure.
  EXPECT_EQ(run_cli("simulate --config " + good + " --out " + (dir / "blocker" / "sub").string()), kExitFailure);
  EXPECT_EQ(run_cli("--help"), kExitOk);
}

TEST(Config, ShippedConfigsParse) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(fs::path(CRNLAB_SOURCE_DIR) / "configs")) {
    if (e.path().extension() != ".json") continue;
    const json j = load_json(e.path());
    if (j.contains("limit")) EXPECT_NO_THROW(parse_limits(j)) << e.path();
    else EXPECT_NO_THROW(parse_experiment(j)) << e.path();
    ++n;
  }
  EXPECT_GE(n, 5u);
}

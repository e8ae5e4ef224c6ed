// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <cmath>
#include <fstream>

#include "crnlab/aimd.hpp"
#include "crnlab/chain_network.hpp"
#include "crnlab/mm_infinity.hpp"

namespace crnlab::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(where, "unknown key '" + k + "'");
  }
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "must be finite");
  return v;
}

std::int64_t get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::size_t get_count(const json& j, const std::string& where, std::size_t lo, std::size_t hi) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(where, "expected a non-negative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi) fail(where, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(v);
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_reals(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::int64_t> get_ints(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class E, std::size_t K>
E enum_from(const std::string& s, const std::array<E, K>& all, const std::string& where) {
  for (E e : all)
    if (to_string(e) == s) return e;
  std::string names;
  for (E e : all) names += (names.empty() ? "" : ", ") + to_string(e);
  fail(where, "'" + s + "' is not one of {" + names + "}");
}

constexpr std::array<Model, 10> kModels{Model::chain, Model::mminf, Model::tandem, Model::x4, Model::u4,
                                        Model::z4,    Model::r0,    Model::r1,     Model::vy, Model::ode};
constexpr std::array<Timescale, 4> kTimescales{Timescale::normal, Timescale::sqrtN, Timescale::overN,
                                               Timescale::N_2_3};
constexpr std::array<Output, 5> kOutputs{Output::trajectory, Output::occupation, Output::cycles, Output::gof,
                                         Output::fit};

bool counting(Model m) {
  return m == Model::chain || m == Model::mminf || m == Model::tandem || m == Model::x4 || m == Model::u4 ||
         m == Model::z4;
}

bool four_node(Model m) { return m == Model::x4 || m == Model::u4 || m == Model::z4; }

std::size_t state_dim(const ExperimentConfig& c) {
  switch (c.model) {
    case Model::chain: return static_cast<std::size_t>(c.m);
    case Model::mminf: return 1;
    case Model::tandem: return c.kappa.size() - 1;
    case Model::x4:
    case Model::u4:
    case Model::z4: return 4;
    default: return 0;
  }
}

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) fail(where, what);
}

template <class F>
void core_check(const std::string& where, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  } catch (const std::domain_error& e) {
    fail(where, e.what());
  }
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::chain: return "chain";
    case Model::mminf: return "mminf";
    case Model::tandem: return "tandem";
    case Model::x4: return "x4";
    case Model::u4: return "u4";
    case Model::z4: return "z4";
    case Model::r0: return "r0";
    case Model::r1: return "r1";
    case Model::vy: return "vy";
    case Model::ode: return "ode";
  }
  return "unknown";
}

std::string to_string(Timescale t) {
  switch (t) {
    case Timescale::normal: return "normal";
    case Timescale::sqrtN: return "sqrtN";
    case Timescale::overN: return "overN";
    case Timescale::N_2_3: return "N_2_3";
  }
  return "unknown";
}

std::string to_string(Output o) {
  switch (o) {
    case Output::trajectory: return "trajectory";
    case Output::occupation: return "occupation";
    case Output::cycles: return "cycles";
    case Output::gof: return "gof";
    case Output::fit: return "fit";
  }
  return "unknown";
}

double ExperimentConfig::horizon() const {
  switch (timescale) {
    case Timescale::normal: return t_end;
    case Timescale::sqrtN: return t_end * std::sqrt(N);
    case Timescale::overN: return t_end / N;
    case Timescale::N_2_3: return t_end / std::cbrt(N * N);
  }
  return t_end;
}

double ExperimentConfig::value_scale() const {
  if (occupation.value_scale == "one") return 1.0;
  if (occupation.value_scale == "N") return N;
  return std::sqrt(N);
}

std::vector<std::int64_t> ExperimentConfig::initial_state() const {
  const std::size_t d = state_dim(*this);
  if (init.kind == InitSpec::Kind::counts) return init.counts;
  if (init.kind == InitSpec::Kind::scaled) {
    return {init.x1, static_cast<std::int64_t>(std::floor(init.y * N)),
            init.x3, static_cast<std::int64_t>(std::floor(init.v * std::sqrt(N)))};
  }
  return std::vector<std::int64_t>(d, 0);
}

const std::set<std::string>& experiment_keys() {
  static const std::set<std::string> k{"model",    "m",    "kappa",   "init",       "t_end", "timescale", "N",
                                       "replicas", "seed", "outputs", "occupation", "ode"};
  return k;
}

const std::set<std::string>& limits_keys() {
  static const std::set<std::string> k{"limit",  "kappa", "y", "step", "t_max_fraction", "ode", "init",
                                       "t_end", "a",     "b", "x_max", "points"};
  return k;
}

void validate(const ExperimentConfig& c) {
  const std::string M = "model " + to_string(c.model);
  require(c.t_end > 0.0 && std::isfinite(c.t_end), "t_end", "must be positive");
  require(c.N >= 1.0 && std::isfinite(c.N), "N", "must be >= 1");
  require(c.replicas >= 1, "replicas", "must be >= 1");
  require(std::isfinite(c.horizon()) && c.horizon() > 0.0, "t_end", "horizon on the chosen timescale must be positive");
  if (!counting(c.model)) require(c.timescale == Timescale::normal, "timescale", M + " runs on the normal clock only");

  using K = InitSpec::Kind;
  const auto& k = c.kappa;
  switch (c.model) {
    case Model::chain:
      require(c.m >= 2 && c.m <= 64, "m", "must be in [2, 64]");
      require(k.size() == static_cast<std::size_t>(c.m) + 2, "kappa", "chain needs m+2 rates");
      core_check("kappa", [&] { ChainNetwork(c.m, k).validate(); });
      break;
    case Model::mminf:
      require(k.size() == 2, "kappa", "mminf needs (lambda, mu)");
      core_check("kappa", [&] { MMInfParams{k[0], k[1]}.validate(); });
      break;
    case Model::tandem:
      require(k.size() >= 2, "kappa", "tandem needs (lambda, mu_1, ..., mu_p)");
      core_check("kappa", [&] { TandemParams{k[0], {k.begin() + 1, k.end()}}.validate(); });
      break;
    case Model::x4:
    case Model::u4:
    case Model::z4:
      require(k.size() == 6, "kappa", "four-node models need kappa_0..kappa_5");
      for (double v : k) require(v >= 0.0, "kappa", "rates must be >= 0");
      break;
    case Model::r0:
      require(k.size() == 3, "kappa", "r0 needs (alpha, beta, gamma)");
      core_check("kappa", [&] { Aimd0Params{k[0], k[1], k[2]}.validate(); });
      break;
    case Model::r1:
      require(k.size() == 2, "kappa", "r1 needs (alpha, beta)");
      core_check("kappa", [&] { Aimd1Params{k[0], k[1]}.validate(); });
      break;
    case Model::vy:
      require(k.size() == 4, "kappa", "vy needs (k0, k3, k4, k5)");
      core_check("kappa", [&] { VyKappa{k[0], k[1], k[2], k[3]}.validate(); });
      break;
    case Model::ode:
      break;
  }
  if (c.model != Model::chain) require(c.m == 0, "m", "only used by model chain");

  // Initial state.
  if (counting(c.model)) {
    require(c.init.kind != K::values, "init", M + " takes counts or scaled");
    if (c.init.kind == K::scaled) {
      require(four_node(c.model), "init.scaled", "only for x4, u4, z4");
      require(c.init.y >= 0.0 && c.init.v >= 0.0 && c.init.x1 >= 0 && c.init.x3 >= 0, "init.scaled",
              "entries must be >= 0");
      require(c.init.y * c.N < 9e15 && c.init.v * std::sqrt(c.N) < 9e15, "init.scaled", "counts overflow");
    }
    if (c.init.kind == K::counts) {
      require(c.init.counts.size() == state_dim(c), "init.counts",
              "needs " + std::to_string(state_dim(c)) + " entries");
      for (auto v : c.init.counts) require(v >= 0, "init.counts", "entries must be >= 0");
    }
    const auto s = c.initial_state();
    if (c.model == Model::u4 || c.model == Model::z4) require(s[0] == 0, "init", "x1 must be 0 for u4 and z4");
    if (c.model == Model::z4) require(s[2] >= 1, "init", "z4 needs x3 >= 1");
  } else if (c.model == Model::vy) {
    require(c.init.kind == K::scaled, "init", "vy takes scaled (y, v)");
    require(c.init.y > 0.0 && c.init.v >= 0.0, "init.scaled", "vy needs y > 0 and v >= 0");
    require(c.init.x1 == 0 && c.init.x3 == 0, "init.scaled", "x1 and x3 are not used by vy");
  } else {
    require(c.init.kind == K::values || c.init.kind == K::none, "init", M + " takes values");
    if (c.model != Model::ode) {
      require(c.init.values.size() <= 1, "init.values", "AIMD models take one initial value");
      for (double v : c.init.values) require(v >= 0.0, "init.values", "must be >= 0");
    }
  }
  if (c.model == Model::ode) {
    require(c.replicas == 1, "replicas", "ode is deterministic; use 1");
    OdeSpec spec{c.ode_kind, k, c.init.values, c.t_end, c.ode_h, 1e-6, c.ode_stride};
    core_check("ode", [&] {
      spec.validate();
      (void)ode_rhs(spec);
    });
  }

  // Outputs.
  for (Output o : c.outputs) {
    const std::string where = "outputs." + to_string(o);
    switch (o) {
      case Output::trajectory: break;
      case Output::occupation: {
        require(counting(c.model), where, "needs a counting model");
        const auto& oc = c.occupation;
        require(oc.coord >= 1 && oc.coord <= state_dim(c), "occupation.coord", "out of range");
        require(oc.bins >= 1 && oc.bins <= 100000, "occupation.bins", "must be in [1, 100000]");
        const double t1 = oc.t1.value_or(c.t_end);
        require(oc.t0 >= 0.0 && t1 > oc.t0 && std::isfinite(t1), "occupation", "need 0 <= t0 < t1");
        break;
      }
      case Output::cycles: require(c.model == Model::x4, where, "only for x4"); break;
      case Output::gof:
        require(c.model == Model::mminf || c.model == Model::r0 || c.model == Model::r1 || c.model == Model::vy,
                where, "only for mminf, r0, r1, vy");
        require(c.replicas >= 30, where, "needs replicas >= 30");
        if (c.model == Model::mminf) require(c.initial_state()[0] == 0, where, "mminf gof needs an empty start");
        if (c.model == Model::r0) require(k[0] > 0.0, where, "r0 gof needs alpha > 0");
        if (c.model == Model::vy) require(k[0] > 0.0, where, "vy gof needs k0 > 0");
        break;
      case Output::fit:
        require(c.model == Model::x4 || c.model == Model::u4, where, "only for x4 and u4");
        require(c.timescale == Timescale::sqrtN, where, "fit needs timescale sqrtN");
        require(c.initial_state()[1] > 0, where, "fit needs x2 > 0 at the start");
        break;
    }
  }
}

ExperimentConfig parse_experiment(const json& j) {
  check_keys(j, experiment_keys(), "config");
  ExperimentConfig c;
  if (!j.contains("model")) fail("config", "missing 'model'");
  if (!j.contains("kappa")) fail("config", "missing 'kappa'");
  if (!j.contains("t_end")) fail("config", "missing 't_end'");
  c.model = enum_from(get_string(j["model"], "model"), kModels, "model");
  c.kappa = get_reals(j["kappa"], "kappa");
  c.t_end = get_number(j["t_end"], "t_end");
  if (j.contains("m")) c.m = static_cast<int>(get_count(j["m"], "m", 0, 64));
  if (j.contains("timescale")) c.timescale = enum_from(get_string(j["timescale"], "timescale"), kTimescales, "timescale");
  if (j.contains("N")) c.N = get_number(j["N"], "N");
  if (j.contains("replicas")) c.replicas = get_count(j["replicas"], "replicas", 1, 10000000);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected an unsigned integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("init")) {
    const auto& ji = j["init"];
    check_keys(ji, {"counts", "scaled", "values"}, "init");
    if (ji.size() != 1) fail("init", "give exactly one of counts, scaled, values");
    if (ji.contains("counts")) {
      c.init.kind = InitSpec::Kind::counts;
      c.init.counts = get_ints(ji["counts"], "init.counts");
    } else if (ji.contains("values")) {
      c.init.kind = InitSpec::Kind::values;
      c.init.values = get_reals(ji["values"], "init.values");
    } else {
      const auto& js = ji["scaled"];
      check_keys(js, {"y", "v", "x1", "x3"}, "init.scaled");
      c.init.kind = InitSpec::Kind::scaled;
      if (!js.contains("y")) fail("init.scaled", "missing 'y'");
      c.init.y = get_number(js["y"], "init.scaled.y");
      if (js.contains("v")) c.init.v = get_number(js["v"], "init.scaled.v");
      if (js.contains("x1")) c.init.x1 = get_int(js["x1"], "init.scaled.x1");
      if (js.contains("x3")) c.init.x3 = get_int(js["x3"], "init.scaled.x3");
    }
  }
  if (j.contains("outputs")) {
    if (!j["outputs"].is_array()) fail("outputs", "expected an array");
    for (const auto& o : j["outputs"]) c.outputs.insert(enum_from(get_string(o, "outputs[]"), kOutputs, "outputs[]"));
  }
  if (j.contains("occupation")) {
    const auto& jo = j["occupation"];
    check_keys(jo, {"coord", "bins", "t0", "t1", "value_scale"}, "occupation");
    if (jo.contains("coord")) c.occupation.coord = get_count(jo["coord"], "occupation.coord", 1, 64);
    if (jo.contains("bins")) c.occupation.bins = get_count(jo["bins"], "occupation.bins", 1, 100000);
    if (jo.contains("t0")) c.occupation.t0 = get_number(jo["t0"], "occupation.t0");
    if (jo.contains("t1")) c.occupation.t1 = get_number(jo["t1"], "occupation.t1");
    if (jo.contains("value_scale")) {
      c.occupation.value_scale = get_string(jo["value_scale"], "occupation.value_scale");
      const auto& s = c.occupation.value_scale;
      if (s != "one" && s != "sqrtN" && s != "N") fail("occupation.value_scale", "must be one, sqrtN or N");
    }
    if (!c.outputs.count(Output::occupation)) fail("occupation", "given but 'occupation' is not in outputs");
  }
  if (j.contains("ode")) {
    if (c.model != Model::ode) fail("ode", "only for model ode");
    const auto& jo = j["ode"];
    check_keys(jo, {"kind", "h", "record_stride"}, "ode");
    if (!jo.contains("kind")) fail("ode", "missing 'kind'");
    core_check("ode.kind", [&] { c.ode_kind = ode_kind_from_string(get_string(jo["kind"], "ode.kind")); });
    if (jo.contains("h")) c.ode_h = get_number(jo["h"], "ode.h");
    if (jo.contains("record_stride")) c.ode_stride = get_count(jo["record_stride"], "ode.record_stride", 1, 1u << 30);
  } else if (c.model == Model::ode) {
    fail("config", "model ode needs an 'ode' section");
  }
  validate(c);
  return c;
}

LimitsConfig parse_limits(const json& j) {
  check_keys(j, limits_keys(), "config");
  if (!j.contains("limit")) fail("config", "missing 'limit'");
  const std::string kind = get_string(j["limit"], "limit");
  LimitsConfig c;
  std::set<std::string> allowed{"limit"};
  if (kind == "t_infinity" || kind == "quadratic_decay") {
    c.kind = kind == "t_infinity" ? LimitsConfig::Kind::t_infinity : LimitsConfig::Kind::quadratic_decay;
    allowed.insert({"kappa", "y"});
    if (c.kind == LimitsConfig::Kind::quadratic_decay) allowed.insert({"step", "t_max_fraction"});
    check_keys(j, allowed, "config");
    if (!j.contains("kappa")) fail("config", "missing 'kappa'");
    c.kappa = get_reals(j["kappa"], "kappa");
    if (c.kappa.size() != 4) fail("kappa", "expected (k0, k3, k4, k5)");
    if (j.contains("y")) c.y = get_number(j["y"], "y");
    if (j.contains("step")) c.step = get_number(j["step"], "step");
    if (j.contains("t_max_fraction")) c.t_max_fraction = get_number(j["t_max_fraction"], "t_max_fraction");
    require(c.step > 0.0, "step", "must be positive");
    require(c.t_max_fraction > 0.0 && c.t_max_fraction < 1.0, "t_max_fraction", "must be in (0, 1)");
    core_check("kappa", [&] {
      const double t = t_infinity(c.kappa, c.y);
      if (!std::isfinite(t) || !(t > 0.0)) throw std::domain_error("t_infinity is not finite");
      if (c.t_max_fraction * t / c.step > 1e7) throw std::domain_error("table would exceed 1e7 rows");
    });
  } else if (kind == "ode") {
    c.kind = LimitsConfig::Kind::ode;
    check_keys(j, {"limit", "ode", "kappa", "init", "t_end"}, "config");
    for (const char* key : {"ode", "kappa", "init", "t_end"})
      if (!j.contains(key)) fail("config", std::string("missing '") + key + "'");
    const auto& jo = j["ode"];
    check_keys(jo, {"kind", "h", "record_stride"}, "ode");
    if (!jo.contains("kind")) fail("ode", "missing 'kind'");
    core_check("ode.kind", [&] { c.ode.kind = ode_kind_from_string(get_string(jo["kind"], "ode.kind")); });
    if (jo.contains("h")) c.ode.h = get_number(jo["h"], "ode.h");
    if (jo.contains("record_stride")) c.ode.record_stride = get_count(jo["record_stride"], "ode.record_stride", 1, 1u << 30);
    c.ode.kappa = get_reals(j["kappa"], "kappa");
    c.ode.init = get_reals(j["init"], "init");
    c.ode.t_end = get_number(j["t_end"], "t_end");
    core_check("ode", [&] {
      c.ode.validate();
      (void)ode_rhs(c.ode);
    });
  } else if (kind == "gamma0") {
    c.kind = LimitsConfig::Kind::gamma0;
    check_keys(j, {"limit", "a", "b", "x_max", "points"}, "config");
    if (j.contains("a")) c.a = get_number(j["a"], "a");
    if (j.contains("b")) c.b = get_number(j["b"], "b");
    if (j.contains("x_max")) c.x_max = get_number(j["x_max"], "x_max");
    if (j.contains("points")) c.points = get_count(j["points"], "points", 2, 10000000);
    require(c.x_max > 0.0, "x_max", "must be positive");
    core_check("config", [&] { Gamma0Params{c.a, c.b}.validate(); });
  } else {
    fail("limit", "'" + kind + "' is not one of {t_infinity, quadratic_decay, ode, gamma0}");
  }
  return c;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace crnlab::cli

#include "ahrad/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ahrad/errors.hpp"

namespace ahrad {

using nlohmann::json;

namespace {

double need_num(const json& j, const std::string& key, const std::string& at) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigInvalid(at + "." + key);
  return j[key].get<double>();
}

double opt_num(const json& j, const std::string& key, double dflt) {
  return j.contains(key) ? j[key].get<double>() : dflt;
}

std::vector<BumpSpec> parse_bumps(const json& arr, const std::string& at) {
  std::vector<BumpSpec> out;
  if (!arr.is_array()) throw ConfigInvalid(at + " must be an array");
  for (const auto& b : arr) {
    BumpSpec s;
    s.center = need_num(b, "center", at);
    s.halfwidth = need_num(b, "halfwidth", at);
    s.amp = cplx(opt_num(b, "amp_re", 1.0), opt_num(b, "amp_im", 0.0));
    s.chirp = opt_num(b, "chirp", 0.0);
    out.push_back(s);
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigInvalid(std::string("not valid JSON: ") + e.what());
  }
  RunConfig c;
  if (!j.contains("metric")) throw ConfigInvalid("metric");
  const json& jm = j["metric"];
  if (!jm.contains("profile")) throw ConfigInvalid("metric.profile");
  c.profile = jm["profile"].get<std::string>();
  c.params.a = opt_num(jm, "a", 0.0);
  c.params.x0 = opt_num(jm, "x0", 0.5);
  c.params.w = opt_num(jm, "w", 0.08);
  c.params.cut_center = opt_num(jm, "cut_center", 0.0);
  c.params.cut_rate = opt_num(jm, "cut_rate", 0.0);
  c.n = static_cast<int>(opt_num(jm, "n", 1));
  c.L = opt_num(jm, "L", 2.0 * M_PI);
  c.x_max = opt_num(jm, "x_max", 1.0);

  if (!j.contains("grid")) throw ConfigInvalid("grid");
  const json& jg = j["grid"];
  c.grid.delta = need_num(jg, "delta", "grid");
  c.grid.K = static_cast<int>(opt_num(jg, "K", 0));
  c.grid.s_min = need_num(jg, "s_min", "grid");
  c.grid.s_max = need_num(jg, "s_max", "grid");
  c.grid.ds = need_num(jg, "ds", "grid");
  c.grid.n_s = 0;

  double xg_lo = opt_num(jg, "x_grid_lo", 0.0);
  int xg_n = static_cast<int>(opt_num(jg, "x_grid_n", 1200));
  if (xg_lo <= 0.0) xg_lo = c.x_max / xg_n;
  c.xgrid = XGrid{xg_lo, (c.x_max - xg_lo) / (xg_n - 1), xg_n};

  if (j.contains("data")) {
    const json& jd = j["data"];
    if (jd.contains("random")) {
      c.random_count = static_cast<int>(need_num(jd["random"], "count", "data.random"));
    }
    if (jd.contains("modes")) {
      for (const auto& jmode : jd["modes"]) {
        DataModeConfig mc;
        if (jmode.contains("k") && jmode["k"].is_array()) {
          mc.k.k1 = jmode["k"][0].get<int>();
          mc.k.k2 = jmode["k"].size() > 1 ? jmode["k"][1].get<int>() : 0;
        } else {
          mc.k.k1 = static_cast<int>(opt_num(jmode, "k", 0));
        }
        if (jmode.contains("f1")) mc.f1 = parse_bumps(jmode["f1"], "data.f1");
        if (jmode.contains("f2")) mc.f2 = parse_bumps(jmode["f2"], "data.f2");
        c.data_modes.push_back(std::move(mc));
      }
    }
  }

  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigInvalid("experiment");
  c.experiment = j["experiment"].get<std::string>();

  if (j.contains("tolerances"))
    for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
      double v = it.value().get<double>();
      if (v <= 0.0) throw ConfigInvalid("tolerances." + it.key());
      c.tolerances[it.key()] = v;
    }
  c.output_dir = j.contains("output_dir") ? j["output_dir"].get<std::string>()
                                          : std::string("out");
  c.seed = static_cast<std::uint64_t>(opt_num(j, "seed", 1));
  c.tau = opt_num(j, "tau", 0.1);
  if (j.contains("x1_ladder"))
    for (const auto& v : j["x1_ladder"]) c.x1_ladder.push_back(v.get<double>());
  c.lambda_max = opt_num(j, "lambda_max", 16.0);
  c.n_lambda = static_cast<int>(opt_num(j, "n_lambda", 512));
  if (j.contains("metric2")) {
    const json& jm2 = j["metric2"];
    c.profile2 = jm2["profile"].get<std::string>();
    c.params2.a = opt_num(jm2, "a", 0.0);
    c.params2.x0 = opt_num(jm2, "x0", 0.5);
    c.params2.w = opt_num(jm2, "w", 0.08);
  }
  if (j.contains("refine_levels")) {
    c.refine_levels.clear();
    for (const auto& v : j["refine_levels"])
      c.refine_levels.push_back(v.get<int>());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

WarpedMetric RunConfig::metric() const {
  return build_metric(profile, params, n, L, x_max);
}

WarpedMetric RunConfig::metric2() const {
  if (profile2.empty()) throw ConfigInvalid("metric2");
  return build_metric(profile2, params2, n, L, x_max);
}

CauchyData RunConfig::data(const WarpedMetric& m) const {
  if (random_count > 0)
    return random_cauchy_data(m, xgrid, grid.K, 0.15 * x_max, 0.6 * x_max,
                              seed);
  CauchyData d;
  d.bdim = n;
  d.L = L;
  d.grid = xgrid;
  d.conj_symmetric = false;
  for (const auto& mc : data_modes) {
    ModeData md;
    md.k = mc.k;
    md.f1 = sample_bumps(xgrid, mc.f1);
    md.f2 = sample_bumps(xgrid, mc.f2);
    d.modes.push_back(std::move(md));
  }
  d.compute_support();
  return d;
}

std::string canonical_json(const RunConfig& c) {
  json j;
  j["metric"] = {{"profile", c.profile}, {"a", c.params.a},
                 {"x0", c.params.x0},    {"w", c.params.w},
                 {"n", c.n},             {"L", c.L},
                 {"x_max", c.x_max}};
  j["grid"] = {{"delta", c.grid.delta}, {"K", c.grid.K},
               {"s_min", c.grid.s_min}, {"s_max", c.grid.s_hi()},
               {"ds", c.grid.ds},       {"x_grid_lo", c.xgrid.x0},
               {"x_grid_n", c.xgrid.n}};
  json modes = json::array();
  for (const auto& mc : c.data_modes) {
    json jm;
    jm["k"] = {mc.k.k1, mc.k.k2};
    auto dump_bumps = [](const std::vector<BumpSpec>& bs) {
      json arr = json::array();
      for (const auto& b : bs)
        arr.push_back({{"center", b.center},
                       {"halfwidth", b.halfwidth},
                       {"amp_re", b.amp.real()},
                       {"amp_im", b.amp.imag()},
                       {"chirp", b.chirp}});
      return arr;
    };
    jm["f1"] = dump_bumps(mc.f1);
    jm["f2"] = dump_bumps(mc.f2);
    modes.push_back(jm);
  }
  j["data"] = {{"modes", modes}, {"random_count", c.random_count}};
  j["experiment"] = c.experiment;
  j["tolerances"] = c.tolerances;
  j["seed"] = c.seed;
  j["tau"] = c.tau;
  j["x1_ladder"] = c.x1_ladder;
  j["lambda_max"] = c.lambda_max;
  j["n_lambda"] = c.n_lambda;
  if (!c.profile2.empty())
    j["metric2"] = {{"profile", c.profile2}, {"a", c.params2.a}};
  j["refine_levels"] = c.refine_levels;
  return j.dump();
}

std::string config_hash(const RunConfig& c) {
  std::string s = canonical_json(c);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace ahrad

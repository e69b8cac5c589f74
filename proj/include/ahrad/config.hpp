#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ahrad/data.hpp"
#include "ahrad/metric.hpp"

namespace ahrad {

struct DataModeConfig {
  ModeKey k;
  std::vector<BumpSpec> f1, f2;
};

struct RunConfig {
  // metric block
  std::string profile = "hyperbolic";
  ProfileParams params;
  int n = 1;
  double L = 2.0 * M_PI;
  double x_max = 1.0;
  // grid block
  GridSpec grid;
  XGrid xgrid;
  // data block
  std::vector<DataModeConfig> data_modes;
  int random_count = 0;  // when > 0, use seeded random data instead
  // run
  std::string experiment;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  // experiment extras
  double tau = 0.1;                  // evolve
  std::vector<double> x1_ladder;     // invert / recover
  double lambda_max = 16.0;
  int n_lambda = 512;
  std::string profile2;              // recover: second metric
  ProfileParams params2;
  std::vector<int> refine_levels{1, 2, 4};  // convergence

  WarpedMetric metric() const;
  WarpedMetric metric2() const;
  CauchyData data(const WarpedMetric& m) const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string canonical_json(const RunConfig& c);
std::string config_hash(const RunConfig& c);  // 16 hex chars

}  // namespace ahrad

#pragma once

#include "alphavb/model.hpp"

#include <string>
#include <vector>

namespace alphavb::simgen {

struct SimConfig {
  int n = 0;
  int p = 0;
  int s = 0;
  std::uint64_t seed = 0;
  double signal_min = -3.0;
  double signal_max = 3.0;
  int test_n = -1; // -1 means same as n
};

struct SimInstance {
  MatrixXd X;
  VectorXd Y;
  VectorXd theta;
  std::vector<int> support; // sorted, 0-based
  MatrixXd X_test;
  VectorXd Y_test;
};

// Named benchmark designs "i".."iv"; seed left at 0 for the caller to fill.
SimConfig predefined_config(const std::string& name);

// X and X_test iid standard normal, support a uniform s-subset, signals iid
// U(signal_min, signal_max), unit noise. Train and test share theta.
SimInstance generate(const SimConfig& cfg);

// Writes X.csv, Y.csv, theta.csv, X_test.csv, Y_test.csv into dir (header row,
// shortest round-trip decimals, LF endings).
void write_csv(const SimInstance& inst, const std::string& dir);

} // namespace alphavb::simgen

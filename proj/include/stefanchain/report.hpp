#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace stefanchain {

enum class CheckKind { Analytic, FiniteDifference, Info };

const char* check_kind_name(CheckKind kind);

struct ResidualEntry {
  std::string id;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  CheckKind kind = CheckKind::Analytic;
};

// Streaming max/mean accumulator for one residual id.
struct ResidualAccum {
  double max_abs = 0.0;
  double sum_abs = 0.0;
  long count = 0;

  void add(double r);
  ResidualEntry entry(std::string id, CheckKind kind) const;
};

// Machine-readable outcome of one verification suite. Analytic identities are
// held to `tolerance`, truncation-limited finite-difference checks to
// `fd_tolerance`; Info entries are observations and never gate `passed`.
struct ResidualReport {
  std::string suite;
  std::string grid;
  std::vector<ResidualEntry> residuals;
  double tolerance = 1e-8;
  double fd_tolerance = 1e-3;
  bool passed = false;

  void add(const ResidualEntry& e) { residuals.push_back(e); }
  void finalize();
  const ResidualEntry* find(std::string_view id) const;
  double max_abs(std::string_view id) const;

  nlohmann::json to_json() const;
};

}  // namespace stefanchain

#include "stefanchain/report.hpp"

#include <cmath>

#include "stefanchain/error.hpp"

namespace stefanchain {

const char* check_kind_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::Analytic: return "analytic";
    case CheckKind::FiniteDifference: return "fd";
    case CheckKind::Info: return "info";
  }
  return "unknown";
}

void ResidualAccum::add(double r) {
  const double a = std::abs(r);
  max_abs = std::max(max_abs, a);
  sum_abs += a;
  ++count;
}

ResidualEntry ResidualAccum::entry(std::string id, CheckKind kind) const {
  ResidualEntry e;
  e.id = std::move(id);
  e.max_abs = max_abs;
  e.mean_abs = count > 0 ? sum_abs / count : 0.0;
  e.kind = kind;
  return e;
}

void ResidualReport::finalize() {
  passed = true;
  for (const auto& e : residuals) {
    if (e.kind == CheckKind::Info) continue;
    const double tol = e.kind == CheckKind::Analytic ? tolerance : fd_tolerance;
    if (!(e.max_abs <= tol) || !std::isfinite(e.max_abs)) passed = false;
  }
}

const ResidualEntry* ResidualReport::find(std::string_view id) const {
  for (const auto& e : residuals)
    if (e.id == id) return &e;
  return nullptr;
}

double ResidualReport::max_abs(std::string_view id) const {
  const ResidualEntry* e = find(id);
  if (!e) fail(ErrorCode::InvalidParams, "no residual entry '" + std::string(id) + "'");
  return e->max_abs;
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["grid"] = grid;
  j["tolerance"] = tolerance;
  j["fd_tolerance"] = fd_tolerance;
  j["passed"] = passed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : residuals) {
    arr.push_back({{"id", e.id},
                   {"max_abs", e.max_abs},
                   {"mean_abs", e.mean_abs},
                   {"kind", check_kind_name(e.kind)}});
  }
  j["residuals"] = arr;
  return j;
}

}  // namespace stefanchain

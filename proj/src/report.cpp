#include "holomotion/report.hpp"

#include <cmath>

namespace holomotion {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "FAIL";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

Verdict graded(double slack, double tol, double sampling_error) {
  if (!std::isfinite(slack)) return Verdict::Fail;
  if (slack <= tol) return Verdict::Pass;
  if (slack <= tol + sampling_error) return Verdict::Inconclusive;
  return Verdict::Fail;
}

nlohmann::json to_json(Complex z) {
  return nlohmann::json::array({z.real() + 0.0, z.imag() + 0.0});
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["claim"] = r.claim;
  j["parameters"] = r.parameters;
  j["max_ratio"] = r.max_ratio;
  j["witness_point"] = r.witness_point ? to_json(*r.witness_point) : nlohmann::json(nullptr);
  j["pass"] = r.pass();
  j["verdict"] = to_string(r.verdict);
  j["tolerances"] = r.tolerances;
  if (!r.details.empty()) j["details"] = r.details;
  if (!r.violation.empty()) j["violation"] = r.violation;
  return j;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 2;
}

}  // namespace holomotion

#pragma once

#include <optional>
#include <string>

#include "holomotion/families.hpp"
#include "json.hpp"

namespace holomotion {

inline constexpr const char* kReportSchema = "holomotion/1";

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

// Combine verdicts: any Fail fails, else any Inconclusive is inconclusive.
Verdict combine(Verdict a, Verdict b);

// Three-way verdict for a check that may only hold thanks to sampling error:
// Pass if `slack <= tol`, Inconclusive if `slack <= tol + sampling_error`,
// Fail otherwise. `slack` is how far the measured value sits past the claim.
Verdict graded(double slack, double tol, double sampling_error);

struct Report {
  std::string claim;
  nlohmann::json parameters = nlohmann::json::object();
  double max_ratio = 0.0;  // the claim's headline measured quantity
  std::optional<Complex> witness_point;
  Verdict verdict = Verdict::Fail;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();
  // For a failed claim: the inequality that was violated, in words.
  std::string violation;

  bool pass() const noexcept { return verdict == Verdict::Pass; }
};

nlohmann::json to_json(const Report& r);
nlohmann::json to_json(Complex z);

// Exit status the CLI uses for a verdict: 0 pass, 2 fail, 3 inconclusive.
int exit_code(Verdict v);

}  // namespace holomotion

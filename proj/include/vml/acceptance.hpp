#pragma once

#include "vml/equilibrium.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace vml {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;      // measured quantities, one line
  double seconds = 0;
  double budget = 0;       // runtime budget in seconds, part of the verdict
  nlohmann::json data;     // measured quantities, structured
};

// Criteria 1-7 run on the built-in profiles (Maxwellian, power law M = 4) as
// stated; 8-12 run on `primary`.
struct AcceptanceOptions {
  EquilibriumConfig primary;
  std::vector<int> only;  // empty: all twelve
};

int criterion_count();
std::string criterion_title(int id);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});
std::string format_result(const CriterionResult& r);
nlohmann::json result_json(const CriterionResult& r);

}  // namespace vml

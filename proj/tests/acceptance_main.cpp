// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Usage: acceptance [id ...]
#include "vml/acceptance.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  vml::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  int failed = 0;
  const auto results = vml::run_acceptance(opt, [&](const vml::CriterionResult& r) {
    std::printf("%s\n", vml::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}

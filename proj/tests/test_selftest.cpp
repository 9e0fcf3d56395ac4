#include <doctest.h>

#include "core/selftest.hpp"

TEST_CASE("selftest: fresh build passes every check") {
  const auto result = utie::run_selftest();
  CHECK(result.checks.size() > 30);
  CHECK(result.failures() == 0);
  CHECK(result.all_passed());
}

TEST_CASE("selftest: a population STD divisor is caught") {
  utie::SelftestOptions options;
  options.std_ddof = 0;
  const auto result = utie::run_selftest(options);
  CHECK_FALSE(result.all_passed());
  bool clip_ie_rfw_failed = false;
  for (const auto& check : result.checks) {
    if (!check.passed && check.name.find("CLIP/IE/RFW") != std::string::npos &&
        check.name.find("OpenCLIP") == std::string::npos) {
      clip_ie_rfw_failed = true;
    }
  }
  CHECK(clip_ie_rfw_failed);
}

TEST_CASE("selftest: output is deterministic") {
  CHECK(utie::run_selftest().to_text() == utie::run_selftest().to_text());
}

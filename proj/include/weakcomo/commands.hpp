#pragma once

#include <string>

namespace weakcomo {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandResult {
  int exit_code = 0;        // 0 ok, 2 input/parse, 3 precondition, 4 numerical
  std::string report_json;  // report on success, error object on failure
};

// Runs one of the front-end commands ("wc-check", "aggregate", "share",
// "demo") against a JSON configuration. Reports are deterministic given the
// config: keys are sorted and floats carry 12 significant digits.
CommandResult run_command(const std::string& name,
                          const std::string& config_json);

}  // namespace weakcomo

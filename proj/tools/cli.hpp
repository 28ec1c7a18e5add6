#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace parstat::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kNumerical = 4,
};

/// Machine-readable result of one command.
struct RunReport {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json rows = nlohmann::json::array();
  std::map<std::string, double> timings;  ///< wall-clock milliseconds per phase

  nlohmann::json to_json() const;
};

/// Runs `parstat <args...>` writing reports to `out` and diagnostics to
/// `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace parstat::cli

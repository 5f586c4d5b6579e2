#pragma once

// Command-line driver. `run` is the whole program minus argument parsing so
// tests can drive it directly.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blidkit/errors.hpp"

namespace blidkit::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseError = 2 };

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"cohomo", "solve"}
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> out;
  std::optional<double> tol;
  std::optional<int> samples;
  std::uint64_t seed = 1;
};

/// A verification inside a subcommand did not hold. `sample` names the
/// offending input when there is one.
class CheckFailed : public Error {
 public:
  CheckFailed(std::string check, const std::string& what,
              nlohmann::ordered_json sample = nullptr)
      : Error("CheckFailed", what),
        check_(std::move(check)),
        sample_(std::move(sample)) {}

  const std::string& check() const noexcept { return check_; }
  const nlohmann::ordered_json& sample() const noexcept { return sample_; }

 private:
  std::string check_;
  nlohmann::ordered_json sample_;
};

/// --out, then $BLIDKIT_OUT, then the working directory.
std::filesystem::path resolve_out_dir(const RunConfig& cfg);

/// Runs one subcommand. Progress goes to `log`; on failure a JSON error
/// report goes to `err` and to error.json in the output directory.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// Parses argv with CLI11 and calls run. Bad usage exits with kParseError.
int main_entry(int argc, char** argv, std::ostream& log, std::ostream& err);

}  // namespace blidkit::cli

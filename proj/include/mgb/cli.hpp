#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

// Batch experiment runner behind the `mgbounds` executable.
//
// Every subcommand reads one JSON document (--config FILE, optional) whose
// top-level keys are fixed per command; unknown keys are rejected. Scalar
// top-level keys can also be given as flags (--seed 7, --lambda-max 2),
// which override the document. Environment variables are never read.
namespace mgb::cli {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitUsage = 1,
    kExitVerificationFailed = 2,
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FieldType { Number, Integer, String, Boolean, Object, Array };

struct FieldSpec {
    std::string name;
    FieldType type;
    std::string help;
};

const std::vector<std::string>& command_names();

/// Throws ConfigError for an unknown command.
const std::vector<FieldSpec>& command_fields(const std::string& command);

/// Throws ConfigError on unknown keys or mistyped values.
void validate_config(const std::string& command, const nlohmann::json& config);

/// Runs a validated command. Reports go to config["output"] when given,
/// otherwise to `out`; diagnostics go to `err`.
int run_command(const std::string& command, const nlohmann::json& config, std::ostream& out, std::ostream& err);

/// Full command line: `mgbounds <command> [--config FILE] [--field value]...`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mgb::cli

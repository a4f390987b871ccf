#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.h"
#include "table.h"

namespace creutz::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kDomainError = 2, kIoError = 3 };

/// Runs one command. Library DomainError propagates; invalid numeric input
/// surfaces as ConfigError.
Table run_command(const RunConfig& config);

/// Full command line: `creutz <command> [--config FILE] [--set key=value]...
/// [--out PATH] [--format csv|json] [--timestamp]`. `args` excludes the
/// program name. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace creutz::cli

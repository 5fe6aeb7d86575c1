#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmod/coefficients.hpp"
#include "pmod/constructions.hpp"

namespace pmod {

struct RunConfig {
    Field field;
    std::string command;
    std::vector<std::string> args;
    std::optional<std::string> output_path;
    bool keep_ephemeral = false;
    bool emit_events = false;
    bool dump_snf = false;
    bool minimize = false;
    Side side = Side::left;
};

/// Exit codes: 0 success, 1 parse or usage error, 2 validation error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line and runs it.
int cli_main(int argc, char** argv);

}  // namespace pmod

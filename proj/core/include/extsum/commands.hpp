#pragma once

#include <iosfwd>
#include <string>

#include "extsum/run_config.hpp"

namespace extsum {

// Exit codes shared by every command:
//   0  success
//   1  usage or runtime error (bad flags, unknown problem, unreadable files,
//      aborted runs)
//   2  a monitored hypothesis or schedule relation failed

// Runs the configured algorithm, writes the trace and prints a one-line
// summary. Honors EXTSUM_SEED.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Prints each step-size relation with its verdict.
int cmd_validate_schedule(double c, double p, double q, std::ostream& out, std::ostream& err);

// Reads a trace (CSV or JSON), replays the hypothesis monitors and prints a
// JSON report.
int cmd_diagnose(const std::string& trace_path, std::ostream& out, std::ostream& err);

int cmd_list_problems(std::ostream& out);

} // namespace extsum

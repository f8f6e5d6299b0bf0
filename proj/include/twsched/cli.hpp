#pragma once

#include "twsched/simulator.hpp"

#include <iosfwd>

namespace twsched {

// Full command-line entry point, separated from main() so tests can drive it
// in-process.  Parses flags, runs the experiment, writes results.csv,
// aggregate.csv, and the preset's charts under --out-dir.
//
// Exit codes: 0 success, 1 runtime failure (I/O and similar), 2 bad usage or
// configuration.  --seed falls back to the TWSCHED_SEED environment
// variable, then to 1.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace twsched

#pragma once

// `aspectflow` command line: train, analyze, evaluate, report.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

namespace aspectflow::cli {

int run(int argc, const char* const* argv);

}  // namespace aspectflow::cli

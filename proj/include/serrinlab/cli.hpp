#pragma once

namespace serrinlab {

/// Runs the command line. Exit codes: 0 success, 2 validation error,
/// 3 numerical non-convergence, 4 theorem-inconsistency verdict.
int dispatch(int argc, const char* const* argv);

}  // namespace serrinlab

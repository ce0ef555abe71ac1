#pragma once

namespace dpbb {

/// Entry point behind the dpbb binary. Exit codes: 0 success,
/// 1 solver error, 2 usage error.
int run_cli(int argc, char** argv);

}  // namespace dpbb

#pragma once

namespace kbrank::service {

/// Entry point of the kbrank command-line tool. Returns the process exit code: 0 on success,
/// 1 on a runtime failure, 2 on bad usage.
int run_cli(int argc, char** argv);

}  // namespace kbrank::service

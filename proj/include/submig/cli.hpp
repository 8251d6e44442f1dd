#pragma once

namespace submig::cli {

/// Runs the `submig` command line. Returns the process exit status:
/// 0 success, 1 computation error, 2 usage or configuration error.
int run(int argc, char** argv);

}  // namespace submig::cli

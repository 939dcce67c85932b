#pragma once

namespace hfgas::cli {

enum ExitCode { kOk = 0, kNumericalFailure = 1, kUsageError = 2 };

int run(int argc, char** argv);

}  // namespace hfgas::cli

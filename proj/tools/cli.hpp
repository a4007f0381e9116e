#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xprim::cli {

/// Exit codes: 0 verified or pass, 1 refuted or fail, 2 input error,
/// 3 resource cap.
enum ExitCode : int { kOk = 0, kFail = 1, kInput = 2, kResource = 3 };

/// Runs one `xprim` command. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xprim::cli

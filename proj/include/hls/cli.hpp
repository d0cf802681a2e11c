#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

inline constexpr int kSchemaVersion = 1;

/// Parses argv and runs one of the subcommands constants / evaluate /
/// maximize / classify. Documents go to --out (or `out`), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hls::cli

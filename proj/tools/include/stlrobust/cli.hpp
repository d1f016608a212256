#pragma once

#include <iosfwd>

namespace stlrobust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the `stlrobust` tool:
///   stlrobust falsify|gridscan|eval <config.json> [--seed-offset N] [--out DIR] [--jobs N]
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stlrobust::cli

#pragma once

#include <string>

#include "basel/ledger.hpp"

namespace basel::report {

inline constexpr int kJsonVersion = 1;

/// {version, config, claims: [{id, lhs, rhs, abs_diff, passed, evals, ms}],
/// all_passed}, keys in that order. With include_timing == false every "ms"
/// is 0, which makes the output reproducible byte for byte.
std::string to_json(const ledger::Report& report, bool include_timing = true);

/// Fixed-width table: id, lhs, rhs, |diff|, status; one row per claim.
std::string to_table(const ledger::Report& report);

}  // namespace basel::report

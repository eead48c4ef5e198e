#pragma once

#include <string>

#include "cuniform/policy.hpp"

namespace cuniform {

inline constexpr int kPolicyFormatVersion = 1;

// Versioned JSON document: header (model, grid, dt, actions, horizon, seed,
// compatibility hash), then per-level cell lists with exact "num/den"
// probabilities and the per-level solve statistics. Writing is canonical:
// the same table always produces identical bytes.
void save_policy(const PolicyTable& table, const std::string& path);

// Throws PolicyMismatchError if the stored compatibility hash does not match
// the loaded contents, ConfigError on malformed files.
PolicyTable load_policy(const std::string& path);

}  // namespace cuniform

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace lasgap {

uint64_t fnv1a64(std::string_view s);

// 16 lowercase hex digits of the FNV-1a hash of the compact JSON dump.
// Stable content address for artifact files.
std::string content_id(const nlohmann::json& j);

}  // namespace lasgap

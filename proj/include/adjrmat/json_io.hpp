#pragma once

#include <string>

#include "json.hpp"

namespace adjrmat {

/// Serializes `j` with every floating value printed to 17 significant
/// digits (always with a decimal point or exponent). Object keys keep the
/// ordering of nlohmann::json (sorted), so equal documents give equal bytes.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace adjrmat

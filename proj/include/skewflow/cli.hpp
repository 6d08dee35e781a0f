#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewflow/filiform.hpp"
#include "skewflow/skewtrans.hpp"

namespace skewflow::cli {

/// Entry point of the `skewflow` executable. Exit codes: 0 success,
/// 1 validation or configuration error, 2 runtime or numeric error.
int run(int argc, char** argv);
int run(const std::vector<std::string>& args);

double parse_decimal(const nlohmann::json& j);
SkewTranslation system_from_json(const nlohmann::json& system);
NilflowSpec nilflow_from_json(const nlohmann::json& nilflow);
std::uint64_t fnv1a64(const std::string& bytes);

} // namespace skewflow::cli

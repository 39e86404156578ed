#ifndef MVSF_OUTPUT_HPP
#define MVSF_OUTPUT_HPP

#include <json.hpp>
#include <ostream>
#include <string>

#include "mvsf/specfun.hpp"

namespace mvsf {
namespace output {

/// schema_version of every emitted record.
inline constexpr const char* kSchemaVersion = "1";

/// 17 significant digits; round-trips doubles exactly.
std::string format_double(double x);

/// Complex numbers serialize as [re, im].
nlohmann::json complex_to_json(const cplx& z);

/// Deterministic writer: object keys sorted (nlohmann default), all numbers
/// through format_double, no locale dependence.
void write_json(std::ostream& os, const nlohmann::json& j);

/// Record envelope: command echo, parameters, result, diagnostics.
nlohmann::json make_record(const std::string& command,
                           const nlohmann::json& parameters,
                           const nlohmann::json& result,
                           const nlohmann::json& diagnostics);

}  // namespace output
}  // namespace mvsf

#endif  // MVSF_OUTPUT_HPP

#include "mvsf/output.hpp"

#include <cstdio>

namespace mvsf {
namespace output {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json complex_to_json(const cplx& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

namespace {

void write_value(std::ostream& os, const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      os << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << nlohmann::json(it.key()).dump() << ':';
        write_value(os, it.value());
      }
      os << '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',';
        first = false;
        write_value(os, v);
      }
      os << ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      os << format_double(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const nlohmann::json& j) {
  write_value(os, j);
  os << '\n';
}

nlohmann::json make_record(const std::string& command,
                           const nlohmann::json& parameters,
                           const nlohmann::json& result,
                           const nlohmann::json& diagnostics) {
  nlohmann::json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["command"] = command;
  rec["parameters"] = parameters;
  rec["result"] = result;
  rec["diagnostics"] = diagnostics;
  return rec;
}

}  // namespace output
}  // namespace mvsf

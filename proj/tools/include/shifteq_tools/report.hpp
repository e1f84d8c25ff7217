#ifndef SHIFTEQ_TOOLS_REPORT_HPP
#define SHIFTEQ_TOOLS_REPORT_HPP

#include <string>

#include <json.hpp>

#include "shifteq/field.hpp"
#include "shifteq/linalg.hpp"
#include "shifteq/set_solver.hpp"

namespace shifteq::tools {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::json;

/// Field elements as canonical strings: decimal over F_p, "a/b" over Q.
template <Field F>
Json to_json(const F& field, const Vec<F>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(field.to_string(x));
  return arr;
}

template <Field F>
Json basis_to_json(const F& field, const std::vector<Vec<F>>& basis) {
  Json arr = Json::array();
  for (const auto& v : basis) arr.push_back(to_json(field, v));
  return arr;
}

/// Fields shared by every report.
template <Field F>
Json base_report(const std::string& command, const F& field, const SetConfig<F>& cfg) {
  Json r;
  r["schema_version"] = kReportSchemaVersion;
  r["command"] = command;
  r["field"] = field.spec().to_string();
  r["seed"] = cfg.seed;
  r["epsilon"] = cfg.epsilon;
  r["algorithm"] = cfg.algorithm == Algorithm::kAlt ? "alt" : "main";
  return r;
}

template <Field F>
Json shift_report(const std::string& command, const F& field, const SetConfig<F>& cfg, const ShiftResult<F>& res) {
  Json r = base_report(command, field, cfg);
  r["status"] = res.found() ? "shift" : "fail";
  r["shift"] = res.found() ? to_json(field, res.shift) : Json(nullptr);
  r["degree"] = res.degree ? Json(*res.degree) : Json("zero");
  r["queries_used"] = res.queries_used;
  r["wall_time_ms"] = res.wall_time_ms;
  if (res.stabilizer) {
    r["stabilizer_dim"] = res.stabilizer->dim();
    r["stabilizer_basis"] = basis_to_json(field, res.stabilizer->basis);
  }
  if (res.dense_verified) r["dense_verified"] = *res.dense_verified;
  return r;
}

/// The report minus timing fields, serialized; equal for equal runs.
inline std::string stable_dump(Json r) {
  r.erase("wall_time_ms");
  return r.dump();
}

/// "key: value" lines in key order.
inline std::string human_readable(const Json& r) {
  std::string out;
  for (const auto& [key, value] : r.items()) {
    out += key;
    out += ": ";
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
  return out;
}

}  // namespace shifteq::tools

#endif  // SHIFTEQ_TOOLS_REPORT_HPP

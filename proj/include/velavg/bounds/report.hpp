#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace velavg {

/// Outcome of one inequality check lhs <= rhs.
///
/// pass is lhs <= rhs + 3 mc_error; margin is rhs - lhs before error bars.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double mc_error = 0.0;
  bool pass = true;
  nlohmann::json parameters = nlohmann::json::object();

  /// margin - 3 mc_error: positive when the bound holds net of error bars.
  double net_margin() const { return margin - 3.0 * mc_error; }
};

BoundReport make_report(std::string name, double lhs, double rhs, double mc_error,
                        nlohmann::json parameters = nlohmann::json::object());

nlohmann::json to_json(const BoundReport& r);
/// Inverse of to_json; throws nlohmann::json::exception on missing fields.
BoundReport report_from_json(const nlohmann::json& j);

/// CSV with header name,lhs,rhs,margin,pass and one row per report. Numbers
/// use 17 significant digits.
std::string summary_csv(const std::vector<BoundReport>& reports);

}  // namespace velavg

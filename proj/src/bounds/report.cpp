#include "velavg/bounds/report.hpp"

#include <iomanip>
#include <sstream>

namespace velavg {

BoundReport make_report(std::string name, double lhs, double rhs, double mc_error,
                        nlohmann::json parameters) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.mc_error = mc_error;
  r.pass = lhs <= rhs + 3.0 * mc_error;
  r.parameters = std::move(parameters);
  return r;
}

nlohmann::json to_json(const BoundReport& r) {
  return nlohmann::json{{"name", r.name},       {"lhs", r.lhs},   {"rhs", r.rhs},
                        {"margin", r.margin},   {"mc_error", r.mc_error},
                        {"pass", r.pass},       {"parameters", r.parameters}};
}

BoundReport report_from_json(const nlohmann::json& j) {
  BoundReport r;
  r.name = j.at("name").get<std::string>();
  r.lhs = j.at("lhs").get<double>();
  r.rhs = j.at("rhs").get<double>();
  r.margin = j.at("margin").get<double>();
  r.mc_error = j.at("mc_error").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.parameters = j.at("parameters");
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string summary_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "name,lhs,rhs,margin,pass\n";
  for (const BoundReport& r : reports) {
    os << csv_field(r.name) << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
       << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace velavg

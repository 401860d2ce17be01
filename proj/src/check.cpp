#include "expcensus/check.hpp"

#include <cstdio>

namespace expcensus {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Pass: return "true";
    case Status::Fail: return "false";
    case Status::Inconclusive: return "inconclusive";
  }
  return "false";
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_quantity(const Quantity& q) {
  if (const auto* d = std::get_if<double>(&q)) return format_double(*d);
  return std::get<LevelIndex>(q).str();
}

std::string CheckResult::relation_text() const {
  switch (relation) {
    case Relation::LessEqual: return "<=";
    case Relation::RatioToOne: return "ratio->1";
    case Relation::WithinTolerance: return "=within(" + format_double(tolerance) + ")";
  }
  return "?";
}

std::string CheckResult::params_text() const {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ';';
    out += key + '=' + value;
  }
  return out;
}

}  // namespace expcensus

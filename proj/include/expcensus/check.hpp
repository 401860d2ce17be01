#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expcensus/tower.hpp"

namespace expcensus {

enum class Relation {
  LessEqual,       // observed <= target
  RatioToOne,      // observed is a ratio whose distance from 1 must shrink
  WithinTolerance  // |observed - target| <= tolerance
};

enum class Status { Pass, Fail, Inconclusive };

std::string_view to_string(Status status);

/// Observed values and targets are plain doubles unless they only fit a tower.
using Quantity = std::variant<double, LevelIndex>;

std::string format_quantity(const Quantity& q);
std::string format_double(double x);

/// One verification item.
struct CheckResult {
  std::string suite;
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  Quantity observed = 0.0;
  Quantity target = 0.0;
  Relation relation = Relation::LessEqual;
  double tolerance = 0.0;
  Status status = Status::Inconclusive;
  long runtime_ms = 0;
  std::string notes;

  bool passed() const noexcept { return status == Status::Pass; }
  bool failed() const noexcept { return status == Status::Fail; }
  std::string relation_text() const;
  std::string params_text() const;
};

}  // namespace expcensus

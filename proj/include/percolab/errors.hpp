#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

// An enumeration query hit its node-expansion cap. The query is beyond the
// configured budget, not wrong; callers may retry with a larger budget.
class budget_exceeded : public std::runtime_error {
 public:
  explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// A series evaluation asked for a count the table does not hold.
class missing_count : public std::out_of_range {
 public:
  explicit missing_count(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace percolab

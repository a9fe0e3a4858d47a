#pragma once

#include <stdexcept>
#include <string>

namespace graphquad {

/// Malformed or unreadable data files (edge lists, rules, clouds, ...).
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative routine failed to reach its tolerance and the result is
/// unusable (most solvers instead return their best iterate plus a flag).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphquad

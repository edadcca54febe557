#pragma once

#include <stdexcept>
#include <string>

namespace wsnsim {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Locale-independent shortest-form formatting with 9 significant digits.
std::string format_number(double value);

}  // namespace wsnsim

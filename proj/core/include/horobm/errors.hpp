#pragma once

#include <stdexcept>
#include <string>

namespace horobm {

struct error : std::runtime_error {
  explicit error(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace horobm

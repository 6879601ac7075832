#pragma once

#include <stdexcept>
#include <string>

namespace radhf {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PrecisionError : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  GridMismatch() : Error("radial functions live on different grids") {}
};

class MemoryBudgetError : public Error {
public:
  MemoryBudgetError(std::size_t required, std::size_t budget);
  std::size_t required_bytes;
  std::size_t budget_bytes;
};

class EigenError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  ConfigError(std::string field, const std::string &message)
      : Error(field + ": " + message), field(std::move(field)) {}
  std::string field;
};

} // namespace radhf

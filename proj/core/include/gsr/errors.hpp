#pragma once

#include <stdexcept>
#include <string>

namespace gsr {

/// Vector/operator dimension disagreement.
class dimension_error : public std::invalid_argument {
public:
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Invalid scheme, file or parameter configuration.
class config_error : public std::invalid_argument {
public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite values or operator breakdown during iteration.
class numerical_error : public std::runtime_error {
public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// File parsing failure; message carries the byte offset.
class parse_error : public std::runtime_error {
public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gsr

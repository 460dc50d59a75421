#pragma once

#include <stdexcept>
#include <string>

namespace doorkit {

// Base for every error raised on bad input. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Schema violation in a structured file. path() names the offending element,
// e.g. "annotations[3].label".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace doorkit

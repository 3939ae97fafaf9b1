#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace riskaware {

// Categories map onto CLI exit codes and the service's error payloads.
enum class ErrorCategory {
  kParse,
  kSchema,
  kValidation,
  kDegenerateGeometry,
  kNotFound,
  kRuntime,
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string field_path, const std::string& message)
      : std::runtime_error(field_path.empty() ? message : field_path + ": " + message),
        category_(category),
        field_path_(std::move(field_path)),
        message_(message) {}

  ErrorCategory category() const { return category_; }
  const std::string& field_path() const { return field_path_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCategory category_;
  std::string field_path_;
  std::string message_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(ErrorCategory::kParse, "", message) {}
};

class SchemaError : public Error {
 public:
  SchemaError(std::string field_path, const std::string& message)
      : Error(ErrorCategory::kSchema, std::move(field_path), message) {}
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field_path, const std::string& message)
      : Error(ErrorCategory::kValidation, std::move(field_path), message) {}
};

class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& message)
      : Error(ErrorCategory::kDegenerateGeometry, "", message) {}
};

class NotFoundError : public Error {
 public:
  NotFoundError(std::string field_path, const std::string& message)
      : Error(ErrorCategory::kNotFound, std::move(field_path), message) {}
};

}  // namespace riskaware

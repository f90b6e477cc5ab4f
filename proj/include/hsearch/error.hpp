#pragma once

#include <stdexcept>
#include <string>

namespace hsearch {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input file could not be read or parsed (CSV, JSONL, JSON).
class IngestionError : public Error {
  public:
    using Error::Error;
};

/// Metadata disagrees with the data it describes.
class SchemaError : public Error {
  public:
    using Error::Error;
};

class RoleInferenceError : public Error {
  public:
    using Error::Error;
};

class BuildError : public Error {
  public:
    using Error::Error;
};

class ArgumentError : public Error {
  public:
    using Error::Error;
};

class LookupError : public Error {
  public:
    using Error::Error;
};

/// No attribute of the chosen data source could be bound from the query.
class SpecUnresolvable : public Error {
  public:
    using Error::Error;
};

class ExecutionError : public Error {
  public:
    using Error::Error;
};

class EncodingError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace hsearch

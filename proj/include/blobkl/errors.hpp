#pragma once

#include <stdexcept>
#include <string>

namespace blobkl {

// Base of every error raised by the library. The CLI maps ValidationError
// subclasses to exit code 2 and ConsistencyError subclasses to exit code 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input: the caller asked for something outside an operation's domain.
class ValidationError : public Error {
public:
  using Error::Error;
};

// An internal invariant failed. Never repaired silently.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

class IndexError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class LevelMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class SizeMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ShapeMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ResidueMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotRegular : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotApplicable : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UnsupportedError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class CapExceeded : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DecompositionError : public ConsistencyError {
public:
  using ConsistencyError::ConsistencyError;
};

class MultipleNewHyperplanes : public ConsistencyError {
public:
  using ConsistencyError::ConsistencyError;
};

} // namespace blobkl

#pragma once

#include <stdexcept>
#include <string>

namespace semrel {

// Bad input or a broken invariant. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable/unwritable files and similar environment failures (exit code 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed external data (SPARQL JSON, corpus records, checkpoints).
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace semrel

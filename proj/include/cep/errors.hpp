#pragma once

#include <stdexcept>
#include <string>

namespace cep {

/// Malformed input: bad syntax, missing mandatory field, unparseable value.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Violation of a domain rule (ordering, state machine, capacity, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point arithmetic left the representable range.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure talking to the filesystem-backed store.
class StoreError : public std::runtime_error {
public:
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cep

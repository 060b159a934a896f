#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slag {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Jets combined across different base points or orders, or asked for
/// something their truncation cannot deliver.
class JetError : public Error {
public:
    using Error::Error;
};

/// A value left the domain of a function (log of a non-positive number,
/// division by a jet without constant term, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exact-rational arithmetic was asked for a value that is not rational
/// (exp(1), pi, sqrt(2), ...).
class InexactError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected)
        : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
          offset_(offset),
          expected_(std::move(expected))
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class FamilyError : public Error {
public:
    using Error::Error;
};

} // namespace slag

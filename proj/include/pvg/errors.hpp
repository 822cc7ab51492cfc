#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was applied outside its mathematical domain (v_p(0), log off 1 + p^k Z_p, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameters violate a configuration invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A p-adic quantity could not be certified at the available precision.
class IndeterminateError : public Error {
public:
    IndeterminateError(const std::string& what, unsigned long precision_reached)
        : Error(what), precision_(precision_reached) {}
    unsigned long precision_reached() const noexcept { return precision_; }

private:
    unsigned long precision_;
};

/// Input lies outside the fragment of the language the procedures handle.
class UnsupportedFragment : public Error {
public:
    using Error::Error;
};

/// A combinatorial search would exceed the configured budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace pvg

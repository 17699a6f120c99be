#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relbac {

/** Base class for all errors raised by the engine. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** A node id that is not present in the system graph. */
class UnknownNodeError : public Error {
public:
    explicit UnknownNodeError(const std::string& node)
        : Error("no such node: " + node), node_(node) {}
    const std::string& node() const { return node_; }

private:
    std::string node_;
};

/** Syntax error in a path expression or document; carries a position. */
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line_(line), column_(column) {}
    explicit ParseError(const std::string& msg, std::size_t offset = 0)
        : ParseError(msg, 1, offset + 1) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/** A mutation or document that violates the system model. */
class WellFormednessError : public Error {
public:
    explicit WellFormednessError(const std::string& msg) : Error(msg) {}
};

/** Invalid engine configuration (strategies, thresholds, wall settings). */
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/** A generated principal name collides with one already used by a policy. */
class NameCollisionError : public Error {
public:
    explicit NameCollisionError(const std::string& msg) : Error(msg) {}
};

}  // namespace relbac

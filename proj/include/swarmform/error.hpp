#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace swarmform {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument (CLI exit status 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Mask text rejected by the parser. Line and column are 1-based; 0 means
/// the error concerns the file as a whole.
class MaskParseError : public Error {
public:
    MaskParseError(const std::string& detail, int line, int column,
                   const std::string& source = "mask")
        : Error(format(detail, line, column, source)),
          detail_(detail), line_(line), column_(column) {}

    const std::string& detail() const noexcept { return detail_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& detail, int line, int column,
                              const std::string& source) {
        if (line == 0) return source + ": " + detail;
        return source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + detail;
    }
    std::string detail_;
    int line_;
    int column_;
};

/// A robot flag update that the state machine does not allow.
class InvariantViolation : public Error {
public:
    InvariantViolation(const std::string& what, std::int64_t robot, std::int64_t tick)
        : Error("robot " + std::to_string(robot) + " at tick " + std::to_string(tick) + ": " + what),
          robot_(robot), tick_(tick) {}

    std::int64_t robot() const noexcept { return robot_; }
    std::int64_t tick() const noexcept { return tick_; }

private:
    std::int64_t robot_;
    std::int64_t tick_;
};

/// Breach of an abstract-model operation's precondition.
class SchemaViolation : public Error {
public:
    SchemaViolation(const std::string& schema, const std::string& predicate)
        : Error(schema + ": precondition '" + predicate + "' does not hold"),
          schema_(schema), predicate_(predicate) {}

    const std::string& schema() const noexcept { return schema_; }
    const std::string& predicate() const noexcept { return predicate_; }

private:
    std::string schema_;
    std::string predicate_;
};

/// File-system failure; the message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace swarmform

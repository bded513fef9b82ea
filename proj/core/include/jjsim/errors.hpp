#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jjsim {

/// Base class for all jjsim errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed lookup table (fewer than 2 points, non-increasing x, bad y).
/// Raised at construction time; table evaluation itself never throws.
class InvalidTableError : public Error {
public:
    using Error::Error;
};

/// Device card file could not be read or violates the card grammar.
class CardError : public Error {
public:
    CardError(const std::string& path, int line, const std::string& msg)
        : Error(path + ":" + std::to_string(line) + ": " + msg),
          path_(path), line_(line) {}

    const std::string& path() const { return path_; }
    int line() const { return line_; }

private:
    std::string path_;
    int line_;
};

/// Netlist syntax error, reported with 1-based line and column.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& msg)
        : Error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                ": " + msg),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Subcircuit expansion or model resolution failure.
class ElaborationError : public Error {
public:
    using Error::Error;
};

/// Singular MNA system; carries the names of nodes with no path to ground.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& msg, std::vector<std::string> nodes)
        : Error(msg), floating_nodes_(std::move(nodes)) {}

    const std::vector<std::string>& floating_nodes() const { return floating_nodes_; }

private:
    std::vector<std::string> floating_nodes_;
};

/// An operation was called with arguments that violate its contract,
/// e.g. evaluating a JJFET branch with an nTron state.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace jjsim

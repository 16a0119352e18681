#pragma once

#include <stdexcept>
#include <string>

namespace mono {

// A request exceeded a configured memory or scan budget.  These are
// recoverable: the caller can retry with a smaller window or a higher
// configured limit.  The CLI maps them to exit status 3.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition (unsorted input,
// non-powerful gamma, non-operational scales, ...).
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// Malformed input file; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace mono

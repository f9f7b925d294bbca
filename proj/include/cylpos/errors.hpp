#ifndef CYLPOS_ERRORS_HPP
#define CYLPOS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cylpos {

/// Caller supplied something outside an operation's contract.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text could not be parsed; carries the 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A property that the construction guarantees did not hold. Always a bug.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cylpos

#endif  // CYLPOS_ERRORS_HPP

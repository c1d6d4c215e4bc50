#ifndef SPM_ERRORS_HPP
#define SPM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spm {

// Malformed pattern text. row/col are 1-based; col is 0 when the error
// concerns a whole row (e.g. ragged input).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int row, int col)
        : std::runtime_error(std::move(msg)), row_(row), col_(col) {}
    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_;
    int col_;
};

// An enumeration (composite cycles, transversal terms, ...) was asked to run
// past the configured size cap. The caller gets an explicit refusal, never a
// truncated answer.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(std::string msg) : std::runtime_error(std::move(msg)) {}
};

// Numerical trouble in the eigensolver or one of the dual-path self-checks.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

}  // namespace spm

#endif

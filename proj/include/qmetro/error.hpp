#pragma once

#include <stdexcept>
#include <string>

namespace qmetro {

enum class ErrorKind {
    NotHermitian,
    NoConvergence,
    DimMismatch,
    NotPsd,
    InvalidState,
    BadTable,
    SingularFisher,
    IncompletePolicy,
    DomainError,
    Schema,
    Io,
};

const char *to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what went wrong.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace qmetro

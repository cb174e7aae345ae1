#pragma once

#include <stdexcept>
#include <string>

namespace postmine {

/// Base of every error raised by the library. `kind()` is a short stable tag
/// used by the CLI to choose an exit code and by reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define POSTMINE_DECLARE_ERROR(Name, Tag)                                      \
    class Name : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
        const char* kind() const noexcept override { return Tag; }             \
    }

POSTMINE_DECLARE_ERROR(ParseError, "parse");
POSTMINE_DECLARE_ERROR(ValidationError, "validation");
POSTMINE_DECLARE_ERROR(ArgumentError, "argument");
POSTMINE_DECLARE_ERROR(NotFoundError, "not-found");
POSTMINE_DECLARE_ERROR(InsufficientDataError, "insufficient-data");
POSTMINE_DECLARE_ERROR(UndefinedIndicatorError, "undefined-indicator");
POSTMINE_DECLARE_ERROR(DependencyError, "dependency");
POSTMINE_DECLARE_ERROR(IoError, "io");

#undef POSTMINE_DECLARE_ERROR

}  // namespace postmine

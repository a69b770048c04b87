#pragma once

#include <stdexcept>
#include <string>

namespace debtrec {

enum class ErrorKind {
    Validation,        // parameter, configuration or data-domain violation
    Io,                // file could not be read or written
    InsufficientData,  // too few observations, empty overlap
    NearSingular,      // closed form not usable for these eigenvalues
    OutOfRange,        // query outside a grid
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& what)
        : Error(ErrorKind::InsufficientData, what) {}
};

struct NearSingularError : Error {
    explicit NearSingularError(const std::string& what) : Error(ErrorKind::NearSingular, what) {}
};

struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& what) : Error(ErrorKind::OutOfRange, what) {}
};

/// Process exit code for an error kind: 2 validation, 3 I/O, 4 insufficient data.
int exit_code_for(ErrorKind kind) noexcept;

}  // namespace debtrec

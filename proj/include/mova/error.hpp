#pragma once

#include <stdexcept>
#include <string>

namespace mova {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a MOVA operation (bad parameters, non-invertible element...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed key file, registry record or other persisted artifact.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace mova

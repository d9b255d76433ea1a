#pragma once

#include <stdexcept>
#include <string>

namespace modsys {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A name (scale, DA, table, composition) that does not resolve.
class ReferenceError : public Error {
public:
    using Error::Error;
};

} // namespace modsys

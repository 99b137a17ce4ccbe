#pragma once

#include <stdexcept>
#include <string>

namespace least {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Bad configuration file or field value.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An election found no candidate at all; the caller decides how to recover.
class ProtocolStall : public Error {
public:
    using Error::Error;
};

/// A routing tree mutation would break one of the tree invariants.
class TreeError : public Error {
public:
    using Error::Error;
};

/// Energy was charged to a node that is already dead.
class DeadNodeError : public Error {
public:
    using Error::Error;
};

} // namespace least

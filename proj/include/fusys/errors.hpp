#pragma once

#include <stdexcept>
#include <string>

namespace fusys {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent user input (files, CLI arguments, scenario data).
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// A configured size cap was exceeded. Callers that run batches catch this
// and record a structured "cap exceeded" outcome instead of aborting.
class CapError : public Error {
public:
    explicit CapError(const std::string& what) : Error(what) {}
};

} // namespace fusys

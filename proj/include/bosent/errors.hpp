#pragma once

#include <stdexcept>
#include <string>

namespace bosent {

// Invalid physical state or configuration (CLI exit code 2).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: singular or ill-conditioned matrix, non-normalizable
// spectrum, diverging time integration (CLI exit code 3).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bosent

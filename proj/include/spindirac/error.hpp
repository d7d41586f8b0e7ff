#pragma once

#include <stdexcept>
#include <string>

namespace spindirac {

// Precondition violations. The CLI maps these to exit code 2.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Solver or quadrature failures on valid input. The CLI maps these to exit code 1.
class numerical_failure : public std::runtime_error {
public:
    explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& message)
{
    if (!ok) throw invalid_input(message);
}

} // namespace spindirac

#pragma once

#include <stdexcept>
#include <string>

namespace bsauth {

/// Out-of-domain numeric argument (negative variance, probability outside (0,1), ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent scenario setup, e.g. a tag passed where a reader is expected.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mismatched sequence lengths.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace bsauth

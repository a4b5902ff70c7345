#ifndef GEARSENSE_ERRORS_HPP
#define GEARSENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gearsense {

// Exit-code categories used by the CLI: config = 2, data = 3, numeric = 4.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Beam would be clipped by the grid edge.
class BoundaryError : public ConfigError {
public:
    explicit BoundaryError(const std::string& msg) : ConfigError(msg) {}
};

// Spectral propagation sampling criterion violated. Carries the minimum
// number of samples per axis that would satisfy it at the current spacing.
class AliasingError : public ConfigError {
public:
    AliasingError(const std::string& msg, int suggested_min_n)
        : ConfigError(msg), suggested_min_n(suggested_min_n) {}
    int suggested_min_n;
};

// Two field grids do not share (n, extent, wavelength).
class GeometryError : public ConfigError {
public:
    explicit GeometryError(const std::string& msg) : ConfigError(msg) {}
};

class DegenerateInputError : public DataError {
public:
    explicit DegenerateInputError(const std::string& msg) : DataError(msg) {}
};

// Closed form requested outside its domain; the Fock-space oracle covers
// the general case.
class UnsupportedClosedFormError : public ConfigError {
public:
    explicit UnsupportedClosedFormError(const std::string& msg) : ConfigError(msg) {}
};

class AlignmentError : public NumericError {
public:
    explicit AlignmentError(const std::string& msg) : NumericError(msg) {}
};

class FitError : public NumericError {
public:
    explicit FitError(const std::string& msg) : NumericError(msg) {}
};

class IllConditionedError : public NumericError {
public:
    explicit IllConditionedError(const std::string& msg) : NumericError(msg) {}
};

} // namespace gearsense

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace dtvtomo {

/// Image/sinogram/geometry dimensions do not match.
class DimensionError : public std::runtime_error {
public:
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parameter outside its admissible range (widths, split indices, weights, ...).
class ParamError : public std::runtime_error {
public:
    explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation received an empty data set (e.g. FBP with no angles).
class EmptyDataError : public std::runtime_error {
public:
    explicit EmptyDataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// File does not follow the expected on-disk format.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterative solve produced a non-finite objective.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, int iteration)
        : std::runtime_error(msg), iteration(iteration) {}
    int iteration;
};

} // namespace dtvtomo

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlrep {

/// Base class for all library errors that are not plain argument errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A vector handed to Gram-Schmidt was (numerically) dependent on its predecessors.
class DegenerateInputError : public Error {
public:
    DegenerateInputError(std::size_t index, double residual)
        : Error("degenerate input: vector " + std::to_string(index + 1) +
                " is linearly dependent on the preceding ones (residual norm " +
                std::to_string(residual) + ")"),
          index_(index), residual_(residual) {}

    /// 0-based position of the offending vector in the input list.
    std::size_t index() const noexcept { return index_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t index_;
    double residual_;
};

class InvalidCoeffSetError : public Error {
public:
    using Error::Error;
};

/// P12 P23 (equivalently W) vanishes, so no Q can be extracted.
class OrthogonalLegsError : public Error {
public:
    using Error::Error;
};

class RankOneImpossibleError : public Error {
public:
    using Error::Error;
};

class UndefinedProjectorError : public Error {
public:
    using Error::Error;
};

class SizeLimitError : public Error {
public:
    using Error::Error;
};

class BranchError : public Error {
public:
    using Error::Error;
};

class NotInCatalogError : public Error {
public:
    using Error::Error;
};

class InvalidBasisError : public Error {
public:
    using Error::Error;
};

}  // namespace tlrep

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sptp {

// Precondition violations on user-supplied arguments.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Zero or near-zero pivot met during elimination.
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(std::size_t row, double pivot);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// Solver failure inside a larger run; the message names the failing cell.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coarse and fine meshes of a double-mesh comparison do not nest.
class NonNestedMesh : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact-solution error requested for a problem without an exact solution.
class MissingExactSolution : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace sptp

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lfem {

/// Point lies outside every triangle of the mesh.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed mesh or configuration input. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Triangle or edge with (near) zero measure.
class SingularElementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No Dirichlet boundary: the reduced system would be singular.
class IllPosedProblemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix failed a positive-definiteness check (diagonal, pivot, or CG curvature).
class NotSpdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lfem

#pragma once

#include <array>
#include <vector>

namespace lfem::quadrature {

/// Symmetric rule on a triangle. Points in barycentric coordinates; weights sum to 1,
/// so a mapped integral is area * sum_q w_q f(x_q).
struct TriangleRule {
    int degree = 0;
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
};

/// Rule on the reference segment [0,1]; weights sum to 1.
struct LineRule {
    int degree = 0;
    std::vector<double> points;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return weights.size(); }
};

/// One point, exact for degree 1.
const TriangleRule& centroid_rule();

/// Six points, exact for degree 4.
const TriangleRule& degree4_rule();

/// Twelve points, exact for degree 6.
const TriangleRule& degree6_rule();

/// Two-point Gauss-Legendre, exact for cubics.
const LineRule& gauss2_line_rule();

}  // namespace lfem::quadrature

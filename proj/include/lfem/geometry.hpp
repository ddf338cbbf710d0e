#pragma once

#include <array>
#include <cmath>

namespace lfem {

struct Point {
    double x1 = 0.0;
    double x2 = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Vec2 {
    double c1 = 0.0;
    double c2 = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Row-major 2x2 tensor, entry (i,j) = d u_i / d x_j for displacement gradients.
using Tensor2 = std::array<std::array<double, 2>, 2>;

using TriangleGeometry = std::array<Point, 3>;

inline double distance(const Point& a, const Point& b) {
    return std::hypot(b.x1 - a.x1, b.x2 - a.x2);
}

inline Point midpoint(const Point& a, const Point& b) {
    return {0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2)};
}

/// Positive for counterclockwise vertex order.
inline double signed_area(const TriangleGeometry& t) {
    return 0.5 * ((t[1].x1 - t[0].x1) * (t[2].x2 - t[0].x2) -
                  (t[2].x1 - t[0].x1) * (t[1].x2 - t[0].x2));
}

inline Point from_barycentric(const TriangleGeometry& t, const std::array<double, 3>& b) {
    return {b[0] * t[0].x1 + b[1] * t[1].x1 + b[2] * t[2].x1,
            b[0] * t[0].x2 + b[1] * t[1].x2 + b[2] * t[2].x2};
}

}  // namespace lfem

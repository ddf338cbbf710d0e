#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "lfem/geometry.hpp"

namespace lfem {

/// Boundary segment labels used throughout the mesh files.
namespace tags {
inline constexpr int dirichlet = 1;
inline constexpr int traction = 2;
inline constexpr int traction_free = 3;
}  // namespace tags

struct Triangle {
    std::array<std::int32_t, 3> vertex_ids{};

    friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct BoundaryEdge {
    std::array<std::int32_t, 2> endpoint_ids{};
    int tag = tags::dirichlet;

    friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct PointLocation {
    std::size_t triangle = 0;
    std::array<double, 3> barycentric{};
};

/// Conforming triangulation of a convex polygon with tagged boundary edges.
///
/// Immutable once constructed. The constructor checks every structural invariant
/// (index ranges, counterclockwise orientation, edge conformity, and that the tagged
/// boundary edges are exactly the edges owned by a single triangle) and throws
/// std::invalid_argument on violation. h and d_omega are derived, never supplied.
class Mesh {
public:
    Mesh() = default;
    Mesh(std::vector<Point> nodes, std::vector<Triangle> triangles,
         std::vector<BoundaryEdge> boundary_edges);

    [[nodiscard]] std::span<const Point> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const Triangle> triangles() const noexcept { return triangles_; }
    [[nodiscard]] std::span<const BoundaryEdge> boundary_edges() const noexcept {
        return boundary_edges_;
    }

    [[nodiscard]] std::size_t num_nodes() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }

    /// Longest edge over all triangles.
    [[nodiscard]] double h() const noexcept { return h_; }
    /// Diameter of the (convex) domain: max distance between hull vertices.
    [[nodiscard]] double d_omega() const noexcept { return d_omega_; }

    [[nodiscard]] TriangleGeometry geometry(std::size_t t) const;
    [[nodiscard]] double total_area() const;

    friend bool operator==(const Mesh&, const Mesh&) = default;

private:
    std::vector<Point> nodes_;
    std::vector<Triangle> triangles_;
    std::vector<BoundaryEdge> boundary_edges_;
    double h_ = 0.0;
    double d_omega_ = 0.0;
};

/// Structured mesh of (0,side)^2 with 2n^2 right triangles, all sides Dirichlet.
Mesh generate_square_mesh(double side, int n);

/// The Cook trapezoid (0,0)-(48,44)-(48,60)-(0,44), bilinear image of an n x n grid.
/// Left edge Dirichlet, right edge traction-loaded, top and bottom traction-free.
Mesh generate_cook_mesh(int n);

/// Red refinement: each triangle split into four through its edge midpoints.
Mesh uniform_refine(const Mesh& mesh);

/// First triangle (lowest index) containing p within 1e-10 * d_omega.
/// Throws NotFoundError when p is outside the domain.
PointLocation locate_point(const Mesh& mesh, const Point& p);

/// Sum of 1 for interior edges seen twice and boundary edges seen once; returns false
/// on any edge shared by more than two triangles or unmatched boundary tagging.
bool is_conforming(const Mesh& mesh);

void write_mesh(const Mesh& mesh, std::ostream& out);
void write_mesh(const Mesh& mesh, const std::filesystem::path& path);
Mesh read_mesh(std::istream& in);
Mesh read_mesh(const std::filesystem::path& path);

}  // namespace lfem

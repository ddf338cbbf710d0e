#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lfem/kernels.hpp"
#include "lfem/mesh.hpp"
#include "lfem/problem.hpp"
#include "lfem/quadrature.hpp"
#include "lfem/sparse.hpp"

namespace lfem {

/// Two dofs per node: 2*node + component. Constrained dofs are the nodes touching a
/// Dirichlet-tagged boundary edge; free dofs keep their global order.
class DofMap {
public:
    DofMap() = default;
    DofMap(const Mesh& mesh, const BoundaryConditions& bcs);

    [[nodiscard]] std::size_t num_dofs() const noexcept { return free_index_.size(); }
    [[nodiscard]] std::size_t num_free() const noexcept { return free_dofs_.size(); }
    [[nodiscard]] std::size_t num_constrained() const noexcept {
        return num_dofs() - num_free();
    }
    [[nodiscard]] bool is_constrained(std::size_t dof) const { return free_index_[dof] < 0; }
    /// Index into the reduced system, or -1 for a constrained dof.
    [[nodiscard]] std::int64_t free_index(std::size_t dof) const { return free_index_[dof]; }
    [[nodiscard]] std::span<const std::size_t> free_dofs() const noexcept { return free_dofs_; }

    /// Scatter a reduced vector into a full one; constrained entries taken from `fixed`
    /// (zeros when empty).
    [[nodiscard]] std::vector<double> expand(std::span<const double> reduced,
                                             std::span<const double> fixed = {}) const;

private:
    std::vector<std::int64_t> free_index_;
    std::vector<std::size_t> free_dofs_;
};

/// Stiffness and load over all 2*n_nodes dofs, before constraint elimination.
struct FullSystem {
    SparseSymMatrix matrix;
    std::vector<double> rhs;
    AlphaReport alpha_report;
};

struct AssembledSystem {
    SparseSymMatrix matrix;
    std::vector<double> rhs;
    AlphaReport alpha_report;
    DofMap dof_map;
};

struct AssemblyOptions {
    Exec exec = Exec::serial;
};

/// Integral of 2 mu eps(phi_i):eps(phi_j) + lambda_eff div(phi_i) div(phi_j) over a P1
/// triangle. Local dof order (node0 u1, node0 u2, node1 u1, ...). The result is exactly
/// symmetric. Throws SingularElementError when area <= 1e-14 * diameter^2.
ElementMatrix element_stiffness(const TriangleGeometry& tri, double mu, double lambda_eff);

/// Integral of f . phi_i over the triangle with `rule`.
ElementVector element_load(const TriangleGeometry& tri, const VectorField& f,
                           const quadrature::TriangleRule& rule);

/// Integral of g . phi_i over the segment a-b: (a u1, a u2, b u1, b u2).
std::array<double, 4> edge_traction_load(const Point& a, const Point& b, const VectorField& g,
                                         const quadrature::LineRule& rule = quadrature::gauss2_line_rule());

/// Lame coefficients actually used per element: (mu, lambda^alpha * lambda_hat) averaged
/// with the degree-4 rule for variable fields, exact values for constant ones.
struct ElementCoefficients {
    std::vector<double> mu;
    std::vector<double> lambda_eff;
};
ElementCoefficients element_coefficients(const Mesh& mesh, const LameField& lame,
                                         double lambda_pow_alpha);

/// Assembles B^alpha and the load functional over every dof. Throws IllPosedProblemError
/// when no boundary edge is Dirichlet and std::invalid_argument for an unassigned tag.
FullSystem assemble_full(const ElasticityProblem& problem, const AssemblyOptions& options = {});

/// Drops constrained rows and columns (homogeneous Dirichlet data).
AssembledSystem reduce(const FullSystem& full, const DofMap& dofs);

/// Elimination with prescribed constrained values: rhs_free -= K_fc * values_c.
AssembledSystem reduce_with_dirichlet_values(const FullSystem& full, const DofMap& dofs,
                                             std::span<const double> full_values);

AssembledSystem assemble(const ElasticityProblem& problem, const AssemblyOptions& options = {});

}  // namespace lfem

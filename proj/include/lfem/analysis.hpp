#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lfem/mesh.hpp"
#include "lfem/problem.hpp"
#include "lfem/quadrature.hpp"

namespace lfem {

/// Continuous P1 vector field: values[2*node + component].
struct DisplacementField {
    std::shared_ptr<const Mesh> mesh;
    std::vector<double> values;

    DisplacementField() = default;
    DisplacementField(std::shared_ptr<const Mesh> m, std::vector<double> v);

    [[nodiscard]] Vec2 at_node(std::size_t node) const {
        return {values[2 * node], values[2 * node + 1]};
    }
    /// Constant gradient of the field on triangle t.
    [[nodiscard]] Tensor2 gradient(std::size_t t) const;
    [[nodiscard]] Vec2 evaluate(std::size_t t, const std::array<double, 3>& bary) const;
};

DisplacementField interpolate(std::shared_ptr<const Mesh> mesh, const VectorField& u);

/// ||u_h - u||_{L2}; degree-6 rule by default.
double l2_error(const DisplacementField& uh, const VectorField& u_exact,
                const quadrature::TriangleRule& rule = quadrature::degree6_rule());

/// ||grad u_h - grad u||_{L2} (Frobenius).
double h1_seminorm_error(const DisplacementField& uh, const GradientField& grad_exact,
                         const quadrature::TriangleRule& rule = quadrature::degree6_rule());

/// sqrt( int 2 mu |eps(e)|^2 + lambda_eff (div e)^2 ), e = u_h - u, from gradients.
double energy_norm_error(const DisplacementField& uh, const GradientField& grad_exact, double mu,
                         double lambda_eff,
                         const quadrature::TriangleRule& rule = quadrature::degree6_rule());

/// ln(e_coarse/e_fine) / ln(h_coarse/h_fine).
double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine);

/// Barycentric interpolation at p. Throws NotFoundError outside the mesh.
Vec2 point_displacement(const DisplacementField& uh, const Point& p);

/// int density . u_h dx.
double functional_value(const DisplacementField& uh, const VectorField& density,
                        const quadrature::TriangleRule& rule = quadrature::degree6_rule());

struct ErrorRow {
    std::size_t n_free = 0;
    double h = 0.0;
    double error = 0.0;
    std::optional<double> rate;  // absent on the first row
    double alpha = 1.0;
    bool converged = true;
};

struct ConvergenceTable {
    std::vector<ErrorRow> rows;

    /// Appends a row, filling the rate from the previous one.
    void add(std::size_t n_free, double h, double error, double alpha, bool converged = true);
};

/// `Nh,h,error,rate,alpha` with %.3e errors, 3-decimal h/rate/alpha. A row whose solve did
/// not converge has `nonconverged` in the error column and an empty rate.
void write_csv(const ConvergenceTable& table, std::ostream& out);
void write_csv(const ConvergenceTable& table, const std::filesystem::path& path);

}  // namespace lfem

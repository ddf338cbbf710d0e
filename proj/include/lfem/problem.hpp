#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <variant>

#include "lfem/geometry.hpp"
#include "lfem/mesh.hpp"

namespace lfem {

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<Vec2(const Point&)>;
using GradientField = std::function<Tensor2(const Point&)>;

/// Lame parameters mu(x) and lambda(x) = Lambda * lambda_hat(x).
/// The constant kind has lambda_hat == 1 and mu fixed.
class LameField {
public:
    static LameField constant(double lambda, double mu);
    static LameField variable(double Lambda, ScalarField mu, ScalarField lambda_hat);

    [[nodiscard]] bool is_constant() const noexcept { return constant_; }
    [[nodiscard]] double Lambda() const noexcept { return Lambda_; }
    [[nodiscard]] double mu(const Point& x) const { return constant_ ? mu_const_ : mu_(x); }
    [[nodiscard]] double lambda_hat(const Point& x) const {
        return constant_ ? 1.0 : lambda_hat_(x);
    }
    [[nodiscard]] double lambda(const Point& x) const { return Lambda_ * lambda_hat(x); }

private:
    bool constant_ = true;
    double Lambda_ = 0.0;
    double mu_const_ = 0.0;
    ScalarField mu_;
    ScalarField lambda_hat_;
};

struct Dirichlet {};
struct Traction {
    VectorField g;
};
struct TractionFree {};

using BoundaryKind = std::variant<Dirichlet, Traction, TractionFree>;

/// Per-tag boundary assignment. Every tag of the mesh must be assigned.
struct BoundaryConditions {
    std::map<int, BoundaryKind> by_tag;

    [[nodiscard]] bool is_dirichlet(int tag) const;
};

enum class AlphaBranch { capped, uncapped, prescribed };

struct AlphaReport {
    double alpha = 1.0;
    double lambda_pow_alpha = 0.0;
    AlphaBranch branch = AlphaBranch::uncapped;
};

/// Which exponent replaces lambda by lambda^alpha in the stiffness.
struct AlphaPolicy {
    enum class Kind { standard, locking_free, fixed, exact_balance };

    Kind kind = Kind::locking_free;
    double value = 1.0;  // only for fixed

    static AlphaPolicy standard() { return {Kind::standard, 1.0}; }
    static AlphaPolicy locking_free() { return {Kind::locking_free, 1.0}; }
    static AlphaPolicy fixed(double alpha);
    static AlphaPolicy exact_balance() { return {Kind::exact_balance, 1.0}; }

    /// "one", "star", "balance", or the fixed value.
    [[nodiscard]] std::string name() const;
    static AlphaPolicy parse(const std::string& text);
};

struct ElasticityProblem {
    std::shared_ptr<const Mesh> mesh;
    LameField lame = LameField::constant(1.0, 1.0);
    VectorField body_force;  // empty means f = 0
    BoundaryConditions bcs;
    AlphaPolicy alpha_policy;
};

/// alpha* = min(1, ln(d_omega/h) / ln(lambda)); alpha = 1 whenever lambda <= d_omega/h or
/// lambda <= 1. Throws std::invalid_argument for non-positive inputs and std::domain_error
/// when lambda > max(1, d_omega/h) but d_omega/h <= 1 (no admissible exponent).
AlphaReport compute_alpha(double h, double lambda, double d_omega);

/// Root of lambda^-alpha = 1/lambda + h/d_omega, the balance the alpha* rule approximates.
AlphaReport compute_alpha_exact_balance(double h, double lambda, double d_omega);

/// Resolves a policy against mesh size and the large Lame factor.
AlphaReport resolve_alpha(const AlphaPolicy& policy, double h, double Lambda, double d_omega);

struct LamePair {
    double lambda = 0.0;
    double mu = 0.0;
};

LamePair lame_from_young_poisson(double E, double nu);

/// Manufactured solution on (0,pi)^2; vanishes on the boundary.
Vec2 example1_exact_solution(const Point& x, double lambda);
Tensor2 example1_exact_gradient(const Point& x, double lambda);
/// -div sigma(u) for the manufactured solution with constant mu, lambda.
Vec2 example1_body_force(const Point& x, double lambda, double mu);

/// Body force and boundary data for the manufactured square problem.
ElasticityProblem make_example1_problem(std::shared_ptr<const Mesh> mesh, double lambda, double mu,
                                        AlphaPolicy policy);

/// Cook membrane: clamped left edge, uniform vertical shear g on the right edge.
ElasticityProblem make_cook_problem(std::shared_ptr<const Mesh> mesh, double lambda, double mu,
                                    double g, AlphaPolicy policy);

}  // namespace lfem

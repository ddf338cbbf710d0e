#include "lfem/problem.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace lfem {

LameField LameField::constant(double lambda, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be non-negative");
    LameField f;
    f.constant_ = true;
    f.Lambda_ = lambda;
    f.mu_const_ = mu;
    return f;
}

LameField LameField::variable(double Lambda, ScalarField mu, ScalarField lambda_hat) {
    if (!(Lambda > 0.0)) throw std::invalid_argument("Lambda must be positive");
    if (!mu || !lambda_hat) throw std::invalid_argument("variable Lame field needs both functions");
    LameField f;
    f.constant_ = false;
    f.Lambda_ = Lambda;
    f.mu_ = std::move(mu);
    f.lambda_hat_ = std::move(lambda_hat);
    return f;
}

bool BoundaryConditions::is_dirichlet(int tag) const {
    const auto it = by_tag.find(tag);
    return it != by_tag.end() && std::holds_alternative<Dirichlet>(it->second);
}

AlphaPolicy AlphaPolicy::fixed(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("fixed alpha must lie in (0,1]");
    return {Kind::fixed, alpha};
}

std::string AlphaPolicy::name() const {
    switch (kind) {
        case Kind::standard: return "one";
        case Kind::locking_free: return "star";
        case Kind::exact_balance: return "balance";
        case Kind::fixed: {
            char buf[32];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
            return std::string(buf, end);
        }
    }
    return "?";
}

AlphaPolicy AlphaPolicy::parse(const std::string& text) {
    if (text == "one") return standard();
    if (text == "star") return locking_free();
    if (text == "balance") return exact_balance();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw std::invalid_argument("alpha must be 'star', 'one', 'balance' or a number, got '" +
                                    text + "'");
    return fixed(v);
}

namespace {

void check_alpha_inputs(double h, double lambda, double d_omega) {
    if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(d_omega > 0.0)) throw std::invalid_argument("d_omega must be positive");
}

}  // namespace

AlphaReport compute_alpha(double h, double lambda, double d_omega) {
    check_alpha_inputs(h, lambda, d_omega);
    const double ratio = d_omega / h;
    if (lambda <= 1.0 || lambda <= ratio) return {1.0, lambda, AlphaBranch::uncapped};
    if (ratio <= 1.0)
        throw std::domain_error("d_omega/h <= 1 leaves no admissible alpha in (0,1]");
    const double alpha = std::log(ratio) / std::log(lambda);
    return {alpha, std::pow(lambda, alpha), AlphaBranch::capped};
}

AlphaReport compute_alpha_exact_balance(double h, double lambda, double d_omega) {
    check_alpha_inputs(h, lambda, d_omega);
    const double ratio = d_omega / h;
    if (lambda <= 1.0 || lambda <= ratio) return {1.0, lambda, AlphaBranch::uncapped};
    const double alpha = -std::log(h / d_omega + 1.0 / lambda) / std::log(lambda);
    if (!(alpha > 0.0))
        throw std::domain_error("balance root is non-positive for these h, lambda, d_omega");
    return {alpha, std::pow(lambda, alpha), AlphaBranch::capped};
}

AlphaReport resolve_alpha(const AlphaPolicy& policy, double h, double Lambda, double d_omega) {
    switch (policy.kind) {
        case AlphaPolicy::Kind::standard: return {1.0, Lambda, AlphaBranch::uncapped};
        case AlphaPolicy::Kind::locking_free: return compute_alpha(h, Lambda, d_omega);
        case AlphaPolicy::Kind::exact_balance: return compute_alpha_exact_balance(h, Lambda, d_omega);
        case AlphaPolicy::Kind::fixed:
            if (policy.value == 1.0) return {1.0, Lambda, AlphaBranch::uncapped};
            return {policy.value, std::pow(Lambda, policy.value), AlphaBranch::prescribed};
    }
    throw std::logic_error("unhandled alpha policy");
}

LamePair lame_from_young_poisson(double E, double nu) {
    if (!(E > 0.0)) throw std::invalid_argument("Young's modulus must be positive");
    if (!(nu >= 0.0 && nu < 0.5)) throw std::invalid_argument("Poisson ratio must lie in [0, 1/2)");
    return {E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu))};
}

Vec2 example1_exact_solution(const Point& x, double lambda) {
    const double s = std::sin(x.x1) * std::sin(x.x2) / lambda;
    return {(std::cos(2.0 * x.x1) - 1.0) * std::sin(2.0 * x.x2) + s,
            (1.0 - std::cos(2.0 * x.x2)) * std::sin(2.0 * x.x1) + s};
}

Tensor2 example1_exact_gradient(const Point& x, double lambda) {
    const double s1 = std::sin(x.x1), c1 = std::cos(x.x1);
    const double s2 = std::sin(x.x2), c2 = std::cos(x.x2);
    const double s21 = std::sin(2.0 * x.x1), c21 = std::cos(2.0 * x.x1);
    const double s22 = std::sin(2.0 * x.x2), c22 = std::cos(2.0 * x.x2);
    const double ds_dx1 = c1 * s2 / lambda;
    const double ds_dx2 = s1 * c2 / lambda;
    return {{{-2.0 * s21 * s22 + ds_dx1, 2.0 * (c21 - 1.0) * c22 + ds_dx2},
             {2.0 * (1.0 - c22) * c21 + ds_dx1, 2.0 * s22 * s21 + ds_dx2}}};
}

Vec2 example1_body_force(const Point& x, double lambda, double mu) {
    // -mu Laplace(u) - (mu + lambda) grad(div u); the trigonometric part is divergence-free
    // and antisymmetric under x1 <-> x2 (u2 main part = -u1 main part with swapped arguments).
    const double s = std::sin(x.x1) * std::sin(x.x2);
    const double grad_div = std::cos(x.x1 + x.x2) / lambda;
    const double common = 2.0 * mu * s / lambda - (mu + lambda) * grad_div;
    return {mu * (8.0 * std::cos(2.0 * x.x1) - 4.0) * std::sin(2.0 * x.x2) + common,
            mu * (4.0 - 8.0 * std::cos(2.0 * x.x2)) * std::sin(2.0 * x.x1) + common};
}

ElasticityProblem make_example1_problem(std::shared_ptr<const Mesh> mesh, double lambda, double mu,
                                        AlphaPolicy policy) {
    ElasticityProblem p;
    p.mesh = std::move(mesh);
    p.lame = LameField::constant(lambda, mu);
    p.body_force = [lambda, mu](const Point& x) { return example1_body_force(x, lambda, mu); };
    p.bcs.by_tag[tags::dirichlet] = Dirichlet{};
    p.alpha_policy = policy;
    return p;
}

ElasticityProblem make_cook_problem(std::shared_ptr<const Mesh> mesh, double lambda, double mu,
                                    double g, AlphaPolicy policy) {
    ElasticityProblem p;
    p.mesh = std::move(mesh);
    p.lame = LameField::constant(lambda, mu);
    p.bcs.by_tag[tags::dirichlet] = Dirichlet{};
    p.bcs.by_tag[tags::traction] = Traction{[g](const Point&) { return Vec2{0.0, g}; }};
    p.bcs.by_tag[tags::traction_free] = TractionFree{};
    p.alpha_policy = policy;
    return p;
}

}  // namespace lfem

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lfem/assembly.hpp"
#include "lfem/errors.hpp"
#include "lfem/solver.hpp"
#include "oracles.hpp"

using namespace lfem;

namespace {

const double pi = std::numbers::pi;

TriangleGeometry random_triangle(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (;;) {
        TriangleGeometry t{Point{d(gen), d(gen)}, Point{d(gen), d(gen)}, Point{d(gen), d(gen)}};
        const double a = signed_area(t);
        if (std::abs(a) < 0.1) continue;
        if (a < 0) std::swap(t[1], t[2]);
        return t;
    }
}

// Stiffness written out from basis gradients and the tensor form of the integrand.
std::array<double, 36> reference_stiffness(const TriangleGeometry& t, double mu, double lambda) {
    const double area = signed_area(t);
    double g[3][2];
    for (int k = 0; k < 3; ++k) {
        const auto& b = t[(k + 1) % 3];
        const auto& c = t[(k + 2) % 3];
        g[k][0] = (b.x2 - c.x2) / (2 * area);
        g[k][1] = (c.x1 - b.x1) / (2 * area);
    }
    std::array<double, 36> k{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            // grad phi_i: component ci of node ni, row ci holds g[ni].
            double gi[2][2] = {}, gj[2][2] = {};
            for (int d = 0; d < 2; ++d) {
                gi[i % 2][d] = g[i / 2][d];
                gj[j % 2][d] = g[j / 2][d];
            }
            double ee = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    ee += 0.25 * (gi[a][b] + gi[b][a]) * (gj[a][b] + gj[b][a]);
            const double div = (gi[0][0] + gi[1][1]) * (gj[0][0] + gj[1][1]);
            k[6 * i + j] = area * (2 * mu * ee + lambda * div);
        }
    return k;
}

std::vector<std::array<double, 6>> rigid_modes(const TriangleGeometry& t) {
    std::vector<std::array<double, 6>> m(3);
    for (int n = 0; n < 3; ++n) {
        m[0][2 * n] = 1, m[0][2 * n + 1] = 0;
        m[1][2 * n] = 0, m[1][2 * n + 1] = 1;
        m[2][2 * n] = -t[n].x2, m[2][2 * n + 1] = t[n].x1;
    }
    return m;
}

ElasticityProblem cook_problem(int n, AlphaPolicy policy) {
    const auto lp = lame_from_young_poisson(1.12499998125, 0.499999975);
    return make_cook_problem(std::make_shared<const Mesh>(generate_cook_mesh(n)), lp.lambda, lp.mu, 1.0 / 16,
                             policy);
}

}  // namespace

TEST(ElementStiffness, UnitRightTriangleDiagonal) {
    const TriangleGeometry t{Point{0, 0}, Point{1, 0}, Point{0, 1}};
    const auto k = element_stiffness(t, 1.0, 0.0);
    EXPECT_NEAR(k[0], 1.5, 1e-15);
    EXPECT_NEAR(reference_stiffness(t, 1.0, 0.0)[0], 1.5, 1e-15);
}

TEST(ElementStiffness, MatchesReferenceOnRandomTriangles) {
    auto gen = oracle::rng();
    for (int i = 0; i < 50; ++i) {
        const auto t = random_triangle(gen);
        const auto k = element_stiffness(t, 0.7, 123.0);
        const auto r = reference_stiffness(t, 0.7, 123.0);
        double scale = 0.0;
        for (double v : r) scale = std::max(scale, std::abs(v));
        for (int j = 0; j < 36; ++j) EXPECT_NEAR(k[j], r[j], 1e-13 * scale);
    }
}

TEST(ElementStiffness, SymmetricAndAnnihilatesRigidModes) {
    auto gen = oracle::rng(2);
    for (int i = 0; i < 50; ++i) {
        const auto t = random_triangle(gen);
        const auto k = element_stiffness(t, 1.3, 1e5);
        double scale = 0.0;
        for (double v : k) scale = std::max(scale, std::abs(v));
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) EXPECT_EQ(k[6 * a + b], k[6 * b + a]);
        for (const auto& m : rigid_modes(t))
            for (int a = 0; a < 6; ++a) {
                double s = 0.0;
                for (int b = 0; b < 6; ++b) s += k[6 * a + b] * m[b];
                EXPECT_NEAR(s, 0.0, 1e-12 * scale * 4);
            }
    }
}

TEST(ElementStiffness, ScalesLinearly) {
    auto gen = oracle::rng(9);
    const auto t = random_triangle(gen);
    const auto k = element_stiffness(t, 0.9, 40.0);
    const auto k4 = element_stiffness(t, 4 * 0.9, 4 * 40.0);
    const auto k3 = element_stiffness(t, 3 * 0.9, 3 * 40.0);
    for (int j = 0; j < 36; ++j) {
        EXPECT_EQ(k4[j], 4 * k[j]);
        EXPECT_NEAR(k3[j], 3 * k[j], 1e-15 * std::abs(3 * k[j]) + 1e-300);
    }
}

TEST(ElementStiffness, DegenerateThrows) {
    const TriangleGeometry t{Point{0, 0}, Point{1, 0}, Point{2, 1e-16}};
    EXPECT_THROW(element_stiffness(t, 1.0, 1.0), SingularElementError);
}

TEST(ElementLoad, ZeroAndConstant) {
    const TriangleGeometry t{Point{0.2, 0.1}, Point{1.4, 0.3}, Point{0.5, 1.2}};
    const double area = signed_area(t);
    const auto z = element_load(t, [](const Point&) { return Vec2{0, 0}; }, quadrature::degree4_rule());
    for (double v : z) EXPECT_EQ(v, 0.0);
    const auto c = element_load(t, [](const Point&) { return Vec2{2.5, 0}; }, quadrature::degree4_rule());
    for (int n = 0; n < 3; ++n) {
        EXPECT_NEAR(c[2 * n], 2.5 * area / 3, 1e-15);
        EXPECT_EQ(c[2 * n + 1], 0.0);
    }
}

TEST(ElementLoad, ManufacturedForceAgainstHighOrderOracle) {
    const auto oracle_rule = oracle::collapsed_gauss_rule();
    auto gen = oracle::rng(4);
    std::uniform_real_distribution<double> d(0.3, pi - 0.3);
    for (int i = 0; i < 10; ++i) {
        const Point a{d(gen), d(gen)};
        const TriangleGeometry t{a, Point{a.x1 + 0.07, a.x2 + 0.01}, Point{a.x1 + 0.02, a.x2 + 0.06}};
        auto f = [](const Point& x) { return example1_body_force(x, 1e3, 1.0); };
        const auto load = element_load(t, f, quadrature::degree6_rule());
        const auto load4 = element_load(t, f, quadrature::degree4_rule());
        const double area = signed_area(t);
        std::array<double, 6> ref{};
        for (std::size_t q = 0; q < oracle_rule.size(); ++q) {
            const auto& b = oracle_rule.points[q];
            const auto fx = f(from_barycentric(t, b));
            for (int n = 0; n < 3; ++n) {
                ref[2 * n] += area * oracle_rule.weights[q] * fx.c1 * b[n];
                ref[2 * n + 1] += area * oracle_rule.weights[q] * fx.c2 * b[n];
            }
        }
        double scale = 0.0;
        for (double v : ref) scale = std::max(scale, std::abs(v));
        for (int j = 0; j < 6; ++j) {
            EXPECT_NEAR(load[j], ref[j], 1e-8 * scale);
            EXPECT_NEAR(load4[j], ref[j], 1e-7 * scale);
        }
    }
}

TEST(EdgeTraction, ConstantDensity) {
    const Point a{48, 44}, b{48, 47.5};
    const auto f = edge_traction_load(a, b, [](const Point&) { return Vec2{0, 1.0 / 16}; });
    EXPECT_EQ(f[0], 0.0);
    EXPECT_EQ(f[2], 0.0);
    EXPECT_NEAR(f[1], 3.5 / 32, 1e-15);
    EXPECT_NEAR(f[3], 3.5 / 32, 1e-15);
    const auto z = edge_traction_load(a, b, [](const Point&) { return Vec2{0, 0}; });
    for (double v : z) EXPECT_EQ(v, 0.0);
    EXPECT_THROW(edge_traction_load(a, a, [](const Point&) { return Vec2{0, 1}; }), SingularElementError);
}

TEST(EdgeTraction, ExactForQuadraticDensity) {
    // g1 = s^2 on the unit segment from (0,0) to (1,0): int s^2 (1-s) = 1/12, int s^3 = 1/4.
    const auto f = edge_traction_load({0, 0}, {1, 0}, [](const Point& x) { return Vec2{x.x1 * x.x1, 0}; });
    EXPECT_NEAR(f[0], 1.0 / 12, 1e-15);
    EXPECT_NEAR(f[2], 1.0 / 4, 1e-15);
}

TEST(Assembly, CookTotalLoadIsOne) {
    for (int n : {1, 2, 5}) {
        const auto full = assemble_full(cook_problem(n, AlphaPolicy::standard()));
        double fx = 0.0, fy = 0.0;
        for (std::size_t i = 0; i < full.rhs.size(); i += 2) {
            fx += full.rhs[i];
            fy += full.rhs[i + 1];
        }
        EXPECT_EQ(fx, 0.0);
        EXPECT_NEAR(fy, 1.0, 1e-14);
    }
}

TEST(Assembly, FullMatrixAnnihilatesRigidModes) {
    for (const auto& p : {cook_problem(3, AlphaPolicy::standard()), cook_problem(3, AlphaPolicy::locking_free()),
                          make_example1_problem(std::make_shared<const Mesh>(generate_square_mesh(pi, 5)), 1e5,
                                                1.0, AlphaPolicy::standard())}) {
        const auto full = assemble_full(p);
        const auto& nodes = p.mesh->nodes();
        const double norm = full.matrix.max_abs();
        for (int m = 0; m < 3; ++m) {
            std::vector<double> r(2 * nodes.size()), y(r.size());
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                r[2 * i] = m == 0 ? 1.0 : m == 1 ? 0.0 : -nodes[i].x2;
                r[2 * i + 1] = m == 0 ? 0.0 : m == 1 ? 1.0 : nodes[i].x1;
            }
            multiply(full.matrix, r, y);
            double scale = 1.0;
            if (m == 2) scale = p.mesh->d_omega();
            for (double v : y) EXPECT_LE(std::abs(v), 1e-10 * norm * scale);
        }
    }
}

TEST(Assembly, ExactSymmetry) {
    const auto full = assemble_full(cook_problem(4, AlphaPolicy::locking_free()));
    EXPECT_EQ(full.matrix.max_asymmetry(), 0.0);
    const auto red = assemble(cook_problem(4, AlphaPolicy::standard()));
    EXPECT_EQ(red.matrix.max_asymmetry(), 0.0);
}

TEST(Assembly, DofMapPartition) {
    const auto p = cook_problem(3, AlphaPolicy::standard());
    const DofMap dofs(*p.mesh, p.bcs);
    std::vector<bool> on_dirichlet(p.mesh->num_nodes(), false);
    for (const auto& e : p.mesh->boundary_edges())
        if (e.tag == tags::dirichlet) on_dirichlet[e.endpoint_ids[0]] = on_dirichlet[e.endpoint_ids[1]] = true;
    EXPECT_EQ(dofs.num_free() + dofs.num_constrained(), 2 * p.mesh->num_nodes());
    for (std::size_t d = 0; d < dofs.num_dofs(); ++d) EXPECT_EQ(dofs.is_constrained(d), on_dirichlet[d / 2]);
    std::int64_t next = 0;
    for (std::size_t d = 0; d < dofs.num_dofs(); ++d)
        if (!dofs.is_constrained(d)) {
            EXPECT_EQ(dofs.free_index(d), next++);
        }
    std::vector<double> reduced(dofs.num_free());
    for (std::size_t i = 0; i < reduced.size(); ++i) reduced[i] = static_cast<double>(i + 1);
    const auto full = dofs.expand(reduced);
    for (std::size_t d = 0; d < dofs.num_dofs(); ++d)
        EXPECT_EQ(full[d], dofs.is_constrained(d) ? 0.0 : static_cast<double>(dofs.free_index(d) + 1));
}

TEST(Assembly, FullyConstrainedSquareHasNoUnknowns) {
    const auto p = make_example1_problem(std::make_shared<const Mesh>(generate_square_mesh(pi, 1)), 1e3, 1.0,
                                         AlphaPolicy::standard());
    const auto sys = assemble(p);
    EXPECT_EQ(sys.matrix.size(), 0u);
    EXPECT_TRUE(sys.rhs.empty());
}

TEST(Assembly, StandardPolicyEqualsAlphaOne) {
    const auto a = assemble(cook_problem(3, AlphaPolicy::standard()));
    const auto b = assemble(cook_problem(3, AlphaPolicy::fixed(1.0)));
    EXPECT_EQ(a.matrix, b.matrix);
    EXPECT_EQ(a.rhs, b.rhs);
    EXPECT_EQ(a.alpha_report.lambda_pow_alpha, b.alpha_report.lambda_pow_alpha);
    EXPECT_EQ(a.alpha_report.alpha, 1.0);
}

TEST(Assembly, ScalingLameScalesMatrix) {
    const auto mesh = std::make_shared<const Mesh>(generate_cook_mesh(3));
    auto p = make_cook_problem(mesh, 100.0, 0.5, 1.0 / 16, AlphaPolicy::fixed(1.0));
    auto q = make_cook_problem(mesh, 400.0, 2.0, 1.0 / 16, AlphaPolicy::fixed(1.0));
    const auto a = assemble_full(p).matrix;
    const auto b = assemble_full(q).matrix;
    ASSERT_EQ(a.nnz(), b.nnz());
    for (std::size_t i = 0; i < a.nnz(); ++i) EXPECT_EQ(b.values()[i], 4 * a.values()[i]);
}

TEST(Assembly, ReducedSystemIsPositiveDefinite) {
    for (const auto& policy : {AlphaPolicy::standard(), AlphaPolicy::locking_free()}) {
        const auto sys = assemble(cook_problem(2, policy));
        EXPECT_NO_THROW(dense_solve_oracle(to_dense(sys.matrix), sys.rhs));
        auto gen = oracle::rng(1);
        std::normal_distribution<double> n;
        std::vector<double> b(sys.rhs.size());
        for (auto& v : b) v = n(gen);
        // alpha = 1 with lambda = 7.5e6 has condition number near 1e8: the attainable
        // residual is about cond * eps.
        const double tol = policy.kind == AlphaPolicy::Kind::standard ? 1e-6 : 1e-10;
        const auto r = cg_solve(sys.matrix, b, {tol, 100000, Exec::serial});
        EXPECT_TRUE(r.report.converged);
    }
}

TEST(Assembly, BoundaryConditionErrors) {
    auto p = cook_problem(2, AlphaPolicy::standard());
    p.bcs.by_tag[tags::dirichlet] = TractionFree{};
    EXPECT_THROW(assemble(p), IllPosedProblemError);
    auto q = cook_problem(2, AlphaPolicy::standard());
    q.bcs.by_tag.erase(tags::traction_free);
    EXPECT_THROW(assemble(q), std::invalid_argument);
}

TEST(Assembly, VariableCoefficients) {
    const auto mesh = std::make_shared<const Mesh>(generate_cook_mesh(3));
    auto constant = make_cook_problem(mesh, 1e4, 0.5, 1.0 / 16, AlphaPolicy::locking_free());
    auto variable = constant;
    variable.lame = LameField::variable(1e4, [](const Point&) { return 0.5; }, [](const Point&) { return 1.0; });
    const auto a = assemble(constant);
    const auto b = assemble(variable);
    for (std::size_t i = 0; i < a.matrix.nnz(); ++i)
        EXPECT_NEAR(a.matrix.values()[i], b.matrix.values()[i], 1e-13 * a.matrix.max_abs());

    // Linear lambda_hat: the element coefficient equals the centroid value.
    const auto lin = LameField::variable(1e4, [](const Point& x) { return 1 + x.x1 / 48; },
                                         [](const Point& x) { return 2 + x.x2 / 60; });
    const auto coeff = element_coefficients(*mesh, lin, 30.0);
    for (std::size_t t = 0; t < mesh->num_triangles(); ++t) {
        const auto g = mesh->geometry(t);
        const Point c = from_barycentric(g, {1.0 / 3, 1.0 / 3, 1.0 / 3});
        EXPECT_NEAR(coeff.mu[t], 1 + c.x1 / 48, 1e-14);
        EXPECT_NEAR(coeff.lambda_eff[t], 30.0 * (2 + c.x2 / 60), 1e-12);
    }
    auto bad = constant;
    bad.lame = LameField::variable(1e4, [](const Point&) { return -1.0; }, [](const Point&) { return 1.0; });
    EXPECT_THROW(assemble(bad), std::invalid_argument);
}

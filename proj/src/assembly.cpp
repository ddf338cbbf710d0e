#include "lfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "lfem/errors.hpp"

namespace lfem {

DofMap::DofMap(const Mesh& mesh, const BoundaryConditions& bcs)
    : free_index_(2 * mesh.num_nodes(), 0) {
    for (const auto& e : mesh.boundary_edges()) {
        if (!bcs.is_dirichlet(e.tag)) continue;
        for (auto node : e.endpoint_ids) {
            free_index_[2 * static_cast<std::size_t>(node)] = -1;
            free_index_[2 * static_cast<std::size_t>(node) + 1] = -1;
        }
    }
    for (std::size_t d = 0; d < free_index_.size(); ++d) {
        if (free_index_[d] < 0) continue;
        free_index_[d] = static_cast<std::int64_t>(free_dofs_.size());
        free_dofs_.push_back(d);
    }
}

std::vector<double> DofMap::expand(std::span<const double> reduced,
                                   std::span<const double> fixed) const {
    if (reduced.size() != num_free()) throw std::invalid_argument("reduced vector length mismatch");
    if (!fixed.empty() && fixed.size() != num_dofs())
        throw std::invalid_argument("fixed-value vector length mismatch");
    std::vector<double> full(num_dofs(), 0.0);
    for (std::size_t d = 0; d < num_dofs(); ++d) {
        if (free_index_[d] >= 0)
            full[d] = reduced[static_cast<std::size_t>(free_index_[d])];
        else if (!fixed.empty())
            full[d] = fixed[d];
    }
    return full;
}

ElementMatrix element_stiffness(const TriangleGeometry& tri, double mu, double lambda_eff) {
    const double area = signed_area(tri);
    const double diam = std::max({distance(tri[0], tri[1]), distance(tri[1], tri[2]),
                                  distance(tri[2], tri[0])});
    if (!(area > 1e-14 * diam * diam)) throw SingularElementError("degenerate triangle");

    // Voigt strain rows (eps11, eps22, 2 eps12) of the six vector basis functions.
    std::array<std::array<double, 6>, 3> strain{};
    const double inv2a = 1.0 / (2.0 * area);
    for (int a = 0; a < 3; ++a) {
        const Point& pj = tri[(a + 1) % 3];
        const Point& pk = tri[(a + 2) % 3];
        const double gx = (pj.x2 - pk.x2) * inv2a;
        const double gy = (pk.x1 - pj.x1) * inv2a;
        strain[0][2 * a] = gx;
        strain[2][2 * a] = gy;
        strain[1][2 * a + 1] = gy;
        strain[2][2 * a + 1] = gx;
    }

    const double d_diag = 2.0 * mu + lambda_eff;
    ElementMatrix k{};
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            const double v = d_diag * (strain[0][i] * strain[0][j] + strain[1][i] * strain[1][j]) +
                             lambda_eff * (strain[0][i] * strain[1][j] + strain[1][i] * strain[0][j]) +
                             mu * strain[2][i] * strain[2][j];
            k[6 * i + j] = area * v;
            k[6 * j + i] = k[6 * i + j];
        }
    }
    return k;
}

ElementVector element_load(const TriangleGeometry& tri, const VectorField& f,
                           const quadrature::TriangleRule& rule) {
    const double area = signed_area(tri);
    if (!(area > 0.0)) throw SingularElementError("degenerate triangle in load integration");
    ElementVector b{};
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& bary = rule.points[q];
        const Vec2 fq = f(from_barycentric(tri, bary));
        for (int a = 0; a < 3; ++a) {
            const double w = rule.weights[q] * bary[static_cast<std::size_t>(a)];
            b[2 * a] += w * fq.c1;
            b[2 * a + 1] += w * fq.c2;
        }
    }
    for (double& v : b) v *= area;
    return b;
}

std::array<double, 4> edge_traction_load(const Point& a, const Point& b, const VectorField& g,
                                         const quadrature::LineRule& rule) {
    const double len = distance(a, b);
    if (!(len > 0.0)) throw SingularElementError("zero-length traction edge");
    std::array<double, 4> out{};
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = rule.points[q];
        const Vec2 gq = g({(1.0 - s) * a.x1 + s * b.x1, (1.0 - s) * a.x2 + s * b.x2});
        const double wa = rule.weights[q] * (1.0 - s);
        const double wb = rule.weights[q] * s;
        out[0] += wa * gq.c1;
        out[1] += wa * gq.c2;
        out[2] += wb * gq.c1;
        out[3] += wb * gq.c2;
    }
    for (double& v : out) v *= len;
    return out;
}

ElementCoefficients element_coefficients(const Mesh& mesh, const LameField& lame,
                                         double lambda_pow_alpha) {
    const std::size_t nt = mesh.num_triangles();
    ElementCoefficients c{std::vector<double>(nt), std::vector<double>(nt)};
    if (lame.is_constant()) {
        const double mu = lame.mu({});
        std::fill(c.mu.begin(), c.mu.end(), mu);
        std::fill(c.lambda_eff.begin(), c.lambda_eff.end(), lambda_pow_alpha);
        return c;
    }
    const auto& rule = quadrature::degree4_rule();
    for (std::size_t t = 0; t < nt; ++t) {
        const auto tri = mesh.geometry(t);
        double mu = 0.0, lhat = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point x = from_barycentric(tri, rule.points[q]);
            const double mq = lame.mu(x);
            const double lq = lame.lambda_hat(x);
            if (!(mq > 0.0) || !(lq > 0.0))
                throw std::invalid_argument("variable Lame field must be positive at quadrature points");
            mu += rule.weights[q] * mq;
            lhat += rule.weights[q] * lq;
        }
        c.mu[t] = mu;
        c.lambda_eff[t] = lambda_pow_alpha * lhat;
    }
    return c;
}

namespace {

void check_boundary_conditions(const ElasticityProblem& problem) {
    bool any_dirichlet = false;
    std::set<int> unassigned;
    for (const auto& e : problem.mesh->boundary_edges()) {
        if (!problem.bcs.by_tag.contains(e.tag)) unassigned.insert(e.tag);
        any_dirichlet = any_dirichlet || problem.bcs.is_dirichlet(e.tag);
    }
    if (!unassigned.empty())
        throw std::invalid_argument("no boundary condition for tag " +
                                    std::to_string(*unassigned.begin()));
    if (!any_dirichlet)
        throw IllPosedProblemError("no Dirichlet boundary edge: stiffness is singular");
}

SparseSymMatrix stiffness_pattern(const Mesh& mesh) {
    std::vector<std::vector<std::int32_t>> adj(mesh.num_nodes());
    for (const auto& t : mesh.triangles())
        for (auto a : t.vertex_ids)
            for (auto b : t.vertex_ids) adj[static_cast<std::size_t>(a)].push_back(b);
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> cols;
    row_ptr.reserve(2 * mesh.num_nodes() + 1);
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        for (int comp = 0; comp < 2; ++comp) {
            for (auto j : nbrs) {
                cols.push_back(2 * static_cast<std::size_t>(j));
                cols.push_back(2 * static_cast<std::size_t>(j) + 1);
            }
            row_ptr.push_back(cols.size());
        }
    }
    return SparseSymMatrix(2 * mesh.num_nodes(), std::move(row_ptr), std::move(cols));
}

}  // namespace

FullSystem assemble_full(const ElasticityProblem& problem, const AssemblyOptions& options) {
    if (!problem.mesh) throw std::invalid_argument("problem has no mesh");
    const Mesh& mesh = *problem.mesh;
    check_boundary_conditions(problem);

    FullSystem sys;
    sys.alpha_report =
        resolve_alpha(problem.alpha_policy, mesh.h(), problem.lame.Lambda(), mesh.d_omega());
    const auto coeff = element_coefficients(mesh, problem.lame, sys.alpha_report.lambda_pow_alpha);

    std::vector<ElementMatrix> ke(mesh.num_triangles());
    if (options.exec == Exec::parallel)
        kernels::element_matrices_omp(mesh, coeff.mu, coeff.lambda_eff, ke);
    else
        kernels::element_matrices_serial(mesh, coeff.mu, coeff.lambda_eff, ke);

    // Ordered reduction: element order fixes the summation order for every entry.
    sys.matrix = stiffness_pattern(mesh);
    auto values = sys.matrix.values();
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles()[t].vertex_ids;
        std::array<std::size_t, 6> dof{};
        for (int a = 0; a < 3; ++a) {
            dof[2 * a] = 2 * static_cast<std::size_t>(v[a]);
            dof[2 * a + 1] = dof[2 * a] + 1;
        }
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                values[sys.matrix.find(dof[i], dof[j])] += ke[t][6 * i + j];
    }

    sys.rhs.assign(2 * mesh.num_nodes(), 0.0);
    if (problem.body_force) {
        std::vector<ElementVector> fe(mesh.num_triangles());
        if (options.exec == Exec::parallel)
            kernels::element_loads_omp(mesh, problem.body_force, quadrature::degree4_rule(), fe);
        else
            kernels::element_loads_serial(mesh, problem.body_force, quadrature::degree4_rule(), fe);
        for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
            const auto& v = mesh.triangles()[t].vertex_ids;
            for (int a = 0; a < 3; ++a) {
                sys.rhs[2 * static_cast<std::size_t>(v[a])] += fe[t][2 * a];
                sys.rhs[2 * static_cast<std::size_t>(v[a]) + 1] += fe[t][2 * a + 1];
            }
        }
    }
    for (const auto& e : mesh.boundary_edges()) {
        const auto& kind = problem.bcs.by_tag.at(e.tag);
        const auto* traction = std::get_if<Traction>(&kind);
        if (traction == nullptr) continue;
        const auto [a, b] = e.endpoint_ids;
        const auto be = edge_traction_load(mesh.nodes()[static_cast<std::size_t>(a)],
                                           mesh.nodes()[static_cast<std::size_t>(b)], traction->g);
        sys.rhs[2 * static_cast<std::size_t>(a)] += be[0];
        sys.rhs[2 * static_cast<std::size_t>(a) + 1] += be[1];
        sys.rhs[2 * static_cast<std::size_t>(b)] += be[2];
        sys.rhs[2 * static_cast<std::size_t>(b) + 1] += be[3];
    }
    return sys;
}

AssembledSystem reduce_with_dirichlet_values(const FullSystem& full, const DofMap& dofs,
                                             std::span<const double> full_values) {
    const auto& k = full.matrix;
    if (dofs.num_dofs() != k.size()) throw std::invalid_argument("dof map does not match system");
    if (!full_values.empty() && full_values.size() != k.size())
        throw std::invalid_argument("Dirichlet value vector length mismatch");

    const auto rp = k.row_ptr();
    const auto ci = k.col_index();
    const auto kv = k.values();
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    std::vector<double> rhs;
    row_ptr.reserve(dofs.num_free() + 1);
    rhs.reserve(dofs.num_free());
    for (auto gi : dofs.free_dofs()) {
        double r = full.rhs[gi];
        for (std::size_t p = rp[gi]; p < rp[gi + 1]; ++p) {
            const auto fj = dofs.free_index(ci[p]);
            if (fj >= 0) {
                cols.push_back(static_cast<std::size_t>(fj));
                vals.push_back(kv[p]);
            } else if (!full_values.empty()) {
                r -= kv[p] * full_values[ci[p]];
            }
        }
        row_ptr.push_back(cols.size());
        rhs.push_back(r);
    }
    AssembledSystem out;
    out.matrix = SparseSymMatrix(dofs.num_free(), std::move(row_ptr), std::move(cols));
    std::copy(vals.begin(), vals.end(), out.matrix.values().begin());
    out.rhs = std::move(rhs);
    out.alpha_report = full.alpha_report;
    out.dof_map = dofs;
    return out;
}

AssembledSystem reduce(const FullSystem& full, const DofMap& dofs) {
    return reduce_with_dirichlet_values(full, dofs, {});
}

AssembledSystem assemble(const ElasticityProblem& problem, const AssemblyOptions& options) {
    const auto full = assemble_full(problem, options);
    return reduce(full, DofMap(*problem.mesh, problem.bcs));
}

}  // namespace lfem

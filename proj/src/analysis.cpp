#include "lfem/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace lfem {

DisplacementField::DisplacementField(std::shared_ptr<const Mesh> m, std::vector<double> v)
    : mesh(std::move(m)), values(std::move(v)) {
    if (!mesh) throw std::invalid_argument("displacement field needs a mesh");
    if (values.size() != 2 * mesh->num_nodes())
        throw std::invalid_argument("displacement field must hold 2 values per node");
}

Tensor2 DisplacementField::gradient(std::size_t t) const {
    const auto tri = mesh->geometry(t);
    const auto& v = mesh->triangles()[t].vertex_ids;
    const double inv2a = 1.0 / (2.0 * signed_area(tri));
    Tensor2 g{};
    for (int a = 0; a < 3; ++a) {
        const Point& pj = tri[(a + 1) % 3];
        const Point& pk = tri[(a + 2) % 3];
        const double gx = (pj.x2 - pk.x2) * inv2a;
        const double gy = (pk.x1 - pj.x1) * inv2a;
        const Vec2 u = at_node(static_cast<std::size_t>(v[a]));
        g[0][0] += u.c1 * gx;
        g[0][1] += u.c1 * gy;
        g[1][0] += u.c2 * gx;
        g[1][1] += u.c2 * gy;
    }
    return g;
}

Vec2 DisplacementField::evaluate(std::size_t t, const std::array<double, 3>& bary) const {
    const auto& v = mesh->triangles()[t].vertex_ids;
    Vec2 out;
    for (int a = 0; a < 3; ++a) {
        const Vec2 u = at_node(static_cast<std::size_t>(v[a]));
        out.c1 += bary[static_cast<std::size_t>(a)] * u.c1;
        out.c2 += bary[static_cast<std::size_t>(a)] * u.c2;
    }
    return out;
}

DisplacementField interpolate(std::shared_ptr<const Mesh> mesh, const VectorField& u) {
    std::vector<double> vals(2 * mesh->num_nodes());
    for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
        const Vec2 ui = u(mesh->nodes()[i]);
        vals[2 * i] = ui.c1;
        vals[2 * i + 1] = ui.c2;
    }
    return {std::move(mesh), std::move(vals)};
}

double l2_error(const DisplacementField& uh, const VectorField& u_exact,
                const quadrature::TriangleRule& rule) {
    const Mesh& mesh = *uh.mesh;
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.geometry(t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 a = uh.evaluate(t, rule.points[q]);
            const Vec2 b = u_exact(from_barycentric(tri, rule.points[q]));
            local += rule.weights[q] * ((a.c1 - b.c1) * (a.c1 - b.c1) + (a.c2 - b.c2) * (a.c2 - b.c2));
        }
        sum += signed_area(tri) * local;
    }
    return std::sqrt(sum);
}

double h1_seminorm_error(const DisplacementField& uh, const GradientField& grad_exact,
                         const quadrature::TriangleRule& rule) {
    const Mesh& mesh = *uh.mesh;
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.geometry(t);
        const Tensor2 gh = uh.gradient(t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Tensor2 g = grad_exact(from_barycentric(tri, rule.points[q]));
            double f = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) f += (gh[i][j] - g[i][j]) * (gh[i][j] - g[i][j]);
            local += rule.weights[q] * f;
        }
        sum += signed_area(tri) * local;
    }
    return std::sqrt(sum);
}

double energy_norm_error(const DisplacementField& uh, const GradientField& grad_exact, double mu,
                         double lambda_eff, const quadrature::TriangleRule& rule) {
    const Mesh& mesh = *uh.mesh;
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.geometry(t);
        const Tensor2 gh = uh.gradient(t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Tensor2 g = grad_exact(from_barycentric(tri, rule.points[q]));
            const double e11 = gh[0][0] - g[0][0];
            const double e22 = gh[1][1] - g[1][1];
            const double e12 = 0.5 * ((gh[0][1] - g[0][1]) + (gh[1][0] - g[1][0]));
            const double div = e11 + e22;
            local += rule.weights[q] *
                     (2.0 * mu * (e11 * e11 + e22 * e22 + 2.0 * e12 * e12) + lambda_eff * div * div);
        }
        sum += signed_area(tri) * local;
    }
    return std::sqrt(sum);
}

double convergence_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !(h_coarse > 0.0) || !(h_fine > 0.0))
        throw std::invalid_argument("convergence_rate needs positive errors and mesh sizes");
    if (!(h_coarse > h_fine)) throw std::invalid_argument("convergence_rate needs h_coarse > h_fine");
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

Vec2 point_displacement(const DisplacementField& uh, const Point& p) {
    const auto loc = locate_point(*uh.mesh, p);
    return uh.evaluate(loc.triangle, loc.barycentric);
}

double functional_value(const DisplacementField& uh, const VectorField& density,
                        const quadrature::TriangleRule& rule) {
    const Mesh& mesh = *uh.mesh;
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.geometry(t);
        double local = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Vec2 u = uh.evaluate(t, rule.points[q]);
            const Vec2 d = density(from_barycentric(tri, rule.points[q]));
            local += rule.weights[q] * (d.c1 * u.c1 + d.c2 * u.c2);
        }
        sum += signed_area(tri) * local;
    }
    return sum;
}

void ConvergenceTable::add(std::size_t n_free, double h, double error, double alpha, bool converged) {
    ErrorRow row{n_free, h, error, std::nullopt, alpha, converged};
    if (!rows.empty()) {
        const auto& prev = rows.back();
        if (prev.converged && converged && prev.error > 0.0 && error > 0.0 && prev.h > h)
            row.rate = convergence_rate(prev.error, error, prev.h, h);
    }
    rows.push_back(row);
}

void write_csv(const ConvergenceTable& table, std::ostream& out) {
    out << "Nh,h,error,rate,alpha\n";
    char buf[160];
    for (const auto& r : table.rows) {
        char err[32], rate[32];
        if (r.converged)
            std::snprintf(err, sizeof err, "%.3e", r.error);
        else
            std::snprintf(err, sizeof err, "nonconverged");
        if (r.rate)
            std::snprintf(rate, sizeof rate, "%.3f", *r.rate);
        else
            rate[0] = '\0';
        std::snprintf(buf, sizeof buf, "%zu,%.3f,%s,%s,%.3f\n", r.n_free, r.h, err, rate, r.alpha);
        out << buf;
    }
}

void write_csv(const ConvergenceTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_csv(table, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lfem

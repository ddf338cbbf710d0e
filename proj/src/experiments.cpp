#include "lfem/experiments.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <omp.h>

namespace lfem {

namespace {

std::string shortest(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

SolveOptions solve_options(const StudyConfig& config) {
    SolveOptions o;
    o.solver = config.solver;
    o.cg.tol = config.tol;
    return o;
}

// Runs body(i) for i in [0, n) on up to `jobs` threads; the first exception is rethrown.
template <typename Body>
void for_each_job(std::size_t n, int jobs, Body&& body) {
    std::exception_ptr failure;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs > 0 ? jobs : 1) if (jobs > 1)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(lfem_job_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::string lambda_label(double lambda) {
    if (lambda == std::floor(lambda) && std::abs(lambda) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", lambda);
        return buf;
    }
    return shortest(lambda);
}

std::vector<std::shared_ptr<const Mesh>> mesh_hierarchy(const StudyConfig& config) {
    std::vector<std::shared_ptr<const Mesh>> meshes;
    meshes.push_back(std::make_shared<const Mesh>(base_mesh(config)));
    for (int k = 1; k < config.levels; ++k)
        meshes.push_back(std::make_shared<const Mesh>(uniform_refine(*meshes.back())));
    return meshes;
}

ElasticityProblem make_problem(const StudyConfig& config, std::shared_ptr<const Mesh> mesh,
                               double lambda, AlphaPolicy policy) {
    ElasticityProblem p;
    switch (config.domain) {
        case Domain::square: p = make_example1_problem(std::move(mesh), lambda, config.mu, policy); break;
        case Domain::cook: p = make_cook_problem(std::move(mesh), lambda, config.mu, config.g, policy); break;
        case Domain::file: {
            p.mesh = std::move(mesh);
            p.lame = LameField::constant(lambda, config.mu);
            p.alpha_policy = policy;
            const double g = config.g;
            for (const auto& e : p.mesh->boundary_edges()) {
                if (e.tag == tags::traction)
                    p.bcs.by_tag[e.tag] = Traction{[g](const Point&) { return Vec2{0.0, g}; }};
                else
                    p.bcs.by_tag[e.tag] = TractionFree{};
            }
            break;
        }
    }
    for (auto& [tag, kind] : p.bcs.by_tag)
        if (std::holds_alternative<Dirichlet>(kind)) kind = TractionFree{};
    for (int t : config.dirichlet_tags) p.bcs.by_tag[t] = Dirichlet{};
    return p;
}

std::vector<Example1Run> run_example1(const StudyConfig& config) {
    if (config.domain != Domain::square)
        throw std::invalid_argument("the manufactured-solution study runs on the square domain");
    if (config.levels < 2) throw std::invalid_argument("a convergence study needs >= 2 levels");
    const auto meshes = mesh_hierarchy(config);
    const std::size_t nl = meshes.size();

    std::vector<Example1Run> runs;
    for (double lambda : config.lambdas)
        for (const auto& policy : config.policies) runs.push_back({lambda, policy, {}, {}, {}});

    struct LevelResult {
        std::size_t n_free = 0;
        double alpha = 1.0;
        double l2 = 0.0;
        double h1 = 0.0;
        SolveReport report;
    };
    std::vector<LevelResult> results(runs.size() * nl);
    const auto options = solve_options(config);
    for_each_job(results.size(), config.jobs, [&](std::size_t job) {
        const auto& run = runs[job / nl];
        const auto& mesh = meshes[job % nl];
        const double lambda = run.lambda;
        const auto sol = solve(make_problem(config, mesh, lambda, run.policy), options);
        auto& r = results[job];
        r.n_free = sol.n_free;
        r.alpha = sol.alpha_report.alpha;
        r.report = sol.report;
        r.l2 = l2_error(sol.field, [lambda](const Point& x) { return example1_exact_solution(x, lambda); });
        r.h1 = h1_seminorm_error(sol.field,
                                 [lambda](const Point& x) { return example1_exact_gradient(x, lambda); });
    });

    for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t k = 0; k < nl; ++k) {
            const auto& r = results[i * nl + k];
            runs[i].l2.add(r.n_free, meshes[k]->h(), r.l2, r.alpha, r.report.converged);
            runs[i].h1.add(r.n_free, meshes[k]->h(), r.h1, r.alpha, r.report.converged);
            runs[i].reports.push_back(r.report);
        }
    }

    if (!config.outdir.empty()) {
        const auto dir = config.outdir / "example1";
        std::filesystem::create_directories(dir);
        for (const auto& run : runs) {
            const auto stem = "lambda" + lambda_label(run.lambda) + "_alpha" + run.policy.name();
            write_csv(run.l2, dir / (stem + "_l2.csv"));
            write_csv(run.h1, dir / (stem + "_h1.csv"));
        }
    }
    return runs;
}

std::vector<CookRun> run_cook(const StudyConfig& config) {
    if (config.domain != Domain::cook) throw std::invalid_argument("run_cook needs domain=cook");
    if (config.lambdas.empty()) throw std::invalid_argument("run_cook needs a lambda");
    const auto meshes = mesh_hierarchy(config);
    const std::size_t nl = meshes.size();
    const double lambda = config.lambdas.front();

    std::vector<CookRun> runs;
    for (const auto& policy : config.policies) runs.push_back({policy, std::vector<CookRow>(nl)});
    std::vector<DisplacementField> fields(runs.size() * nl);

    const auto options = solve_options(config);
    const double g = config.g;
    for_each_job(fields.size(), config.jobs, [&](std::size_t job) {
        auto& run = runs[job / nl];
        const auto& mesh = meshes[job % nl];
        const auto sol = solve(make_problem(config, mesh, lambda, run.policy), options);
        auto& row = run.rows[job % nl];
        row.n_free = sol.n_free;
        row.h = mesh->h();
        row.alpha = sol.alpha_report.alpha;
        row.report = sol.report;
        row.u2_a = point_displacement(sol.field, cook_point_a).c2;
        row.u2_a_alt = point_displacement(sol.field, cook_point_a_alt).c2;
        for (const auto& e : mesh->boundary_edges()) {
            if (e.tag != tags::traction) continue;
            const auto f = edge_traction_load(mesh->nodes()[static_cast<std::size_t>(e.endpoint_ids[0])],
                                              mesh->nodes()[static_cast<std::size_t>(e.endpoint_ids[1])],
                                              [g](const Point&) { return Vec2{0.0, g}; });
            row.total_load += f[1] + f[3];
        }
        fields[job] = sol.field;
    });

    if (!config.outdir.empty()) {
        const auto dir = config.outdir / "cook";
        std::filesystem::create_directories(dir);
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto name = runs[i].policy.name();
            auto out = open_output(dir / ("tip_displacement_" + name + ".csv"));
            out << "Nh,h,alpha,u2_48_52,u2_48_50\n";
            char buf[160];
            for (const auto& row : runs[i].rows) {
                std::snprintf(buf, sizeof buf, "%zu,%.3f,%.3f,%.5f,%.5f\n", row.n_free, row.h,
                              row.alpha, row.u2_a, row.u2_a_alt);
                out << buf;
            }
            for (std::size_t k = 0; k < nl; ++k)
                export_deformed_mesh(fields[i * nl + k], 1.0,
                                     dir / ("deformed_" + name + "_lvl" + std::to_string(k) + ".vtk"));
        }
    }
    return runs;
}

void export_deformed_mesh(const DisplacementField& uh, double scale, std::ostream& out) {
    const Mesh& mesh = *uh.mesh;
    char buf[128];
    out << "# vtk DataFile Version 3.0\n"
        << "deformed mesh\n"
        << "ASCII\n"
        << "DATASET UNSTRUCTURED_GRID\n"
        << "POINTS " << mesh.num_nodes() << " double\n";
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        const auto& p = mesh.nodes()[i];
        const Vec2 u = uh.at_node(i);
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x1 + scale * u.c1, p.x2 + scale * u.c2);
        out << buf;
    }
    out << "CELLS " << mesh.num_triangles() << ' ' << 4 * mesh.num_triangles() << '\n';
    for (const auto& t : mesh.triangles())
        out << "3 " << t.vertex_ids[0] << ' ' << t.vertex_ids[1] << ' ' << t.vertex_ids[2] << '\n';
    out << "CELL_TYPES " << mesh.num_triangles() << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) out << "5\n";
    out << "POINT_DATA " << mesh.num_nodes() << '\n' << "VECTORS displacement double\n";
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        const Vec2 u = uh.at_node(i);
        std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", u.c1, u.c2);
        out << buf;
    }
}

void export_deformed_mesh(const DisplacementField& uh, double scale,
                          const std::filesystem::path& path) {
    auto out = open_output(path);
    export_deformed_mesh(uh, scale, out);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace lfem

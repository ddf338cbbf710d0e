#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lfem/errors.hpp"
#include "lfem/experiments.hpp"

namespace lfem::cli {

namespace {

struct StudyFlags {
    std::string config;
    std::string outdir;
    std::vector<std::string> lambdas;
    std::vector<std::string> alphas;
    std::optional<double> mu, E, nu, g;
    std::optional<int> levels, n0;
    std::string mesh;
    std::vector<std::string> points;
    int jobs = 1;
};

class Printer {
public:
    explicit Printer(bool full) : full_(full) {}

    std::string operator()(double v) const {
        char buf[40];
        if (full_) {
            const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, end);
        }
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

private:
    bool full_;
};

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) s += (s.empty() ? "" : ",") + i;
    return s;
}

void add_study_flags(CLI::App* app, StudyFlags& f) {
    app->add_option("--config", f.config, "Problem configuration file (key=value)");
    app->add_option("--outdir", f.outdir, "Output directory (default: results)");
    app->add_option("--lambda", f.lambdas, "Lame lambda; repeatable")->take_all();
    app->add_option("--mu", f.mu, "Shear modulus");
    app->add_option("--E", f.E, "Young's modulus (with --nu)");
    app->add_option("--nu", f.nu, "Poisson ratio (with --E)");
    app->add_option("--alpha", f.alphas, "Exponent policy: star, one, or a number; repeatable")
        ->take_all();
    app->add_option("--levels", f.levels, "Number of mesh levels")->check(CLI::PositiveNumber);
    app->add_option("--n0", f.n0, "Subdivisions of the level-0 mesh")->check(CLI::PositiveNumber);
    app->add_option("--g", f.g, "Vertical traction on the loaded edge");
    app->add_option("--jobs", f.jobs, "Concurrent solves")->check(CLI::PositiveNumber);
}

// Config-file values overlaid with command-line flags.
StudyConfig resolve(const StudyFlags& f, const char* domain) {
    ConfigValues v;
    if (!f.config.empty()) v = load_config(f.config);
    if (domain) {
        const auto it = v.find("domain");
        if (it != v.end() && it->second != domain)
            throw std::invalid_argument(std::string("config domain '") + it->second +
                                        "' does not match subcommand domain '" + domain + "'");
        v["domain"] = domain;
    }
    auto put = [&](const char* key, const std::optional<double>& x) {
        if (x) v[key] = Printer(true)(*x);
    };
    if (!f.lambdas.empty()) v["lambda"] = join(f.lambdas);
    if (!f.alphas.empty()) v["alpha"] = join(f.alphas);
    if (f.E || f.nu) {
        v.erase("lambda");
        v.erase("mu");
    }
    if ((f.E || f.nu) && !f.lambdas.empty())
        throw std::invalid_argument("give either --E/--nu or --lambda/--mu, not both");
    if ((f.E || f.nu) && f.mu) throw std::invalid_argument("give either --E/--nu or --lambda/--mu, not both");
    if (f.mu || !f.lambdas.empty()) {
        v.erase("E");
        v.erase("nu");
    }
    put("mu", f.mu);
    put("E", f.E);
    put("nu", f.nu);
    put("g", f.g);
    if (f.levels) v["refinements"] = std::to_string(*f.levels - 1);
    if (f.n0) v["n0"] = std::to_string(*f.n0);
    if (!f.mesh.empty()) v["mesh"] = f.mesh;
    auto config = build_config(v);
    if (!f.outdir.empty()) config.outdir = f.outdir;
    config.jobs = f.jobs;
    return config;
}

Point parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("point must be x1,x2: " + text);
    Point p{};
    const char* b = text.data();
    const char* e = b + text.size();
    const auto r1 = std::from_chars(b, b + comma, p.x1);
    const auto r2 = std::from_chars(b + comma + 1, e, p.x2);
    if (r1.ec != std::errc{} || r1.ptr != b + comma || r2.ec != std::errc{} || r2.ptr != e)
        throw std::invalid_argument("point must be x1,x2: " + text);
    return p;
}

int run_example1(const StudyFlags& f, const Printer& num, std::ostream& out, std::ostream& err) {
    auto config = resolve(f, "square");
    const auto runs = lfem::run_example1(config);
    bool converged = true;
    out << "lambda,alpha_policy,Nh,h,alpha,l2_error,l2_rate,h1_error,h1_rate\n";
    for (const auto& run : runs) {
        for (std::size_t k = 0; k < run.l2.rows.size(); ++k) {
            const auto& a = run.l2.rows[k];
            const auto& b = run.h1.rows[k];
            converged = converged && a.converged;
            out << num(run.lambda) << ',' << run.policy.name() << ',' << a.n_free << ',' << num(a.h)
                << ',' << num(a.alpha) << ',' << num(a.error) << ',' << (a.rate ? num(*a.rate) : "")
                << ',' << num(b.error) << ',' << (b.rate ? num(*b.rate) : "") << '\n';
        }
    }
    out << "wrote " << (config.outdir / "example1").string() << '\n';
    if (!converged) {
        err << "error: at least one solve did not converge\n";
        return exit_numerical;
    }
    return exit_ok;
}

int run_cook(const StudyFlags& f, const Printer& num, std::ostream& out, std::ostream& err) {
    auto config = resolve(f, "cook");
    const auto runs = lfem::run_cook(config);
    bool converged = true;
    out << "alpha_policy,Nh,h,alpha,u2_48_52,u2_48_50,total_load\n";
    for (const auto& run : runs)
        for (const auto& r : run.rows) {
            converged = converged && r.report.converged;
            out << run.policy.name() << ',' << r.n_free << ',' << num(r.h) << ',' << num(r.alpha) << ','
                << num(r.u2_a) << ',' << num(r.u2_a_alt) << ',' << num(r.total_load) << '\n';
        }
    out << "wrote " << (config.outdir / "cook").string() << '\n';
    if (!converged) {
        err << "error: at least one solve did not converge\n";
        return exit_numerical;
    }
    return exit_ok;
}

int run_solve(const StudyFlags& f, const Printer& num, std::ostream& out, std::ostream& err) {
    auto config = resolve(f, nullptr);
    const auto file_values = f.config.empty() ? ConfigValues{} : load_config(f.config);
    if (f.alphas.empty() && !file_values.contains("alpha")) config.policies = {AlphaPolicy::locking_free()};
    if (f.lambdas.empty() && !file_values.contains("lambda")) config.lambdas.resize(1);
    if (!f.levels && !file_values.contains("refinements")) config.levels = 1;
    if (config.policies.size() != 1) throw std::invalid_argument("solve takes a single alpha policy");
    if (config.lambdas.size() != 1) throw std::invalid_argument("solve takes a single lambda");
    std::vector<Point> points;
    for (const auto& p : f.points) points.push_back(parse_point(p));
    if (points.empty() && config.domain == Domain::cook) points = {cook_point_a, cook_point_a_alt};

    const auto meshes = mesh_hierarchy(config);
    const auto problem = make_problem(config, meshes.back(), config.lambdas.front(), config.policies.front());
    SolveOptions options;
    options.solver = config.solver;
    options.cg.tol = config.tol;
    const auto sol = solve(problem, options);

    out << "Nh " << sol.n_free << '\n'
        << "h " << num(meshes.back()->h()) << '\n'
        << "alpha " << num(sol.alpha_report.alpha) << '\n'
        << "lambda_eff " << num(sol.alpha_report.lambda_pow_alpha) << '\n'
        << "iterations " << sol.report.iterations << '\n'
        << "relative_residual " << num(sol.report.relative_residual) << '\n';
    for (const auto& p : points) {
        const Vec2 u = point_displacement(sol.field, p);
        out << "u(" << num(p.x1) << ',' << num(p.x2) << ") " << num(u.c1) << ' ' << num(u.c2) << '\n';
    }
    if (!sol.report.converged) {
        err << "error: solver did not converge\n";
        return exit_numerical;
    }
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Locking-free P1 finite elements for 2D linear elasticity", "lfem"};
    app.require_subcommand(1, 1);
    app.failure_message(CLI::FailureMessage::help);

    bool full_precision = false;
    StudyFlags e1, cook, single;
    auto* sub_e1 = app.add_subcommand("example1", "Manufactured-solution convergence study on (0,pi)^2");
    auto* sub_cook = app.add_subcommand("cook", "Cook's membrane study");
    auto* sub_solve = app.add_subcommand("solve", "Solve one problem and report N_h, alpha, residual");
    add_study_flags(sub_e1, e1);
    add_study_flags(sub_cook, cook);
    add_study_flags(sub_solve, single);
    sub_solve->add_option("--mesh", single.mesh, "Mesh file (sets domain=file)");
    sub_solve->add_option("--point", single.points, "Report u_h at x1,x2; repeatable")->take_all();

    auto* sub_alpha = app.add_subcommand("alpha", "Print the locking-free exponent for h, lambda, d_Omega");
    sub_alpha->set_help_flag("--help", "Print this help message and exit");
    double h = 0.0, lambda = 0.0, d_omega = 0.0;
    sub_alpha->add_option("--h", h, "Mesh size")->required();
    sub_alpha->add_option("--lambda", lambda, "Lame lambda")->required();
    sub_alpha->add_option("--d-omega", d_omega, "Domain diameter")->required();

    auto* sub_refine = app.add_subcommand("refine-mesh", "Uniformly refine a mesh file");
    std::string input, output;
    int times = 1;
    sub_refine->add_option("input", input, "Input mesh")->required();
    sub_refine->add_option("output", output, "Output mesh")->required();
    sub_refine->add_option("times", times, "Number of refinements (default 1)")->check(CLI::NonNegativeNumber);

    for (auto* sub : {sub_e1, sub_cook, sub_solve, sub_alpha})
        sub->add_flag("--full-precision", full_precision, "Shortest round-trip number output");

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const Printer num(full_precision);
    try {
        if (*sub_e1) return run_example1(e1, num, out, err);
        if (*sub_cook) return run_cook(cook, num, out, err);
        if (*sub_solve) return run_solve(single, num, out, err);
        if (*sub_alpha) {
            const auto r = compute_alpha(h, lambda, d_omega);
            if (full_precision) {
                out << num(r.alpha) << '\n';
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.3f", r.alpha);
                out << buf << '\n';
            }
            return exit_ok;
        }
        if (*sub_refine) {
            Mesh mesh = read_mesh(std::filesystem::path(input));
            for (int k = 0; k < times; ++k) mesh = uniform_refine(mesh);
            write_mesh(mesh, std::filesystem::path(output));
            out << "nodes " << mesh.num_nodes() << " triangles " << mesh.num_triangles() << " h "
                << num(mesh.h()) << '\n';
            return exit_ok;
        }
    } catch (const IllPosedProblemError& e) {
        err << "error: ill-posed problem: " << e.what() << '\n';
        return exit_numerical;
    } catch (const NotSpdError& e) {
        err << "error: matrix not positive definite: " << e.what() << '\n';
        return exit_numerical;
    } catch (const SingularElementError& e) {
        err << "error: singular element: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace lfem::cli

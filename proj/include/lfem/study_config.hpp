#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lfem/problem.hpp"
#include "lfem/solver.hpp"

namespace lfem {

enum class Domain { square, cook, file };

/// Everything a study or single solve needs. Built from key=value pairs so that a config
/// file and command-line flags share one code path (flags are applied last).
struct StudyConfig {
    Domain domain = Domain::square;
    double side = 0.0;
    int n0 = 0;
    int levels = 0;  // number of meshes: n0 mesh plus (levels - 1) refinements
    std::vector<double> lambdas;
    double mu = 1.0;
    std::vector<AlphaPolicy> policies;
    double g = 1.0 / 16.0;
    std::filesystem::path mesh_file;
    std::vector<int> dirichlet_tags{1};
    SolverKind solver = SolverKind::direct;
    double tol = 1e-10;
    std::filesystem::path outdir = "results";
    int jobs = 1;
};

using ConfigValues = std::map<std::string, std::string>;

/// Keys of the problem configuration file.
///   domain={square|cook|file} side n0 refinements lambda mu E nu alpha g
///   mesh dirichlet_tags solver={direct|cg} tol
/// `lambda` and `alpha` accept comma-separated lists. Unknown keys, repeated keys, and
/// malformed lines throw ParseError carrying the line number.
ConfigValues parse_config(std::istream& in);
ConfigValues load_config(const std::filesystem::path& path);

/// Applies domain defaults and then the given values. Throws std::invalid_argument for
/// bad values (and for E/nu combined with explicit lambda/mu).
StudyConfig build_config(const ConfigValues& values);

/// Mesh for level 0 of the configured domain.
Mesh base_mesh(const StudyConfig& config);

}  // namespace lfem

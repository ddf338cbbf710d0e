#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "lfem/analysis.hpp"
#include "lfem/solve.hpp"
#include "lfem/study_config.hpp"

namespace lfem {

/// Meshes for levels 0..levels-1: the configured base mesh and its uniform refinements.
std::vector<std::shared_ptr<const Mesh>> mesh_hierarchy(const StudyConfig& config);

/// Problem of the configured domain on `mesh`: manufactured square problem, Cook membrane,
/// or a mesh file with the configured Dirichlet tags, traction g on tag 2, zero body force.
ElasticityProblem make_problem(const StudyConfig& config, std::shared_ptr<const Mesh> mesh,
                               double lambda, AlphaPolicy policy);

struct Example1Run {
    double lambda = 0.0;
    AlphaPolicy policy;
    ConvergenceTable l2;
    ConvergenceTable h1;
    std::vector<SolveReport> reports;  // one per level
};

/// Manufactured-solution study for every (lambda, policy). Writes
/// <outdir>/example1/lambda<L>_alpha<policy>_{l2,h1}.csv unless outdir is empty.
std::vector<Example1Run> run_example1(const StudyConfig& config);

struct CookRow {
    std::size_t n_free = 0;
    double h = 0.0;
    double alpha = 1.0;
    double u2_a = 0.0;      // vertical displacement at (48,52)
    double u2_a_alt = 0.0;  // at (48,50)
    double total_load = 0.0;
    SolveReport report;
};

struct CookRun {
    AlphaPolicy policy;
    std::vector<CookRow> rows;
};

inline constexpr Point cook_point_a{48.0, 52.0};
inline constexpr Point cook_point_a_alt{48.0, 50.0};
inline constexpr double cook_reference_u2 = 16.442;

/// Cook membrane study per policy. Writes <outdir>/cook/tip_displacement_<policy>.csv and
/// <outdir>/cook/deformed_<policy>_lvl<k>.vtk unless outdir is empty.
std::vector<CookRun> run_cook(const StudyConfig& config);

/// Legacy VTK unstructured grid: nodes moved by scale * u_h, with the unscaled
/// displacement as point vectors named `displacement`.
void export_deformed_mesh(const DisplacementField& uh, double scale, std::ostream& out);
void export_deformed_mesh(const DisplacementField& uh, double scale,
                          const std::filesystem::path& path);

/// File-name label: integral values print as integers, others in shortest form.
std::string lambda_label(double lambda);

}  // namespace lfem

#pragma once

#include "lfem/analysis.hpp"
#include "lfem/assembly.hpp"
#include "lfem/problem.hpp"
#include "lfem/solver.hpp"

namespace lfem {

struct SolveOptions {
    SolverKind solver = SolverKind::direct;
    CgOptions cg;  // tol also applies to the direct residual check
    Exec exec = Exec::serial;  // assembly kernels; cg.exec governs the solver
};

struct Solution {
    DisplacementField field;
    AlphaReport alpha_report;
    SolveReport report;
    std::size_t n_free = 0;
};

/// Assemble, eliminate Dirichlet dofs, solve, and expand to a nodal field.
Solution solve(const ElasticityProblem& problem, const SolveOptions& options = {});

}  // namespace lfem

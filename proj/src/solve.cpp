#include "lfem/solve.hpp"

namespace lfem {

Solution solve(const ElasticityProblem& problem, const SolveOptions& options) {
    const auto sys = assemble(problem, {options.exec});
    Solution out;
    out.alpha_report = sys.alpha_report;
    out.n_free = sys.dof_map.num_free();
    std::vector<double> reduced;
    if (out.n_free == 0) {
        out.report = {0, 0.0, true, options.cg.tol};
    } else {
        auto cg = options.solver == SolverKind::cg ? cg_solve(sys.matrix, sys.rhs, options.cg)
                                                   : direct_solve(sys.matrix, sys.rhs, options.cg.tol);
        reduced = std::move(cg.x);
        out.report = cg.report;
    }
    out.field = DisplacementField(problem.mesh, sys.dof_map.expand(reduced));
    return out;
}

}  // namespace lfem

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lfem/kernels.hpp"
#include "lfem/sparse.hpp"

namespace lfem {

struct SolveReport {
    std::size_t iterations = 0;
    double relative_residual = 0.0;  // ||b - A x|| / ||b||, recomputed from x
    bool converged = false;          // relative_residual <= tolerance
    double tolerance = 0.0;
};

struct CgOptions {
    double tol = 1e-10;
    std::size_t max_iter = 0;  // 0 selects 20 * n
    Exec exec = Exec::serial;
};

struct CgResult {
    std::vector<double> x;
    SolveReport report;
};

/// Jacobi-preconditioned conjugate gradients from a zero initial guess.
/// Throws NotSpdError on a non-positive diagonal entry or non-positive curvature.
/// Exceeding max_iter is reported, not thrown.
CgResult cg_solve(const SparseSymMatrix& a, std::span<const double> b, const CgOptions& options = {});

enum class SolverKind { cg, direct };

/// Sparse Cholesky (fill-reducing AMD ordering) plus one step of iterative refinement.
/// The report carries zero iterations. A backward-stable solve cannot push the residual
/// below roughly eps * ||A|| ||x||, so the tolerance applied is
/// max(tol, 1e-12 * (||A||_inf ||x|| + ||b||) / ||b||). Throws NotSpdError when the
/// factorization breaks down.
CgResult direct_solve(const SparseSymMatrix& a, std::span<const double> b, double tol = 1e-10);

/// Dense Cholesky solve; test oracle for n <= 2000. Throws NotSpdError on a bad pivot.
std::vector<double> dense_solve_oracle(const DenseMatrix& a, std::span<const double> b);

/// ||b - A x||_2 / ||b||_2 (absolute when b = 0).
double relative_residual(const SparseSymMatrix& a, std::span<const double> x,
                         std::span<const double> b, Exec exec = Exec::serial);

}  // namespace lfem

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "lfem/errors.hpp"
#include "lfem/solver.hpp"

namespace lfem {

CgResult direct_solve(const SparseSymMatrix& a, std::span<const double> b, double tol) {
    const auto n = static_cast<Eigen::Index>(a.size());
    if (b.size() != a.size()) throw std::invalid_argument("direct_solve: rhs length mismatch");
    CgResult out{std::vector<double>(a.size(), 0.0), {}};
    if (n == 0) {
        out.report = {0, 0.0, true, tol};
        return out;
    }

    // Lower triangle only; the CSR rows map to CSC columns of the transpose.
    std::vector<Eigen::Triplet<double, int>> trips;
    trips.reserve(a.nnz() / 2 + a.size());
    const auto rp = a.row_ptr();
    const auto ci = a.col_index();
    const auto v = a.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k)
            if (ci[k] <= i) trips.emplace_back(static_cast<int>(i), static_cast<int>(ci[k]), v[k]);
    Eigen::SparseMatrix<double, Eigen::ColMajor, int> m(n, n);
    m.setFromTriplets(trips.begin(), trips.end());

    Eigen::SimplicialLLT<Eigen::SparseMatrix<double, Eigen::ColMajor, int>, Eigen::Lower> llt(m);
    if (llt.info() != Eigen::Success) throw NotSpdError("sparse Cholesky factorization failed");
    const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), n);
    Eigen::VectorXd x = llt.solve(rhs);
    if (llt.info() != Eigen::Success) throw NotSpdError("sparse Cholesky solve failed");
    std::copy(x.data(), x.data() + n, out.x.begin());

    std::vector<double> r(a.size());
    multiply(a, out.x, r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    const Eigen::VectorXd dx = llt.solve(Eigen::Map<const Eigen::VectorXd>(r.data(), n));
    for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += dx[static_cast<Eigen::Index>(i)];

    double norm_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double row = 0.0;
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) row += std::abs(v[k]);
        norm_a = std::max(norm_a, row);
    }
    const double nb = Eigen::Map<const Eigen::VectorXd>(b.data(), n).norm();
    const double nx = Eigen::Map<const Eigen::VectorXd>(out.x.data(), n).norm();

    out.report.iterations = 0;
    out.report.relative_residual = relative_residual(a, out.x, b);
    out.report.tolerance = nb > 0.0 ? std::max(tol, 1e-12 * (norm_a * nx + nb) / nb) : tol;
    out.report.converged = out.report.relative_residual <= out.report.tolerance;
    return out;
}

}  // namespace lfem

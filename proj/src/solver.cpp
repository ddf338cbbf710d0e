#include "lfem/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "lfem/errors.hpp"

namespace lfem {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

double relative_residual(const SparseSymMatrix& a, std::span<const double> x,
                         std::span<const double> b, Exec exec) {
    std::vector<double> r(a.size());
    multiply(a, x, r, exec);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    const double nb = norm2(b);
    return nb > 0.0 ? norm2(r) / nb : norm2(r);
}

CgResult cg_solve(const SparseSymMatrix& a, std::span<const double> b, const CgOptions& options) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("cg_solve: rhs length does not match matrix");
    const std::size_t max_iter = options.max_iter == 0 ? 20 * n : options.max_iter;

    CgResult out{std::vector<double>(n, 0.0), {}};
    const auto diag = a.diagonal();
    std::vector<double> inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(diag[i] > 0.0))
            throw NotSpdError("non-positive diagonal entry at row " + std::to_string(i));
        inv_diag[i] = 1.0 / diag[i];
    }

    const double nb = norm2(b);
    if (nb == 0.0) {
        out.report = {0, 0.0, true, options.tol};
        return out;
    }

    auto& x = out.x;
    std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = dot(r, z);
    std::size_t it = 0;
    double true_res = 1.0;
    while (it < max_iter) {
        multiply(a, p, q, options.exec);
        const double pq = dot(p, q);
        if (!(pq > 0.0)) throw NotSpdError("non-positive curvature p^T A p in CG");
        const double step = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += step * p[i];
            r[i] -= step * q[i];
        }
        ++it;
        if (norm2(r) <= options.tol * nb) {
            // Confirm with the true residual; on drift, restart from it.
            true_res = relative_residual(a, x, b, options.exec);
            if (true_res <= options.tol) break;
            multiply(a, x, q, options.exec);
            for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
            p = z;
            rz = dot(r, z);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    out.report.iterations = it;
    out.report.relative_residual = relative_residual(a, x, b, options.exec);
    out.report.tolerance = options.tol;
    out.report.converged = out.report.relative_residual <= options.tol;
    return out;
}

std::vector<double> dense_solve_oracle(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t n = a.n;
    if (b.size() != n) throw std::invalid_argument("dense_solve_oracle: size mismatch");
    if (n > 2000) throw std::invalid_argument("dense_solve_oracle limited to n <= 2000");
    DenseMatrix l(n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) throw NotSpdError("non-positive Cholesky pivot at " + std::to_string(j));
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    std::vector<double> y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
        y[i] /= l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
        y[i] /= l(i, i);
    }
    return y;
}

}  // namespace lfem

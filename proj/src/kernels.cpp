#include "lfem/kernels.hpp"

#include <cstdint>
#include <exception>
#include <stdexcept>

#include "lfem/assembly.hpp"

namespace lfem {

namespace kernels {

namespace {

inline double row_dot(const SparseSymMatrix& a, std::span<const double> x, std::size_t i) {
    const auto rp = a.row_ptr();
    const auto ci = a.col_index();
    const auto v = a.values();
    double s = 0.0;
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) s += v[k] * x[ci[k]];
    return s;
}

void check_spmv(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y) {
    if (x.size() != a.size() || y.size() != a.size())
        throw std::invalid_argument("spmv: vector length does not match matrix");
}

void check_elements(const Mesh& mesh, std::size_t a, std::size_t b, std::size_t c) {
    if (a != mesh.num_triangles() || b != mesh.num_triangles() || c != mesh.num_triangles())
        throw std::invalid_argument("per-element span length does not match triangle count");
}

}  // namespace

void spmv_serial(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y) {
    check_spmv(a, x, y);
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = row_dot(a, x, i);
}

void spmv_omp(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y) {
    check_spmv(a, x, y);
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] = row_dot(a, x, static_cast<std::size_t>(i));
}

void element_matrices_serial(const Mesh& mesh, std::span<const double> mu,
                             std::span<const double> lambda_eff, std::span<ElementMatrix> out) {
    check_elements(mesh, mu.size(), lambda_eff.size(), out.size());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        out[t] = element_stiffness(mesh.geometry(t), mu[t], lambda_eff[t]);
}

void element_matrices_omp(const Mesh& mesh, std::span<const double> mu,
                          std::span<const double> lambda_eff, std::span<ElementMatrix> out) {
    check_elements(mesh, mu.size(), lambda_eff.size(), out.size());
    const auto nt = static_cast<std::int64_t>(mesh.num_triangles());
    // Exceptions cannot leave an OpenMP region; record and rethrow after the loop.
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < nt; ++t) {
        try {
            const auto k = static_cast<std::size_t>(t);
            out[k] = element_stiffness(mesh.geometry(k), mu[k], lambda_eff[k]);
        } catch (...) {
#pragma omp critical(lfem_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

void element_loads_serial(const Mesh& mesh, const VectorField& f,
                          const quadrature::TriangleRule& rule, std::span<ElementVector> out) {
    check_elements(mesh, out.size(), out.size(), out.size());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        out[t] = element_load(mesh.geometry(t), f, rule);
}

void element_loads_omp(const Mesh& mesh, const VectorField& f,
                       const quadrature::TriangleRule& rule, std::span<ElementVector> out) {
    check_elements(mesh, out.size(), out.size(), out.size());
    const auto nt = static_cast<std::int64_t>(mesh.num_triangles());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < nt; ++t) {
        try {
            const auto k = static_cast<std::size_t>(t);
            out[k] = element_load(mesh.geometry(k), f, rule);
        } catch (...) {
#pragma omp critical(lfem_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace kernels

void multiply(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
    if (exec == Exec::parallel)
        kernels::spmv_omp(a, x, y);
    else
        kernels::spmv_serial(a, x, y);
}

}  // namespace lfem

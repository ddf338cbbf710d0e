#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an OpenMP variant;
// the two must produce bit-identical output. Parallel variants only reorder independent
// work (rows, elements); no floating-point reduction crosses a thread boundary.

#include <array>
#include <span>

#include "lfem/mesh.hpp"
#include "lfem/problem.hpp"
#include "lfem/quadrature.hpp"
#include "lfem/sparse.hpp"

namespace lfem {

enum class Exec { serial, parallel };

using ElementMatrix = std::array<double, 36>;
using ElementVector = std::array<double, 6>;

namespace kernels {

/// y = A x
void spmv_serial(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y);
void spmv_omp(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y);

/// out[t] = stiffness of triangle t with coefficients mu[t], lambda_eff[t].
void element_matrices_serial(const Mesh& mesh, std::span<const double> mu,
                             std::span<const double> lambda_eff, std::span<ElementMatrix> out);
void element_matrices_omp(const Mesh& mesh, std::span<const double> mu,
                          std::span<const double> lambda_eff, std::span<ElementMatrix> out);

/// out[t] = load vector of triangle t for body force f. f must tolerate concurrent calls.
void element_loads_serial(const Mesh& mesh, const VectorField& f,
                          const quadrature::TriangleRule& rule, std::span<ElementVector> out);
void element_loads_omp(const Mesh& mesh, const VectorField& f,
                       const quadrature::TriangleRule& rule, std::span<ElementVector> out);

}  // namespace kernels

/// Dispatches to the serial or OpenMP spmv.
void multiply(const SparseSymMatrix& a, std::span<const double> x, std::span<double> y,
              Exec exec = Exec::serial);

}  // namespace lfem

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lfem {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

/// Square CSR matrix holding the full (both triangles) pattern of a symmetric matrix.
/// Column indices are sorted ascending within each row.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    /// Zero-valued matrix with the given structure. Throws std::invalid_argument if the
    /// pattern is malformed or not structurally symmetric.
    SparseSymMatrix(std::size_t n, std::vector<std::size_t> row_ptr, std::vector<std::size_t> cols);

    /// Duplicates are summed in input order; the pattern is symmetrized with explicit zeros.
    static SparseSymMatrix from_triplets(std::size_t n, std::span<const Triplet> triplets);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return cols_.size(); }
    [[nodiscard]] std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
    [[nodiscard]] std::span<const std::size_t> col_index() const noexcept { return cols_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return vals_; }
    [[nodiscard]] std::span<double> values() noexcept { return vals_; }

    /// Position of (i,j) in values(), or npos when absent.
    [[nodiscard]] std::size_t find(std::size_t i, std::size_t j) const noexcept;
    [[nodiscard]] double at(std::size_t i, std::size_t j) const noexcept;
    /// Requires (i,j) in the pattern.
    void add(std::size_t i, std::size_t j, double v);

    [[nodiscard]] std::vector<double> diagonal() const;
    /// max |a_ij - a_ji| over the pattern.
    [[nodiscard]] double max_asymmetry() const;
    [[nodiscard]] double max_abs() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const SparseSymMatrix&, const SparseSymMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<double> vals_;
};

/// Row-major dense square matrix, used by the test oracle and small diagnostics.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> data;

    explicit DenseMatrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

DenseMatrix to_dense(const SparseSymMatrix& a);

}  // namespace lfem

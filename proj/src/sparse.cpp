#include "lfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lfem {

SparseSymMatrix::SparseSymMatrix(std::size_t n, std::vector<std::size_t> row_ptr,
                                 std::vector<std::size_t> cols)
    : n_(n), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), vals_(cols_.size(), 0.0) {
    if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 || row_ptr_.back() != cols_.size())
        throw std::invalid_argument("CSR row pointer inconsistent with column count");
    for (std::size_t i = 0; i < n_; ++i) {
        if (row_ptr_[i] > row_ptr_[i + 1]) throw std::invalid_argument("CSR row pointer decreasing");
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            if (cols_[k] >= n_) throw std::invalid_argument("CSR column out of range");
            if (k > row_ptr_[i] && cols_[k] <= cols_[k - 1])
                throw std::invalid_argument("CSR columns not strictly ascending");
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            if (find(cols_[k], i) == npos) throw std::invalid_argument("pattern not symmetric");
}

SparseSymMatrix SparseSymMatrix::from_triplets(std::size_t n, std::span<const Triplet> triplets) {
    std::vector<std::vector<std::size_t>> rows(n);
    for (const auto& t : triplets) {
        if (t.row >= n || t.col >= n) throw std::invalid_argument("triplet index out of range");
        rows[t.row].push_back(t.col);
        rows[t.col].push_back(t.row);
    }
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n; ++i) {
        auto& r = rows[i];
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        cols.insert(cols.end(), r.begin(), r.end());
        row_ptr[i + 1] = cols.size();
    }
    SparseSymMatrix m(n, std::move(row_ptr), std::move(cols));
    for (const auto& t : triplets) m.add(t.row, t.col, t.value);
    return m;
}

std::size_t SparseSymMatrix::find(std::size_t i, std::size_t j) const noexcept {
    if (i >= n_) return npos;
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return npos;
    return static_cast<std::size_t>(it - cols_.begin());
}

double SparseSymMatrix::at(std::size_t i, std::size_t j) const noexcept {
    const auto k = find(i, j);
    return k == npos ? 0.0 : vals_[k];
}

void SparseSymMatrix::add(std::size_t i, std::size_t j, double v) {
    const auto k = find(i, j);
    if (k == npos) throw std::out_of_range("entry outside sparsity pattern");
    vals_[k] += v;
}

std::vector<double> SparseSymMatrix::diagonal() const {
    std::vector<double> d(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) d[i] = at(i, i);
    return d;
}

double SparseSymMatrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            m = std::max(m, std::abs(vals_[k] - at(cols_[k], i)));
    return m;
}

double SparseSymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : vals_) m = std::max(m, std::abs(v));
    return m;
}

DenseMatrix to_dense(const SparseSymMatrix& a) {
    DenseMatrix d(a.size());
    const auto rp = a.row_ptr();
    const auto ci = a.col_index();
    const auto v = a.values();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) d(i, ci[k]) = v[k];
    return d;
}

}  // namespace lfem

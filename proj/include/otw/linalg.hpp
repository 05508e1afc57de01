// Exact elimination: rank, kernel bases, linear solves, and unnormalized
// Gram-Schmidt.  Everything stays in the rational field; no square roots.
#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "otw/matrix.hpp"

namespace otw {

/// Row-reduce in place; returns the pivot column of each eliminated row.
inline std::vector<int> row_reduce(DenseMat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        const Rational inv = 1 / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(DenseMat a) { return static_cast<int>(row_reduce(a).size()); }

inline int rank(const SparseMat& a) { return rank(a.to_dense()); }

/// Basis of the right kernel; each free column contributes one vector with a
/// unit in that coordinate.  |result| = cols - rank(a).
inline std::vector<QVec> kernel_basis(DenseMat a) {
    const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
    const std::vector<int> pivots = row_reduce(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        QVec v(cols, Rational(0));
        v[fc] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<QVec> kernel_basis(const SparseMat& a) {
    if (a.rows == 0) {
        std::vector<QVec> basis;
        for (int c = 0; c < a.cols; ++c) {
            QVec v(a.cols, Rational(0));
            v[c] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    return kernel_basis(a.to_dense());
}

/// Solve a x = b exactly; nullopt if inconsistent, least-index solution if
/// underdetermined.
inline std::optional<QVec> solve(DenseMat a, const QVec& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    if (static_cast<int>(b.size()) != rows)
        throw std::invalid_argument("solve: shape mismatch");
    for (int r = 0; r < rows; ++r) a[r].push_back(b[r]);
    const std::vector<int> pivots = row_reduce(a);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    QVec x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

/// Classical Gram-Schmidt without normalization.  Dependent inputs are
/// dropped; returns each surviving vector with its exact squared norm.
inline std::vector<std::pair<QVec, Rational>> gram_schmidt(
    const std::vector<QVec>& vs) {
    std::vector<std::pair<QVec, Rational>> out;
    for (const auto& v : vs) {
        QVec u = v;
        for (const auto& [w, n2] : out) {
            const Rational c = dot(u, w) / n2;
            if (c == 0) continue;
            for (std::size_t k = 0; k < u.size(); ++k)
                if (w[k] != 0) u[k] -= c * w[k];
        }
        Rational n2 = dot(u, u);
        if (n2 != 0) out.emplace_back(std::move(u), std::move(n2));
    }
    return out;
}

/// Incremental independent-set tracker over Q^n, used for span closures.
class SpanBasis {
  public:
    explicit SpanBasis(int dim) : dim_(dim) {}

    int size() const { return static_cast<int>(rows_.size()); }

    /// Returns true when v was independent of the current span (and added).
    bool insert(QVec v) {
        if (static_cast<int>(v.size()) != dim_)
            throw std::invalid_argument("SpanBasis: length mismatch");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& f = v[pivot_[r]];
            if (f == 0) continue;
            const Rational c = f;  // rows are pivot-normalized
            for (int k = 0; k < dim_; ++k)
                if (rows_[r][k] != 0) v[k] -= c * rows_[r][k];
        }
        int p = -1;
        for (int k = 0; k < dim_; ++k)
            if (v[k] != 0) { p = k; break; }
        if (p < 0) return false;
        const Rational inv = 1 / v[p];
        for (int k = 0; k < dim_; ++k) v[k] *= inv;
        // keep the stored rows fully reduced against each other
        for (auto& row : rows_) {
            const Rational f = row[p];
            if (f == 0) continue;
            for (int k = 0; k < dim_; ++k)
                if (v[k] != 0) row[k] -= f * v[k];
        }
        rows_.push_back(std::move(v));
        pivot_.push_back(p);
        return true;
    }

  private:
    int dim_;
    std::vector<QVec> rows_;
    std::vector<int> pivot_;
};

}  // namespace otw

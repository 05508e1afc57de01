// Sparse and dense matrices over the rationals.  SparseMat keeps per-row
// sorted (col, value) entries with no explicit zeros; DenseMat is a plain
// row-major table used by the elimination routines.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "otw/rational.hpp"

namespace otw {

using QVec = std::vector<Rational>;

inline Rational dot(const QVec& u, const QVec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("dot: length mismatch");
    Rational s = 0;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] != 0 && v[k] != 0) s += u[k] * v[k];
    return s;
}

inline bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

using DenseMat = std::vector<QVec>;

struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, Rational>>> data;  // per row, sorted

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), data(r) {}

    static SparseMat identity(int n) {
        SparseMat a(n, n);
        for (int i = 0; i < n; ++i) a.data[i].emplace_back(i, 1);
        return a;
    }

    /// Append an entry during construction; call finalize() before use.
    void push(int r, int c, Rational v) {
        if (v != 0) data[r].emplace_back(c, std::move(v));
    }

    /// Sort rows, merge duplicate columns, drop zeros.
    void finalize() {
        for (auto& row : data) {
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<std::pair<int, Rational>> merged;
            for (auto& e : row) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(std::move(e));
            }
            std::erase_if(merged, [](const auto& e) { return e.second == 0; });
            row = std::move(merged);
        }
    }

    Rational entry(int r, int c) const {
        const auto& row = data[r];
        auto it = std::lower_bound(
            row.begin(), row.end(), c,
            [](const auto& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return 0;
    }

    long long nnz() const {
        long long s = 0;
        for (const auto& row : data) s += static_cast<long long>(row.size());
        return s;
    }

    bool is_zero() const { return nnz() == 0; }

    bool operator==(const SparseMat& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }

    SparseMat transpose() const {
        SparseMat t(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (const auto& [c, v] : data[r]) t.data[c].emplace_back(r, v);
        // column-major traversal already yields sorted rows
        return t;
    }

    QVec apply(const QVec& v) const {
        if (static_cast<int>(v.size()) != cols)
            throw std::invalid_argument("apply: shape mismatch");
        QVec out(rows, Rational(0));
        for (int r = 0; r < rows; ++r)
            for (const auto& [c, x] : data[r])
                if (v[c] != 0) out[r] += x * v[c];
        return out;
    }

    DenseMat to_dense() const {
        DenseMat d(rows, QVec(cols, Rational(0)));
        for (int r = 0; r < rows; ++r)
            for (const auto& [c, v] : data[r]) d[r][c] = v;
        return d;
    }
};

inline SparseMat operator*(const SparseMat& a, const SparseMat& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: " + std::to_string(a.rows) + "x" +
                                    std::to_string(a.cols) + " times " +
                                    std::to_string(b.rows) + "x" +
                                    std::to_string(b.cols));
    SparseMat c(a.rows, b.cols);
    QVec acc(b.cols, Rational(0));
    std::vector<int> touched;
    for (int r = 0; r < a.rows; ++r) {
        touched.clear();
        for (const auto& [k, av] : a.data[r])
            for (const auto& [j, bv] : b.data[k]) {
                if (acc[j] == 0) touched.push_back(j);
                acc[j] += av * bv;
            }
        std::sort(touched.begin(), touched.end());
        for (int j : touched) {
            if (acc[j] != 0) c.data[r].emplace_back(j, acc[j]);
            acc[j] = 0;
        }
    }
    return c;
}

inline SparseMat operator+(const SparseMat& a, const SparseMat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("add: shape mismatch");
    SparseMat c(a.rows, a.cols);
    for (int r = 0; r < a.rows; ++r) {
        auto& out = c.data[r];
        const auto& ra = a.data[r];
        const auto& rb = b.data[r];
        std::size_t i = 0, j = 0;
        while (i < ra.size() || j < rb.size()) {
            if (j == rb.size() || (i < ra.size() && ra[i].first < rb[j].first))
                out.push_back(ra[i++]);
            else if (i == ra.size() || rb[j].first < ra[i].first)
                out.push_back(rb[j++]);
            else {
                Rational s = ra[i].second + rb[j].second;
                if (s != 0) out.emplace_back(ra[i].first, std::move(s));
                ++i, ++j;
            }
        }
    }
    return c;
}

inline SparseMat operator*(const Rational& s, const SparseMat& a) {
    SparseMat c(a.rows, a.cols);
    if (s == 0) return c;
    c.data = a.data;
    for (auto& row : c.data)
        for (auto& e : row) e.second *= s;
    return c;
}

inline SparseMat operator-(const SparseMat& a, const SparseMat& b) {
    return a + (Rational(-1) * b);
}

/// Hadamard (entrywise) product.
inline SparseMat entrywise_product(const SparseMat& a, const SparseMat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("entrywise_product: shape mismatch");
    SparseMat c(a.rows, a.cols);
    for (int r = 0; r < a.rows; ++r) {
        const auto& ra = a.data[r];
        const auto& rb = b.data[r];
        std::size_t i = 0, j = 0;
        while (i < ra.size() && j < rb.size()) {
            if (ra[i].first < rb[j].first)
                ++i;
            else if (rb[j].first < ra[i].first)
                ++j;
            else {
                Rational v = ra[i].second * rb[j].second;
                if (v != 0) c.data[r].emplace_back(ra[i].first, std::move(v));
                ++i, ++j;
            }
        }
    }
    return c;
}

}  // namespace otw

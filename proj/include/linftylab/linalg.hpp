#pragma once

// Exact dense linear algebra over the Gaussian rationals. Eigen provides the
// matrix types and expressions; eliminations are hand-rolled so pivoting is
// deterministic (first nonzero entry in basis order) and division stays exact.

#include "linftylab/scalar.hpp"

#include <optional>
#include <vector>

namespace linftylab {

using MatQ = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline MatQ zeros(Eigen::Index rows, Eigen::Index cols) {
    MatQ m(rows, cols);
    m.setConstant(Scalar(0));
    return m;
}

inline MatQ identity(Eigen::Index n) {
    MatQ m = zeros(n, n);
    for (Eigen::Index k = 0; k < n; ++k) m(k, k) = Scalar(1);
    return m;
}

inline bool is_zero(const MatQ& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero()) return false;
    return true;
}

inline MatQ conj_transpose(const MatQ& m) {
    MatQ r(m.cols(), m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(j, i) = m(i, j).conj();
    return r;
}

struct Rref {
    MatQ reduced;
    std::vector<Eigen::Index> pivot_cols;
};

inline Rref rref(MatQ m) {
    Rref out;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index piv = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (!m(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row) m.row(piv).swap(m.row(row));
        Scalar inv = Scalar(1) / m(row, col);
        for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            Scalar factor = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

inline Eigen::Index rank(const MatQ& m) { return static_cast<Eigen::Index>(rref(m).pivot_cols.size()); }

// Kernel basis in the standard parametrization: one column per free column,
// with a 1 in the free coordinate. Deterministic in basis order.
inline MatQ kernel_basis(const MatQ& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Eigen::Index> free_cols;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    MatQ ker = zeros(m.cols(), static_cast<Eigen::Index>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        Eigen::Index fc = free_cols[k];
        ker(fc, static_cast<Eigen::Index>(k)) = Scalar(1);
        for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
            ker(r.pivot_cols[p], static_cast<Eigen::Index>(k)) = -r.reduced(static_cast<Eigen::Index>(p), fc);
    }
    return ker;
}

// Indices of the columns of m that form a basis of the image.
inline std::vector<Eigen::Index> image_pivot_columns(const MatQ& m) { return rref(m).pivot_cols; }

// One exact solution of m x = rhs with free coordinates set to zero.
inline std::optional<VecQ> solve(const MatQ& m, const VecQ& rhs) {
    MatQ aug(m.rows(), m.cols() + 1);
    aug.block(0, 0, m.rows(), m.cols()) = m;
    aug.col(m.cols()) = rhs;
    Rref r = rref(std::move(aug));
    for (auto c : r.pivot_cols)
        if (c == m.cols()) return std::nullopt; // inconsistent system
    VecQ x = VecQ::Constant(m.cols(), Scalar(0));
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
        x(r.pivot_cols[p]) = r.reduced(static_cast<Eigen::Index>(p), m.cols());
    return x;
}

inline std::optional<MatQ> inverse(const MatQ& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Eigen::Index n = m.rows();
    MatQ aug(n, 2 * n);
    aug.block(0, 0, n, n) = m;
    aug.block(0, n, n, n) = identity(n);
    Rref r = rref(std::move(aug));
    if (static_cast<Eigen::Index>(r.pivot_cols.size()) != n || (n > 0 && r.pivot_cols.back() >= n))
        return std::nullopt;
    return MatQ(r.reduced.block(0, n, n, n));
}

inline bool is_hermitian(const MatQ& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != m(j, i).conj()) return false;
    return true;
}

// Exact positive-definiteness test for a Hermitian matrix via LDL^H pivots.
inline bool is_positive_definite(MatQ m) {
    if (!is_hermitian(m)) return false;
    Eigen::Index n = m.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        Scalar d = m(k, k);
        if (d.im() != 0 || !(Rational(0) < d.re())) return false;
        for (Eigen::Index i = k + 1; i < n; ++i) {
            Scalar f = m(i, k) / d;
            for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
        for (Eigen::Index j = k + 1; j < n; ++j) m(k, j) = Scalar(0);
    }
    return true;
}

} // namespace linftylab

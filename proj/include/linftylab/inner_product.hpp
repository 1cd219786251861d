#pragma once

// Hermitian inner products, block-orthogonal across (bi)degrees, and exact
// adjoints. Convention: <x, y> = x^H G y, conjugate-linear in the first slot.

#include "linftylab/graded_map.hpp"

namespace linftylab {

class InnerProduct {
public:
    InnerProduct() = default;
    InnerProduct(GradedSpace space, MatQ gram) : space_(std::move(space)), gram_(std::move(gram)) {
        if (gram_.rows() != space_.dim() || gram_.cols() != space_.dim())
            throw std::invalid_argument("InnerProduct: Gram size mismatch");
        if (!is_hermitian(gram_)) throw std::invalid_argument("InnerProduct: Gram matrix is not Hermitian");
        if (!is_positive_definite(gram_))
            throw std::invalid_argument("InnerProduct: Gram matrix is not positive definite");
    }

    static InnerProduct standard(const GradedSpace& space) { return InnerProduct(space, identity(space.dim())); }

    const GradedSpace& space() const { return space_; }
    const MatQ& gram() const { return gram_; }

    bool is_block_orthogonal() const {
        for (int i = 0; i < space_.dim(); ++i)
            for (int j = 0; j < space_.dim(); ++j) {
                if (gram_(i, j).is_zero()) continue;
                if (space_.degree(i) != space_.degree(j)) return false;
                if (space_.bidegree(i) != space_.bidegree(j)) return false;
            }
        return true;
    }

    Scalar pair(const VecQ& x, const VecQ& y) const {
        Scalar s(0);
        for (Eigen::Index i = 0; i < gram_.rows(); ++i)
            for (Eigen::Index j = 0; j < gram_.cols(); ++j) s += x(i).conj() * gram_(i, j) * y(j);
        return s;
    }

    Scalar pair_basis(int i, int j) const { return gram_(i, j); }

private:
    GradedSpace space_;
    MatQ gram_;
};

namespace detail {
inline std::optional<std::array<int, 2>> negate_bidegree(const std::optional<std::array<int, 2>>& b) {
    if (!b) return std::nullopt;
    return std::array<int, 2>{-b->at(0), -b->at(1)};
}
} // namespace detail

// <f(u), v> = <u, adjoint(f)(v)>; in matrices  f* = G^{-1} f^H G.
inline GradedLinearMap adjoint(const GradedLinearMap& f, const InnerProduct& ip) {
    if (!(f.source() == ip.space() && f.target() == ip.space()))
        throw std::invalid_argument("adjoint: map must be an endomorphism of the inner-product space");
    MatQ g = ip.gram();
    MatQ ginv = *inverse(g);
    MatQ astar = ginv * conj_transpose(f.to_matrix()) * g;
    return GradedLinearMap::from_matrix(ip.space(), ip.space(), -f.degree(), astar,
                                        detail::negate_bidegree(f.bidegree()));
}

} // namespace linftylab

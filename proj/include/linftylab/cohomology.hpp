#pragma once

// Cohomology of a complex (V, d) with deg d = +1. Representatives are chosen
// by reduced row echelon pivots in basis order, so classes are reproducible.

#include "linftylab/graded_map.hpp"

namespace linftylab {

struct Cohomology {
    GradedSpace total;      // the underlying space V
    GradedSpace classes;    // H, basis "h{degree}_{k}"
    GradedLinearMap rep;    // H -> V, degree 0, picks cocycle representatives
    GradedLinearMap proj;   // V -> H, degree 0, kills im(d) and the chosen complement

    int dim_in_degree(int d) const {
        int n = 0;
        for (int k = 0; k < classes.dim(); ++k)
            if (classes.degree(k) == d) ++n;
        return n;
    }
};

// Throws when d does not square to zero; the witness is the first basis
// element whose double image is nonzero.
inline Cohomology cohomology(const GradedSpace& v, const GradedLinearMap& d) {
    if (d.degree() != 1) throw std::invalid_argument("cohomology: differential must have degree 1");
    if (!(d.source() == v && d.target() == v)) throw std::invalid_argument("cohomology: space mismatch");
    for (int k = 0; k < v.dim(); ++k)
        if (!cleaned(d.apply(d.column(k))).empty())
            throw std::invalid_argument("cohomology: d*d != 0, witness basis element '" + v.name(k) + "'");

    MatQ dm = d.to_matrix();
    std::vector<BasisElement> h_basis;
    // columns of rep / rows of proj, built degree by degree
    std::vector<std::pair<int, VecQ>> reps;          // (degree-local) representative vectors in V coords
    std::vector<std::pair<std::vector<int>, MatQ>> proj_blocks; // (degree indices, class-coordinate rows)

    for (int deg : v.degrees_present()) {
        std::vector<int> here = v.indices_of_degree(deg);
        std::vector<int> above = v.indices_of_degree(deg + 1);
        std::vector<int> below = v.indices_of_degree(deg - 1);
        const int n = static_cast<int>(here.size());

        MatQ d_here = zeros(static_cast<Eigen::Index>(above.size()), n);
        for (int j = 0; j < n; ++j) {
            SpaceVector col = d.column(here[static_cast<std::size_t>(j)]);
            for (std::size_t i = 0; i < above.size(); ++i) {
                auto it = col.find(above[i]);
                if (it != col.end()) d_here(static_cast<Eigen::Index>(i), j) = it->second;
            }
        }
        MatQ d_below = zeros(n, static_cast<Eigen::Index>(below.size()));
        for (std::size_t j = 0; j < below.size(); ++j) {
            SpaceVector col = d.column(below[j]);
            for (int i = 0; i < n; ++i) {
                auto it = col.find(here[static_cast<std::size_t>(i)]);
                if (it != col.end()) d_below(i, static_cast<Eigen::Index>(j)) = it->second;
            }
        }

        MatQ ker = kernel_basis(d_here);
        std::vector<Eigen::Index> im_cols = image_pivot_columns(d_below);
        MatQ boundary = zeros(n, static_cast<Eigen::Index>(im_cols.size()));
        for (std::size_t j = 0; j < im_cols.size(); ++j) boundary.col(static_cast<Eigen::Index>(j)) = d_below.col(im_cols[j]);

        // pick the kernel columns independent of the boundary: pivots of [B | K]
        MatQ bk(n, boundary.cols() + ker.cols());
        bk.block(0, 0, n, boundary.cols()) = boundary;
        bk.block(0, boundary.cols(), n, ker.cols()) = ker;
        std::vector<Eigen::Index> chosen;
        for (Eigen::Index c : image_pivot_columns(bk))
            if (c >= boundary.cols()) chosen.push_back(c - boundary.cols());

        // complete [B | R] to a basis of the degree block with standard vectors
        MatQ br(n, boundary.cols() + static_cast<Eigen::Index>(chosen.size()));
        br.block(0, 0, n, boundary.cols()) = boundary;
        for (std::size_t j = 0; j < chosen.size(); ++j)
            br.col(boundary.cols() + static_cast<Eigen::Index>(j)) = ker.col(chosen[j]);
        MatQ full(n, br.cols() + n);
        full.block(0, 0, n, br.cols()) = br;
        full.block(0, br.cols(), n, n) = identity(n);
        std::vector<Eigen::Index> basis_cols = image_pivot_columns(full);
        MatQ change = zeros(n, n);
        for (std::size_t j = 0; j < basis_cols.size(); ++j) change.col(static_cast<Eigen::Index>(j)) = full.col(basis_cols[j]);
        MatQ coords = *inverse(change); // coordinates in the (B, R, completion) basis

        // class coordinates are the R-rows of coords
        MatQ class_rows = zeros(static_cast<Eigen::Index>(chosen.size()), n);
        for (std::size_t j = 0; j < chosen.size(); ++j)
            class_rows.row(static_cast<Eigen::Index>(j)) = coords.row(boundary.cols() + static_cast<Eigen::Index>(j));

        for (std::size_t j = 0; j < chosen.size(); ++j) {
            BasisElement e;
            e.name = "h" + std::to_string(deg) + "_" + std::to_string(j);
            e.degree = deg;
            h_basis.push_back(e);
            VecQ r = VecQ::Constant(v.dim(), Scalar(0));
            for (int i = 0; i < n; ++i) r(here[static_cast<std::size_t>(i)]) = ker(i, chosen[j]);
            reps.emplace_back(deg, std::move(r));
        }
        proj_blocks.emplace_back(here, std::move(class_rows));
    }

    Cohomology out;
    out.total = v;
    out.classes = GradedSpace(std::move(h_basis));
    out.rep = GradedLinearMap(out.classes, v, 0);
    for (std::size_t k = 0; k < reps.size(); ++k)
        for (int i = 0; i < v.dim(); ++i)
            if (!reps[k].second(i).is_zero()) out.rep.set(static_cast<int>(k), i, reps[k].second(i));

    out.proj = GradedLinearMap(v, out.classes, 0);
    int h_offset = 0;
    for (const auto& [here, rows] : proj_blocks) {
        for (Eigen::Index r = 0; r < rows.rows(); ++r)
            for (std::size_t j = 0; j < here.size(); ++j)
                if (!rows(r, static_cast<Eigen::Index>(j)).is_zero())
                    out.proj.set(here[j], h_offset + static_cast<int>(r), rows(r, static_cast<Eigen::Index>(j)));
        h_offset += static_cast<int>(rows.rows());
    }
    return out;
}

} // namespace linftylab

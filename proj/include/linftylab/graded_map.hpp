#pragma once

// Graded linear maps with sparse column storage (keyed by source basis
// element, zero columns omitted) and a dense Eigen bridge for composition.

#include "linftylab/graded_space.hpp"
#include "linftylab/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace linftylab {

class GradedLinearMap {
public:
    GradedLinearMap() = default;
    GradedLinearMap(GradedSpace source, GradedSpace target, int degree,
                    std::optional<std::array<int, 2>> bidegree = std::nullopt)
        : source_(std::move(source)), target_(std::move(target)), degree_(degree), bidegree_(bidegree) {
        if (bidegree_ && bidegree_->at(0) + bidegree_->at(1) != degree_)
            throw std::invalid_argument("GradedLinearMap: bidegree does not sum to degree");
    }

    static GradedLinearMap identity_on(const GradedSpace& v) {
        GradedLinearMap f(v, v, 0, v.has_bidegrees() ? std::optional<std::array<int, 2>>({0, 0}) : std::nullopt);
        for (int k = 0; k < v.dim(); ++k) f.set(k, k, Scalar(1));
        return f;
    }

    static GradedLinearMap from_matrix(const GradedSpace& src, const GradedSpace& tgt, int degree, const MatQ& m,
                                       std::optional<std::array<int, 2>> bidegree = std::nullopt) {
        GradedLinearMap f(src, tgt, degree, bidegree);
        for (int j = 0; j < src.dim(); ++j)
            for (int i = 0; i < tgt.dim(); ++i)
                if (!m(i, j).is_zero()) f.set(j, i, m(i, j));
        return f;
    }

    const GradedSpace& source() const { return source_; }
    const GradedSpace& target() const { return target_; }
    int degree() const { return degree_; }
    const std::optional<std::array<int, 2>>& bidegree() const { return bidegree_; }
    const std::map<int, SpaceVector>& columns() const { return cols_; }

    bool is_zero() const { return cols_.empty(); }
    bool is_endomorphism() const { return source_ == target_; }

    void set(int from, int to, const Scalar& c) {
        if (c.is_zero()) {
            auto it = cols_.find(from);
            if (it != cols_.end()) {
                it->second.erase(to);
                if (it->second.empty()) cols_.erase(it);
            }
            return;
        }
        cols_[from][to] = c;
    }

    Scalar entry(int from, int to) const {
        auto it = cols_.find(from);
        if (it == cols_.end()) return Scalar(0);
        auto jt = it->second.find(to);
        return jt == it->second.end() ? Scalar(0) : jt->second;
    }

    SpaceVector column(int from) const {
        auto it = cols_.find(from);
        return it == cols_.end() ? SpaceVector{} : it->second;
    }

    SpaceVector apply(const SpaceVector& v) const {
        SpaceVector out;
        for (const auto& [k, c] : v) out = add(out, scale(c, column(k)));
        return out;
    }

    MatQ to_matrix() const {
        MatQ m = zeros(target_.dim(), source_.dim());
        for (const auto& [j, col] : cols_)
            for (const auto& [i, c] : col) m(i, j) = c;
        return m;
    }

    // Every stored entry must respect the declared (bi)degree shift.
    void check_homogeneous() const {
        for (const auto& [j, col] : cols_)
            for (const auto& [i, c] : col) {
                (void)c;
                if (target_.degree(i) != source_.degree(j) + degree_)
                    throw std::invalid_argument("GradedLinearMap: entry " + source_.name(j) + " -> " +
                                                target_.name(i) + " breaks the declared degree");
                if (bidegree_) {
                    const auto& bs = source_.bidegree(j);
                    const auto& bt = target_.bidegree(i);
                    if (!bs || !bt)
                        throw std::invalid_argument("GradedLinearMap: bidegree declared but basis lacks bidegrees");
                    if (bt->at(0) != bs->at(0) + bidegree_->at(0) || bt->at(1) != bs->at(1) + bidegree_->at(1))
                        throw std::invalid_argument("GradedLinearMap: entry " + source_.name(j) + " -> " +
                                                    target_.name(i) + " breaks the declared bidegree");
                }
            }
    }

    friend bool operator==(const GradedLinearMap& a, const GradedLinearMap& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.degree_ == b.degree_ && a.cols_ == b.cols_;
    }

private:
    GradedSpace source_, target_;
    int degree_ = 0;
    std::optional<std::array<int, 2>> bidegree_;
    std::map<int, SpaceVector> cols_;
};

namespace detail {
inline std::optional<std::array<int, 2>> add_bidegrees(const std::optional<std::array<int, 2>>& a,
                                                       const std::optional<std::array<int, 2>>& b) {
    if (a && b) return std::array<int, 2>{a->at(0) + b->at(0), a->at(1) + b->at(1)};
    return std::nullopt;
}
} // namespace detail

// f after g (f of g), degrees add.
inline GradedLinearMap compose(const GradedLinearMap& f, const GradedLinearMap& g) {
    if (g.target() != f.source()) throw std::invalid_argument("compose: space mismatch");
    GradedLinearMap r(g.source(), f.target(), f.degree() + g.degree(),
                      detail::add_bidegrees(f.bidegree(), g.bidegree()));
    for (const auto& [j, col] : g.columns()) {
        SpaceVector v = f.apply(col);
        for (const auto& [i, c] : v) r.set(j, i, c);
    }
    return r;
}

inline GradedLinearMap add(const GradedLinearMap& f, const GradedLinearMap& g) {
    if (f.source() != g.source() || f.target() != g.target() || f.degree() != g.degree())
        throw std::invalid_argument("add: map shape mismatch");
    GradedLinearMap r(f.source(), f.target(), f.degree(),
                      f.bidegree() == g.bidegree() ? f.bidegree() : std::nullopt);
    for (const auto& [j, col] : f.columns())
        for (const auto& [i, c] : col) r.set(j, i, c);
    for (const auto& [j, col] : g.columns())
        for (const auto& [i, c] : col) r.set(j, i, r.entry(j, i) + c);
    return r;
}

inline GradedLinearMap scale(const Scalar& c, const GradedLinearMap& f) {
    GradedLinearMap r(f.source(), f.target(), f.degree(), f.bidegree());
    if (c.is_zero()) return r;
    for (const auto& [j, col] : f.columns())
        for (const auto& [i, x] : col) r.set(j, i, c * x);
    return r;
}

inline GradedLinearMap subtract(const GradedLinearMap& f, const GradedLinearMap& g) {
    return add(f, scale(Scalar(-1), g));
}

// f o g - (-1)^{|f||g|} g o f with |.| the total map degree.
inline GradedLinearMap graded_commutator(const GradedLinearMap& f, const GradedLinearMap& g) {
    if (!(f.source() == f.target() && g.source() == g.target() && f.source() == g.source()))
        throw std::invalid_argument("graded_commutator: expects endomorphisms of one space");
    long long s = static_cast<long long>(f.degree()) * g.degree();
    return add(compose(f, g), scale(-sign_pow(s), compose(g, f)));
}

// First basis element of the source on which the two maps differ; for reports.
inline std::optional<std::string> first_difference_witness(const GradedLinearMap& f, const GradedLinearMap& g) {
    for (int j = 0; j < f.source().dim(); ++j)
        if (cleaned(f.column(j)) != cleaned(g.column(j))) return f.source().name(j);
    return std::nullopt;
}

} // namespace linftylab

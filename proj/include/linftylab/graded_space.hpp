#pragma once

// Finite-dimensional graded vector spaces with a named, ordered basis.
// Bidegrees are optional metadata; when present and the space is unshifted,
// total degree must equal p + q.

#include "linftylab/scalar.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace linftylab {

struct BasisElement {
    std::string name;
    int degree = 0;
    std::optional<std::array<int, 2>> bidegree;

    friend bool operator==(const BasisElement& a, const BasisElement& b) {
        return a.name == b.name && a.degree == b.degree && a.bidegree == b.bidegree;
    }
};

class GradedSpace {
public:
    GradedSpace() = default;
    explicit GradedSpace(std::vector<BasisElement> basis, int shift = 0)
        : basis_(std::move(basis)), shift_(shift) {
        std::set<std::string> names;
        for (const auto& b : basis_) {
            if (!names.insert(b.name).second)
                throw std::invalid_argument("GradedSpace: duplicate basis name '" + b.name + "'");
            if (b.bidegree && b.bidegree->at(0) + b.bidegree->at(1) != b.degree + shift_)
                throw std::invalid_argument("GradedSpace: bidegree of '" + b.name + "' does not sum to its degree");
        }
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    int shift_amount() const { return shift_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(int k) const { return basis_.at(static_cast<std::size_t>(k)); }
    const std::string& name(int k) const { return element(k).name; }
    int degree(int k) const { return element(k).degree; }
    const std::optional<std::array<int, 2>>& bidegree(int k) const { return element(k).bidegree; }

    bool has_bidegrees() const {
        for (const auto& b : basis_)
            if (!b.bidegree) return false;
        return !basis_.empty();
    }

    int index_of(const std::string& name) const {
        for (int k = 0; k < dim(); ++k)
            if (basis_[static_cast<std::size_t>(k)].name == name) return k;
        throw std::out_of_range("GradedSpace: no basis element named '" + name + "'");
    }

    std::vector<int> indices_of_degree(int d) const {
        std::vector<int> out;
        for (int k = 0; k < dim(); ++k)
            if (degree(k) == d) out.push_back(k);
        return out;
    }

    std::vector<int> degrees_present() const {
        std::set<int> seen;
        for (const auto& b : basis_) seen.insert(b.degree);
        return {seen.begin(), seen.end()};
    }

    std::vector<int> degree_vector() const {
        std::vector<int> out;
        out.reserve(basis_.size());
        for (const auto& b : basis_) out.push_back(b.degree);
        return out;
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
        return a.shift_ == b.shift_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const GradedSpace& a, const GradedSpace& b) { return !(a == b); }

private:
    std::vector<BasisElement> basis_;
    int shift_ = 0; // the n of V[n]; deg(a, V[n]) = deg(a, V) - n
};

// V[n]: same names, every degree lowered by n. Shifts compose additively.
inline GradedSpace shift(const GradedSpace& v, int n) {
    std::vector<BasisElement> basis = v.basis();
    for (auto& b : basis) b.degree -= n;
    return GradedSpace(std::move(basis), v.shift_amount() + n);
}

// Sparse vector in a graded space, keyed by basis index.
using SpaceVector = std::map<int, Scalar>;

inline SpaceVector cleaned(SpaceVector v) {
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
    return v;
}

inline SpaceVector add(const SpaceVector& a, const SpaceVector& b) {
    SpaceVector r = a;
    for (const auto& [k, c] : b) {
        auto [it, fresh] = r.emplace(k, c);
        if (!fresh) it->second += c;
    }
    return cleaned(std::move(r));
}

inline SpaceVector scale(const Scalar& c, const SpaceVector& v) {
    if (c.is_zero()) return {};
    SpaceVector r;
    for (const auto& [k, x] : v) r.emplace(k, c * x);
    return r;
}

} // namespace linftylab

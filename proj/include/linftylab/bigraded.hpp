#pragma once

// Bigraded graded-commutative algebras with sparse structure constants, and
// the Leibniz test that recognizes derivations of them. Products are stored
// on pairs (a, b) with a <= b; the other half comes from graded commutativity
// in the total degree.

#include "linftylab/dgla.hpp"

namespace linftylab {

class BigradedAlgebra {
public:
    BigradedAlgebra() = default;
    explicit BigradedAlgebra(GradedSpace space, std::optional<int> unit = std::nullopt)
        : space_(std::move(space)), unit_(unit) {
        for (int k = 0; k < space_.dim(); ++k)
            if (!space_.bidegree(k))
                throw std::invalid_argument("BigradedAlgebra: basis element '" + space_.name(k) +
                                            "' lacks a bidegree");
        if (unit_ && space_.bidegree(*unit_) != std::array<int, 2>{0, 0})
            throw std::invalid_argument("BigradedAlgebra: unit must sit in bidegree (0, 0)");
    }

    const GradedSpace& space() const { return space_; }
    const std::optional<int>& unit() const { return unit_; }
    const std::map<std::pair<int, int>, SpaceVector>& stored_products() const { return products_; }

    void set_product(int a, int b, SpaceVector value) {
        if (a > b) throw std::invalid_argument("BigradedAlgebra::set_product: store only pairs with a <= b");
        value = cleaned(std::move(value));
        if (value.empty())
            products_.erase({a, b});
        else
            products_[{a, b}] = std::move(value);
    }

    SpaceVector product_basis(int a, int b) const {
        if (a <= b) {
            auto it = products_.find({a, b});
            return it == products_.end() ? SpaceVector{} : it->second;
        }
        long long s = static_cast<long long>(space_.degree(a)) * space_.degree(b);
        return scale(sign_pow(s), product_basis(b, a));
    }

    SpaceVector product(const SpaceVector& x, const SpaceVector& y) const {
        SpaceVector out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) out = add(out, scale(ci * cj, product_basis(i, j)));
        return out;
    }

private:
    GradedSpace space_;
    std::optional<int> unit_;
    std::map<std::pair<int, int>, SpaceVector> products_;
};

inline ValidationReport validate_algebra(const BigradedAlgebra& alg) {
    ValidationReport rep;
    const GradedSpace& v = alg.space();

    CheckResult bid{"product_respects_bidegrees", true, ""};
    for (const auto& [pair, value] : alg.stored_products()) {
        auto ba = v.bidegree(pair.first);
        auto bb = v.bidegree(pair.second);
        for (const auto& [t, c] : value) {
            (void)c;
            auto bt = v.bidegree(t);
            if (bt->at(0) != ba->at(0) + bb->at(0) || bt->at(1) != ba->at(1) + bb->at(1)) {
                bid.pass = false;
                bid.witness = "(" + v.name(pair.first) + ", " + v.name(pair.second) + ")";
            }
        }
    }
    rep.checks.push_back(bid);

    CheckResult comm{"graded_commutativity", true, ""};
    for (int a = 0; a < v.dim() && comm.pass; ++a) {
        // storage enforces the off-diagonal law; odd diagonals must vanish
        if (v.degree(a) % 2 != 0 && !alg.product_basis(a, a).empty()) {
            comm.pass = false;
            comm.witness = "(" + v.name(a) + ", " + v.name(a) + ")";
        }
    }
    rep.checks.push_back(comm);

    CheckResult assoc{"associativity", true, ""};
    for (int a = 0; a < v.dim() && assoc.pass; ++a)
        for (int b = 0; b < v.dim() && assoc.pass; ++b)
            for (int c = 0; c < v.dim() && assoc.pass; ++c) {
                SpaceVector lhs = alg.product(alg.product_basis(a, b), {{c, Scalar(1)}});
                SpaceVector rhs = alg.product({{a, Scalar(1)}}, alg.product_basis(b, c));
                if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
                    assoc.pass = false;
                    assoc.witness = "(" + v.name(a) + ", " + v.name(b) + ", " + v.name(c) + ")";
                }
            }
    rep.checks.push_back(assoc);

    if (alg.unit()) {
        CheckResult unit{"unit", true, ""};
        for (int a = 0; a < v.dim() && unit.pass; ++a) {
            SpaceVector ua = alg.product_basis(*alg.unit(), a);
            if (ua != SpaceVector{{a, Scalar(1)}}) {
                unit.pass = false;
                unit.witness = v.name(a);
            }
        }
        rep.checks.push_back(unit);
    }
    return rep;
}

// Graded Leibniz rule of a map against the product, on all basis pairs.
inline CheckResult check_derivation(const GradedLinearMap& f, const BigradedAlgebra& alg,
                                    const std::string& label) {
    CheckResult r{label, true, ""};
    const GradedSpace& v = alg.space();
    for (int a = 0; a < v.dim() && r.pass; ++a)
        for (int b = 0; b < v.dim() && r.pass; ++b) {
            SpaceVector lhs = f.apply(alg.product_basis(a, b));
            SpaceVector rhs = alg.product(f.column(a), {{b, Scalar(1)}});
            long long s = static_cast<long long>(f.degree()) * v.degree(a);
            rhs = add(rhs, scale(sign_pow(s), alg.product({{a, Scalar(1)}}, f.column(b))));
            if (add(lhs, scale(Scalar(-1), rhs)) != SpaceVector{}) {
                r.pass = false;
                r.witness = "(" + v.name(a) + ", " + v.name(b) + ")";
            }
        }
    return r;
}

} // namespace linftylab

#pragma once

// Hat assignments: a graded space L with suspended data (d, Q) and, for each
// basis element a of L, a derivation a^ of the form algebra with bidegree
// (-1, deg(a, L) + 1). Validation checks the two commutator identities that
// tie (d, Q) to (delbar, del), the mutual commutativity of the hats, and the
// vanishing on bidegree (0, *).

#include "linftylab/kahler.hpp"

namespace linftylab {

struct HatAssignment {
    GradedSpace l;                                  // the suspended space L
    GradedLinearMap d;                              // degree 1 on L
    std::map<std::pair<int, int>, SpaceVector> q;   // canonical pairs i <= j, degree 1
    std::vector<GradedLinearMap> hats;              // one endomorphism of the algebra per L basis element

    SuspendedData suspended() const { return SuspendedData{l, d, q}; }

    SpaceVector q_basis(int i, int j) const { return suspended().q_basis(i, j); }

    // hat of a linear combination in L
    GradedLinearMap hat_of(const SpaceVector& x, const GradedSpace& algebra_space) const {
        GradedLinearMap out(algebra_space, algebra_space, 0);
        bool first = true;
        for (const auto& [k, c] : x) {
            GradedLinearMap term = scale(c, hats.at(static_cast<std::size_t>(k)));
            out = first ? term : add(out, term);
            first = false;
        }
        return out;
    }
};

inline ValidationReport validate_hat(const HatAssignment& ha, const OperatorPackage& pkg) {
    ValidationReport rep;
    const GradedSpace& a_space = pkg.algebra.space();
    const int n = ha.l.dim();
    if (static_cast<int>(ha.hats.size()) != n)
        throw std::invalid_argument("validate_hat: one hat per L basis element required");

    CheckResult bid{"hat_bidegree", true, ""};
    for (int k = 0; k < n && bid.pass; ++k) {
        const GradedLinearMap& hat = ha.hats[static_cast<std::size_t>(k)];
        int abar = ha.l.degree(k);
        for (const auto& [j, col] : hat.columns())
            for (const auto& [i, c] : col) {
                (void)c;
                auto bs = a_space.bidegree(j);
                auto bt = a_space.bidegree(i);
                if (bt->at(0) != bs->at(0) - 1 || bt->at(1) != bs->at(1) + abar + 1) {
                    bid.pass = false;
                    bid.witness = ha.l.name(k) + ": " + a_space.name(j) + " -> " + a_space.name(i);
                }
            }
    }
    rep.checks.push_back(bid);

    CheckResult van{"hat_kills_antiholomorphic", true, ""};
    for (int k = 0; k < n && van.pass; ++k)
        for (int j = 0; j < a_space.dim() && van.pass; ++j) {
            if (a_space.bidegree(j)->at(0) != 0) continue;
            if (!ha.hats[static_cast<std::size_t>(k)].column(j).empty()) {
                van.pass = false;
                van.witness = ha.l.name(k) + " on " + a_space.name(j);
            }
        }
    rep.checks.push_back(van);

    CheckResult leib{"hat_derivation", true, ""};
    for (int k = 0; k < n && leib.pass; ++k) {
        // graded Leibniz against the product; total degree of the hat is deg(a, L)
        GradedLinearMap hat = ha.hats[static_cast<std::size_t>(k)];
        GradedLinearMap typed(a_space, a_space, ha.l.degree(k));
        for (const auto& [j, col] : hat.columns())
            for (const auto& [i, c] : col) typed.set(j, i, c);
        CheckResult sub = check_derivation(typed, pkg.algebra, "hat_derivation");
        if (!sub.pass) {
            leib.pass = false;
            leib.witness = ha.l.name(k) + " at " + sub.witness;
        }
    }
    rep.checks.push_back(leib);

    CheckResult item1{"d_hat_is_delbar_commutator", true, ""};
    for (int k = 0; k < n && item1.pass; ++k) {
        GradedLinearMap lhs = ha.hat_of(ha.d.column(k), a_space);
        // [delbar, a^] with |a^| = deg(a, L)
        GradedLinearMap hat = ha.hats[static_cast<std::size_t>(k)];
        GradedLinearMap rhs =
            subtract(compose(pkg.delbar, hat), scale(sign_pow(ha.l.degree(k)), compose(hat, pkg.delbar)));
        auto w = first_difference_witness(lhs, rhs);
        if (w) {
            item1.pass = false;
            item1.witness = ha.l.name(k) + " on " + *w;
        }
    }
    rep.checks.push_back(item1);

    CheckResult item2{"q_hat_is_double_commutator", true, ""};
    for (int i = 0; i < n && item2.pass; ++i)
        for (int j = i; j < n && item2.pass; ++j) {
            GradedLinearMap lhs = ha.hat_of(ha.q_basis(i, j), a_space);
            const GradedLinearMap& ai = ha.hats[static_cast<std::size_t>(i)];
            const GradedLinearMap& aj = ha.hats[static_cast<std::size_t>(j)];
            int da = ha.l.degree(i), db = ha.l.degree(j);
            // -[[del, a^], b^], commutators graded by total degree
            GradedLinearMap inner = subtract(compose(pkg.del, ai), scale(sign_pow(da), compose(ai, pkg.del)));
            GradedLinearMap outer = subtract(compose(inner, aj),
                                             scale(sign_pow(static_cast<long long>(1 + da) * db), compose(aj, inner)));
            GradedLinearMap rhs = scale(Scalar(-1), outer);
            auto w = first_difference_witness(lhs, rhs);
            if (w) {
                item2.pass = false;
                item2.witness = "(" + ha.l.name(i) + ", " + ha.l.name(j) + ") on " + *w;
            }
        }
    rep.checks.push_back(item2);

    CheckResult comm{"hats_commute", true, ""};
    for (int i = 0; i < n && comm.pass; ++i)
        for (int j = i; j < n && comm.pass; ++j) {
            const GradedLinearMap& ai = ha.hats[static_cast<std::size_t>(i)];
            const GradedLinearMap& aj = ha.hats[static_cast<std::size_t>(j)];
            long long s = static_cast<long long>(ha.l.degree(i)) * ha.l.degree(j);
            GradedLinearMap c = subtract(compose(ai, aj), scale(sign_pow(s), compose(aj, ai)));
            if (!c.is_zero()) {
                comm.pass = false;
                comm.witness = "(" + ha.l.name(i) + ", " + ha.l.name(j) + ")";
            }
        }
    rep.checks.push_back(comm);
    return rep;
}

} // namespace linftylab

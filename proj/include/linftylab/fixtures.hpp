#pragma once

// Built-in fixtures used by the test suites and shipped by the CLI. All of
// them are exact and hand-checkable at desk scale.

#include "linftylab/dgla.hpp"
#include "linftylab/hat.hpp"

namespace linftylab::fixtures {

// x in degree 1, y in degree 2, d = 0, [x, x] = y. The smallest DGLA with a
// nonzero primary obstruction.
inline Dgla dgla1() {
    GradedSpace v({{"x", 1, std::nullopt}, {"y", 2, std::nullopt}});
    Dgla g(v, GradedLinearMap(v, v, 1));
    g.set_bracket("x", "x", {{"y", Scalar(1)}});
    return g;
}

// dgla1 plus a spectator generator m of degree 2 (no differential, no
// brackets). H^2 is two-dimensional but only the [y]-line carries
// obstructions.
inline Dgla dgla1_with_spectator() {
    GradedSpace v({{"x", 1, std::nullopt}, {"y", 2, std::nullopt}, {"m", 2, std::nullopt}});
    Dgla g(v, GradedLinearMap(v, v, 1));
    g.set_bracket("x", "x", {{"y", Scalar(1)}});
    return g;
}

// z, w in degree 1, u, c in degree 2; dw = u, [z, z] = -2u, [z, w] = c.
// The primary obstruction of [z] vanishes ([z,z] is exact) but the
// order-three obstruction along the curvilinear tower is [c] != 0.
inline Dgla curvilinear4() {
    GradedSpace v({{"z", 1, std::nullopt}, {"w", 1, std::nullopt}, {"u", 2, std::nullopt}, {"c", 2, std::nullopt}});
    GradedLinearMap d(v, v, 1);
    d.set(1, 2, Scalar(1)); // w -> u
    Dgla g(v, std::move(d));
    g.set_bracket("z", "z", {{"u", Scalar(-2)}});
    g.set_bracket("z", "w", {{"c", Scalar(1)}});
    return g;
}

// v in degree 0 acting on x, y: [v, x] = x, [v, y] = 2y, [x, x] = y, d = 0.
// Degree 0 is nonzero, so the gauge action moves Maurer-Cartan elements.
inline Dgla gauge_rich() {
    GradedSpace s({{"v", 0, std::nullopt}, {"x", 1, std::nullopt}, {"y", 2, std::nullopt}});
    Dgla g(s, GradedLinearMap(s, s, 1));
    g.set_bracket("v", "x", {{"x", Scalar(1)}});
    g.set_bracket("v", "y", {{"y", Scalar(2)}});
    g.set_bracket("x", "x", {{"y", Scalar(1)}});
    return g;
}

// ---------------------------------------------------------------------------
// Operator-package fixtures. The product is zero throughout (the identities
// under test never touch it); the polynomial model carries the honest wedge
// product instead.

using linftylab::PackageData;

namespace detail {

inline BasisElement bi(const std::string& name, int p, int q) {
    return BasisElement{name, p + q, std::array<int, 2>{p, q}};
}

} // namespace detail

// One "square": basis 1, x, y, xy in bidegrees (0,0), (1,0), (0,1), (1,1)
// with del 1 = x, del y = xy, delbar 1 = y, delbar x = -xy, orthonormal.
// The Laplacian is the identity, so there are no harmonics, G = Id, h = 0,
// and tau maps y to -x.
inline PackageData kah1() {
    GradedSpace s({detail::bi("1", 0, 0), detail::bi("x", 1, 0), detail::bi("y", 0, 1), detail::bi("xy", 1, 1)});
    BigradedAlgebra alg(s);
    GradedLinearMap del(s, s, 1, std::array<int, 2>{1, 0});
    del.set(s.index_of("1"), s.index_of("x"), Scalar(1));
    del.set(s.index_of("y"), s.index_of("xy"), Scalar(1));
    GradedLinearMap delbar(s, s, 1, std::array<int, 2>{0, 1});
    delbar.set(s.index_of("1"), s.index_of("y"), Scalar(1));
    delbar.set(s.index_of("x"), s.index_of("xy"), Scalar(-1));
    return {alg, del, delbar, InnerProduct::standard(s)};
}

// Same operators, but the metric scales x by 2. This breaks [del, delbar*].
inline PackageData kah1_skew() {
    PackageData d = kah1();
    MatQ gram = identity(4);
    gram(d.algebra.space().index_of("x"), d.algebra.space().index_of("x")) = Scalar(2);
    d.ip = InnerProduct(d.algebra.space(), gram);
    return d;
}

// kah1 plus an orthogonal generator w of bidegree (1,1) with del w =
// delbar w = 0. Harmonics = span(w).
inline PackageData kah1_ext() {
    GradedSpace s({detail::bi("1", 0, 0), detail::bi("x", 1, 0), detail::bi("y", 0, 1), detail::bi("xy", 1, 1),
                   detail::bi("w", 1, 1)});
    BigradedAlgebra alg(s);
    GradedLinearMap del(s, s, 1, std::array<int, 2>{1, 0});
    del.set(s.index_of("1"), s.index_of("x"), Scalar(1));
    del.set(s.index_of("y"), s.index_of("xy"), Scalar(1));
    GradedLinearMap delbar(s, s, 1, std::array<int, 2>{0, 1});
    delbar.set(s.index_of("1"), s.index_of("y"), Scalar(1));
    delbar.set(s.index_of("x"), s.index_of("xy"), Scalar(-1));
    return {alg, del, delbar, InnerProduct::standard(s)};
}

// Exhaustive search for single-generator hat assignments (deg(a, L) = abar,
// d = 0, Q = 0) on a derived package: every bidegree-admissible cell gets a
// coefficient from {-bound..bound} and each candidate runs validate_hat.
// Returns the nonzero assignments that pass, in scan order.
inline std::vector<HatAssignment> search_single_hats(const OperatorPackage& pkg, int abar, int bound) {
    const GradedSpace& a_space = pkg.algebra.space();
    std::vector<std::pair<int, int>> cells;
    for (int j = 0; j < a_space.dim(); ++j) {
        auto bj = a_space.bidegree(j);
        if (bj->at(0) == 0) continue; // hats kill bidegree (0, *)
        for (int i = 0; i < a_space.dim(); ++i) {
            auto bi_ = a_space.bidegree(i);
            if (bi_->at(0) == bj->at(0) - 1 && bi_->at(1) == bj->at(1) + abar + 1) cells.emplace_back(j, i);
        }
    }
    std::vector<HatAssignment> found;
    const int radix = 2 * bound + 1;
    long long total = 1;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        total *= radix;
        if (total > 200000) throw std::invalid_argument("search_single_hats: cell grid too large");
    }
    GradedSpace l({{"a", abar, std::nullopt}});
    for (long long code = 1; code < total; ++code) {
        long long rest = code;
        GradedLinearMap hat(a_space, a_space, abar);
        for (const auto& [j, i] : cells) {
            long long digit = rest % radix - bound;
            rest /= radix;
            if (digit != 0) hat.set(j, i, Scalar(digit));
        }
        HatAssignment ha{l, GradedLinearMap(l, l, 1), {}, {hat}};
        if (validate_hat(ha, pkg).all_pass()) found.push_back(std::move(ha));
    }
    return found;
}

// The frozen representative found by search_single_hats on kah1_ext:
// a^ sends x to y, everything else to zero.
inline HatAssignment kah1_ext_hat(const OperatorPackage& pkg) {
    GradedSpace l({{"a", 0, std::nullopt}});
    GradedLinearMap hat(pkg.algebra.space(), pkg.algebra.space(), 0);
    hat.set(pkg.algebra.space().index_of("x"), pkg.algebra.space().index_of("y"), Scalar(1));
    return HatAssignment{l, GradedLinearMap(l, l, 1), {}, {hat}};
}

// The thirteen-dimensional package: five harmonic generators ("dots") and
// two closed squares, one of them scaled by 2 so the Green operator is not
// the identity on it and corrupting tau is visible.
//
//   dots    o (0,0), Om (2,0), om (1,1), rho (1,2), Ombar (0,2)
//   square1 u1 (1,0), s1 (2,0), t1 (1,1), r1 (2,1): del u1 = 2 s1,
//           del t1 = 2 r1, delbar u1 = 2 t1, delbar s1 = -2 r1
//   square2 u2 (1,1), s2 (2,1), t2 (1,2), r2 (2,2): the same with scale 1
inline PackageData kah2() {
    GradedSpace s({detail::bi("o", 0, 0), detail::bi("Om", 2, 0), detail::bi("om", 1, 1), detail::bi("rho", 1, 2),
                   detail::bi("Ombar", 0, 2), detail::bi("u1", 1, 0), detail::bi("s1", 2, 0), detail::bi("t1", 1, 1),
                   detail::bi("r1", 2, 1), detail::bi("u2", 1, 1), detail::bi("s2", 2, 1), detail::bi("t2", 1, 2),
                   detail::bi("r2", 2, 2)});
    BigradedAlgebra alg(s);
    GradedLinearMap del(s, s, 1, std::array<int, 2>{1, 0});
    del.set(s.index_of("u1"), s.index_of("s1"), Scalar(2));
    del.set(s.index_of("t1"), s.index_of("r1"), Scalar(2));
    del.set(s.index_of("u2"), s.index_of("s2"), Scalar(1));
    del.set(s.index_of("t2"), s.index_of("r2"), Scalar(1));
    GradedLinearMap delbar(s, s, 1, std::array<int, 2>{0, 1});
    delbar.set(s.index_of("u1"), s.index_of("t1"), Scalar(2));
    delbar.set(s.index_of("s1"), s.index_of("r1"), Scalar(-2));
    delbar.set(s.index_of("u2"), s.index_of("t2"), Scalar(1));
    delbar.set(s.index_of("s2"), s.index_of("r2"), Scalar(-1));
    return {alg, del, delbar, InnerProduct::standard(s)};
}

// Hat assignment on kah2 with L = <a (deg 0), e (deg 1)>, d = 0 and
// Q(a (.) a) = e:
//   a^: Om -> om + t1, s1 -> -2 u2, om -> Ombar, s2 -> rho, r1 -> t2
//   e^: Om -> 4 t2,    s1 -> -4 rho   (forced: e^ = -[[del, a^], a^])
inline HatAssignment kah2_hat(const OperatorPackage& pkg) {
    const GradedSpace& s = pkg.algebra.space();
    GradedSpace l({{"a", 0, std::nullopt}, {"e", 1, std::nullopt}});
    GradedLinearMap ahat(s, s, 0);
    ahat.set(s.index_of("Om"), s.index_of("om"), Scalar(1));
    ahat.set(s.index_of("Om"), s.index_of("t1"), Scalar(1));
    ahat.set(s.index_of("s1"), s.index_of("u2"), Scalar(-2));
    ahat.set(s.index_of("om"), s.index_of("Ombar"), Scalar(1));
    ahat.set(s.index_of("s2"), s.index_of("rho"), Scalar(1));
    ahat.set(s.index_of("r1"), s.index_of("t2"), Scalar(1));
    GradedLinearMap ehat(s, s, 1);
    ehat.set(s.index_of("Om"), s.index_of("t2"), Scalar(4));
    ehat.set(s.index_of("s1"), s.index_of("rho"), Scalar(-4));
    HatAssignment ha{l, GradedLinearMap(l, l, 1), {}, {ahat, ehat}};
    ha.q[{0, 0}] = {{1, Scalar(1)}}; // Q(a (.) a) = e
    return ha;
}

} // namespace linftylab::fixtures

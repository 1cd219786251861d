#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linftylab/fixtures.hpp"

using namespace linftylab;

namespace {

// exterior algebra on dz, dzbar with polynomial-free coefficients: a real
// product to exercise the algebra validator and the derivation check
BigradedAlgebra small_wedge_algebra() {
    GradedSpace s({{"1", 0, std::array<int, 2>{0, 0}},
                   {"dz", 1, std::array<int, 2>{1, 0}},
                   {"dzbar", 1, std::array<int, 2>{0, 1}},
                   {"vol", 2, std::array<int, 2>{1, 1}}});
    BigradedAlgebra alg(s, s.index_of("1"));
    alg.set_product(0, 0, {{0, Scalar(1)}});
    alg.set_product(0, 1, {{1, Scalar(1)}});
    alg.set_product(0, 2, {{2, Scalar(1)}});
    alg.set_product(0, 3, {{3, Scalar(1)}});
    alg.set_product(1, 2, {{3, Scalar(1)}}); // dz ^ dzbar = vol
    return alg;
}

} // namespace

TEST_CASE("algebra validation: wedge algebra passes, broken associativity is caught") {
    BigradedAlgebra alg = small_wedge_algebra();
    CHECK(validate_algebra(alg).all_pass());

    // graded commutativity through the storage convention: dzbar * dz = -vol
    SpaceVector ba = alg.product_basis(2, 1);
    CHECK(ba == SpaceVector{{3, Scalar(-1)}});

    BigradedAlgebra broken = alg;
    broken.set_product(1, 2, {{3, Scalar(2)}}); // 1*(dz*dzbar) != (1*dz)*dzbar creates no break; unit does
    broken.set_product(0, 3, {{3, Scalar(-1)}});
    ValidationReport rep = validate_algebra(broken);
    CHECK(!rep.all_pass());
}

TEST_CASE("derivation check: contraction against dz is a derivation, a skewed map is not") {
    BigradedAlgebra alg = small_wedge_algebra();
    const GradedSpace& s = alg.space();
    // iota: dz -> 1, vol -> dzbar, odd degree -1
    GradedLinearMap iota(s, s, -1);
    iota.set(1, 0, Scalar(1));
    iota.set(3, 2, Scalar(1));
    CHECK(check_derivation(iota, alg, "iota").pass);

    GradedLinearMap bad = iota;
    bad.set(3, 2, Scalar(2)); // breaks Leibniz on (dz, dzbar)
    CheckResult r = check_derivation(bad, alg, "bad");
    CHECK(!r.pass);
    CHECK(r.witness == "(dz, dzbar)");
}

TEST_CASE("derive_package: delbar = 0 degenerate case") {
    GradedSpace s({{"p", 1, std::array<int, 2>{1, 0}}, {"q", 2, std::array<int, 2>{2, 0}}});
    BigradedAlgebra alg(s);
    GradedLinearMap del(s, s, 1, std::array<int, 2>{1, 0});
    del.set(0, 1, Scalar(1));
    GradedLinearMap delbar(s, s, 1, std::array<int, 2>{0, 1});
    OperatorPackage pkg = derive_package(alg, del, delbar, InnerProduct::standard(s));
    CHECK(pkg.laplacian.is_zero());
    CHECK(pkg.harmonics.dim() == 2);
    CHECK(pkg.green.is_zero());
    CHECK(pkg.h_endo == GradedLinearMap::identity_on(s));
    CHECK(pkg.tau.is_zero());
}

TEST_CASE("derive_package on the square: all derived operators by hand") {
    fixtures::PackageData d = fixtures::kah1();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    const GradedSpace& s = pkg.algebra.space();
    int one = s.index_of("1"), x = s.index_of("x"), y = s.index_of("y"), xy = s.index_of("xy");

    // delbar(1) = y forces delbar*(y) = 1; delbar(x) = -xy forces delbar*(xy) = -x
    CHECK(pkg.delbar_star.column(y) == SpaceVector{{one, Scalar(1)}});
    CHECK(pkg.delbar_star.column(xy) == SpaceVector{{x, Scalar(-1)}});

    CHECK(pkg.laplacian == GradedLinearMap::identity_on(s));
    CHECK(pkg.green.to_matrix() == identity(4));
    CHECK(pkg.h_endo.is_zero());
    CHECK(pkg.harmonics.dim() == 0);

    CHECK(pkg.tau.column(y) == SpaceVector{{x, Scalar(-1)}});
    CHECK(pkg.tau.column(one).empty());
    CHECK(pkg.tau.column(x).empty());
    CHECK(pkg.tau.column(xy).empty());

    ValidationReport rep = validate_kahler_identities(pkg);
    CHECK(rep.all_pass());

    // spot check [delbar, tau] on y: delbar(tau y) = delbar(-x) = xy = del y
    SpaceVector lhs = graded_commutator(pkg.delbar, pkg.tau).column(y);
    CHECK(lhs == SpaceVector{{xy, Scalar(1)}});
    CHECK(lhs == pkg.del.column(y));
}

TEST_CASE("skewed metric breaks [del, delbar*] and nothing else detects it") {
    fixtures::PackageData d = fixtures::kah1_skew();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    ValidationReport rep = validate_kahler_identities(pkg);
    CHECK(!rep.all_pass());
    bool found = false;
    for (const auto& c : rep.checks)
        if (c.name == "comm_del_delbar_star") {
            found = true;
            CHECK(!c.pass);
        }
    CHECK(found);
    // the adjoint itself is still exact: <delbar u, v> = <u, delbar* v>
    MatQ f = pkg.delbar.to_matrix(), fs = pkg.delbar_star.to_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            VecQ ei = VecQ::Constant(4, Scalar(0)), ej = VecQ::Constant(4, Scalar(0));
            ei(i) = 1; ej(j) = 1;
            CHECK(d.ip.pair(VecQ(f * ei), ej) == d.ip.pair(ei, VecQ(fs * ej)));
        }
}

TEST_CASE("extended square: harmonics = span(w)") {
    fixtures::PackageData d = fixtures::kah1_ext();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    REQUIRE(pkg.harmonics.dim() == 1);
    int w = pkg.algebra.space().index_of("w");
    CHECK(pkg.include.column(0) == SpaceVector{{w, Scalar(1)}});
    CHECK(pkg.h_endo.column(w) == SpaceVector{{w, Scalar(1)}});
    CHECK(validate_kahler_identities(pkg).all_pass());
}

TEST_CASE("non-block-orthogonal inner product is rejected") {
    fixtures::PackageData d = fixtures::kah1();
    MatQ gram = identity(4);
    int x = d.algebra.space().index_of("x"), y = d.algebra.space().index_of("y");
    gram(x, y) = Scalar(Rational(1, 2));
    gram(y, x) = Scalar(Rational(1, 2));
    InnerProduct bad(d.algebra.space(), gram);
    CHECK_THROWS_WITH(derive_package(d.algebra, d.del, d.delbar, bad), doctest::Contains("couples distinct"));
}

TEST_CASE("the thirteen-dimensional package validates and has the designed tau") {
    fixtures::PackageData d = fixtures::kah2();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    const GradedSpace& s = pkg.algebra.space();
    CHECK(pkg.harmonics.dim() == 5);
    CHECK(validate_kahler_identities(pkg).all_pass());

    // tau(t1) = -s1 even though the square is scaled; tau(t2) = -s2
    CHECK(pkg.tau.column(s.index_of("t1")) == SpaceVector{{s.index_of("s1"), Scalar(-1)}});
    CHECK(pkg.tau.column(s.index_of("t2")) == SpaceVector{{s.index_of("s2"), Scalar(-1)}});

    // the corrupted tau differs exactly on the scaled square
    OperatorPackage bad = corrupt_tau(pkg);
    CHECK(bad.tau.column(s.index_of("t1")) == SpaceVector{{s.index_of("s1"), Scalar(-4)}});
    CHECK(bad.tau.column(s.index_of("t2")) == SpaceVector{{s.index_of("s2"), Scalar(-1)}});

    // on kah1 the Green operator is the identity, so the same corruption is
    // invisible there; this is why the negative control lives on kah2
    fixtures::PackageData d1 = fixtures::kah1();
    OperatorPackage p1 = derive_package(d1.algebra, d1.del, d1.delbar, d1.ip);
    CHECK(corrupt_tau(p1).tau == p1.tau);
}

TEST_CASE("validate_hat: zero assignment passes") {
    fixtures::PackageData d = fixtures::kah1();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    GradedSpace l({{"a", 0, std::nullopt}});
    HatAssignment ha{l, GradedLinearMap(l, l, 1), {}, {GradedLinearMap(pkg.algebra.space(), pkg.algebra.space(), 0)}};
    CHECK(validate_hat(ha, pkg).all_pass());
}

TEST_CASE("hat search on the extended square finds the frozen assignment") {
    fixtures::PackageData d = fixtures::kah1_ext();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    auto found = fixtures::search_single_hats(pkg, 0, 1);
    REQUIRE(!found.empty());
    HatAssignment frozen = fixtures::kah1_ext_hat(pkg);
    CHECK(validate_hat(frozen, pkg).all_pass());
    bool seen = false;
    for (const auto& ha : found)
        if (ha.hats[0] == frozen.hats[0]) seen = true;
    CHECK(seen);
}

TEST_CASE("the designed hat assignment on kah2 validates; corrupting e^ fails item 2") {
    fixtures::PackageData d = fixtures::kah2();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    HatAssignment ha = fixtures::kah2_hat(pkg);
    ValidationReport rep = validate_hat(ha, pkg);
    CHECK(rep.all_pass());

    HatAssignment corrupted = ha;
    corrupted.hats[1] = GradedLinearMap(pkg.algebra.space(), pkg.algebra.space(), 1);
    ValidationReport bad = validate_hat(corrupted, pkg);
    CHECK(!bad.all_pass());
    const CheckResult* fail = bad.first_failure();
    REQUIRE(fail != nullptr);
    CHECK(fail->name == "q_hat_is_double_commutator");
    CHECK(fail->witness.substr(0, 6) == "(a, a)");
}

TEST_CASE("remark symmetry: [[del,a^],b^] = (-1)^{ab} [[del,b^],a^] on kah2") {
    fixtures::PackageData d = fixtures::kah2();
    OperatorPackage pkg = derive_package(d.algebra, d.del, d.delbar, d.ip);
    HatAssignment ha = fixtures::kah2_hat(pkg);
    for (int i = 0; i < ha.l.dim(); ++i)
        for (int j = 0; j < ha.l.dim(); ++j) {
            const GradedLinearMap& ai = ha.hats[static_cast<std::size_t>(i)];
            const GradedLinearMap& aj = ha.hats[static_cast<std::size_t>(j)];
            int da = ha.l.degree(i), db = ha.l.degree(j);
            auto dbl = [&](const GradedLinearMap& f, int df, const GradedLinearMap& g, int dg) {
                GradedLinearMap inner = subtract(compose(pkg.del, f), scale(sign_pow(df), compose(f, pkg.del)));
                return subtract(compose(inner, g),
                                scale(sign_pow(static_cast<long long>(1 + df) * dg), compose(g, inner)));
            };
            GradedLinearMap lhs = dbl(ai, da, aj, db);
            GradedLinearMap rhs = scale(sign_pow(static_cast<long long>(da) * db), dbl(aj, db, ai, da));
            CHECK(lhs == rhs);
        }
}

#pragma once

// The finite-dimensional operator package: a bigraded algebra with
// anticommuting differentials del (1,0) and delbar (0,1), an inner product,
// and the derived operators delbar*, the delbar-Laplacian, the Green
// operator, harmonic projection, and tau = G delbar* del. All derived data is
// computed once, exactly, at construction.

#include "linftylab/bigraded.hpp"
#include "linftylab/inner_product.hpp"

namespace linftylab {

// The user-supplied half of a package: operators before derivation.
struct PackageData {
    BigradedAlgebra algebra;
    GradedLinearMap del;
    GradedLinearMap delbar;
    InnerProduct ip;
};

struct OperatorPackage {
    BigradedAlgebra algebra;
    GradedLinearMap del;          // bidegree (1, 0)
    GradedLinearMap delbar;       // bidegree (0, 1)
    InnerProduct ip;

    GradedLinearMap delbar_star;  // bidegree (0, -1)
    GradedLinearMap laplacian;    // bidegree (0, 0)
    GradedLinearMap green;        // bidegree (0, 0)
    GradedLinearMap h_endo;       // bidegree (0, 0), image = harmonics
    GradedLinearMap tau;          // bidegree (1, -1)

    GradedSpace harmonics;        // named basis of ker(laplacian)
    GradedLinearMap include;      // harmonics -> algebra
    GradedLinearMap project;      // algebra -> harmonics, project o include = id
};

inline OperatorPackage derive_package(BigradedAlgebra algebra, GradedLinearMap del, GradedLinearMap delbar,
                                      InnerProduct ip) {
    const GradedSpace& a = algebra.space();
    if (!(del.source() == a && delbar.source() == a && ip.space() == a))
        throw std::invalid_argument("derive_package: spaces do not match the algebra");
    if (!ip.is_block_orthogonal())
        throw std::invalid_argument("derive_package: inner product couples distinct (bi)degrees");
    del.check_homogeneous();
    delbar.check_homogeneous();
    auto require_zero = [](const GradedLinearMap& m, const char* what) {
        if (!m.is_zero()) throw std::invalid_argument(std::string("derive_package: ") + what + " != 0");
    };
    require_zero(compose(del, del), "del^2");
    require_zero(compose(delbar, delbar), "delbar^2");
    require_zero(add(compose(del, delbar), compose(delbar, del)), "del delbar + delbar del");

    OperatorPackage pkg;
    pkg.del = del;
    pkg.delbar = delbar;
    pkg.delbar_star = adjoint(delbar, ip);
    pkg.laplacian = add(compose(delbar, pkg.delbar_star), compose(pkg.delbar_star, delbar));

    // harmonic space: exact kernel of the Laplacian; the Laplacian is
    // bidegree (0,0), so each kernel vector is supported in one block
    MatQ lap = pkg.laplacian.to_matrix();
    MatQ ker = kernel_basis(lap);
    std::vector<BasisElement> hbasis;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        int first = -1;
        for (int r = 0; r < a.dim(); ++r)
            if (!ker(r, c).is_zero()) { first = r; break; }
        BasisElement e;
        e.name = "h" + std::to_string(c);
        e.degree = a.degree(first);
        e.bidegree = a.bidegree(first);
        hbasis.push_back(std::move(e));
    }
    pkg.harmonics = GradedSpace(std::move(hbasis));
    pkg.include = GradedLinearMap::from_matrix(pkg.harmonics, a, 0, ker);

    // ip-orthogonal projector onto the kernel: P = K (K^H G K)^{-1} K^H G
    MatQ g = ip.gram();
    MatQ kh = conj_transpose(ker);
    MatQ smallgram = kh * g * ker;
    MatQ proj_coords = (*inverse(smallgram)) * kh * g; // harmonics coordinates
    MatQ p_endo = ker * proj_coords;
    pkg.project = GradedLinearMap::from_matrix(a, pkg.harmonics, 0, proj_coords);

    // Green operator: 0 on harmonics, exact inverse of the Laplacian on the
    // orthogonal complement: (Lap + P)^{-1} (Id - P)
    MatQ green = (*inverse(MatQ(lap + p_endo))) * MatQ(identity(a.dim()) - p_endo);
    pkg.green = GradedLinearMap::from_matrix(a, a, 0, green, std::array<int, 2>{0, 0});

    MatQ h_endo = identity(a.dim()) - lap * green;
    if (h_endo != p_endo)
        throw std::logic_error("derive_package: harmonic projector disagrees with Id - Lap G");
    pkg.h_endo = GradedLinearMap::from_matrix(a, a, 0, h_endo, std::array<int, 2>{0, 0});

    pkg.tau = compose(pkg.green, compose(pkg.delbar_star, del));
    pkg.ip = std::move(ip);
    pkg.algebra = std::move(algebra);
    return pkg;
}

// Every Section-2 identity as an exact matrix equation. Failures name the
// identity and the first basis element where the two sides differ.
inline ValidationReport validate_kahler_identities(const OperatorPackage& pkg) {
    ValidationReport rep;
    const GradedSpace& a = pkg.algebra.space();
    GradedLinearMap zero_map(a, a, 0);
    auto expect = [&](const std::string& name, const GradedLinearMap& lhs, const GradedLinearMap& rhs) {
        CheckResult c{name, true, ""};
        auto witness = first_difference_witness(lhs, rhs);
        if (witness) {
            c.pass = false;
            c.witness = *witness;
        }
        rep.checks.push_back(std::move(c));
    };

    auto zero = [&](const std::string& name, const GradedLinearMap& m) {
        CheckResult c{name, m.is_zero(), ""};
        if (!c.pass)
            for (int k = 0; k < a.dim(); ++k)
                if (!m.column(k).empty()) { c.witness = a.name(k); break; }
        rep.checks.push_back(std::move(c));
    };

    zero("h_del", compose(pkg.h_endo, pkg.del));
    zero("del_h", compose(pkg.del, pkg.h_endo));
    zero("tau_h", compose(pkg.tau, pkg.h_endo));
    zero("h_tau", compose(pkg.h_endo, pkg.tau));
    zero("del_tau", compose(pkg.del, pkg.tau));
    zero("tau_del", compose(pkg.tau, pkg.del));
    zero("comm_del_delbar_star", graded_commutator(pkg.del, pkg.delbar_star));
    zero("comm_del_green", graded_commutator(pkg.del, pkg.green));
    zero("comm_delbar_green", graded_commutator(pkg.delbar, pkg.green));
    expect("comm_delbar_tau_is_del", graded_commutator(pkg.delbar, pkg.tau), pkg.del);
    expect("green_laplacian_del_is_del", compose(pkg.green, compose(pkg.laplacian, pkg.del)), pkg.del);

    // structural facts used throughout
    expect("h_idempotent", compose(pkg.h_endo, pkg.h_endo), pkg.h_endo);
    expect("h_include_identity", compose(pkg.project, pkg.include), GradedLinearMap::identity_on(pkg.harmonics));
    expect("green_laplacian_complement", compose(pkg.green, pkg.laplacian),
           subtract(GradedLinearMap::identity_on(a), pkg.h_endo));
    expect("laplacian_green_complement", compose(pkg.laplacian, pkg.green),
           subtract(GradedLinearMap::identity_on(a), pkg.h_endo));
    return rep;
}

inline OperatorPackage derive_package(const PackageData& data) {
    return derive_package(data.algebra, data.del, data.delbar, data.ip);
}

// The negative control: drop the Green factor from tau.
inline OperatorPackage corrupt_tau(OperatorPackage pkg) {
    pkg.tau = compose(pkg.delbar_star, pkg.del);
    return pkg;
}

} // namespace linftylab
